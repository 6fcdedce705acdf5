#pragma once

#include "poslab/geometry.hpp"
#include "poslab/rational.hpp"
#include "poslab/tensor.hpp"

#include <random>

namespace testing_support {

using poslab::CMatrix;
using poslab::Complex;
using poslab::CurvatureTensor;
using poslab::CVector;

inline CMatrix fs_closed_form(const CVector& z) {
    const int n = static_cast<int>(z.size());
    double s = 1.0;
    for (int i = 0; i < n; ++i) s += std::norm(z[i]);
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = ((i == j ? 1.0 : 0.0) - std::conj(z[i]) * z[j] / s) / s;
    return g;
}

inline CurvatureTensor delta_delta(int n, int r) {
    CurvatureTensor R(n, r, true);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < r; ++a) R(i, i, a, a) = 1.0;
    return R;
}

/// R_{ij ab} = delta_ij delta_ab + delta_ib delta_ja: the tangent bundle of P^n
/// at the origin in normalized form.
inline CurvatureTensor tpn_origin(int n) {
    CurvatureTensor R(n, n, true);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    R(i, j, a, b) = (i == j && a == b ? 1.0 : 0.0) + (i == b && j == a ? 1.0 : 0.0);
    return R;
}

inline Complex cnormal(std::mt19937_64& g) {
    std::normal_distribution<double> d(0.0, 1.0);
    const double re = d(g), im = d(g);
    return {re, im};
}

inline CVector random_unit(std::mt19937_64& g, int dim) {
    CVector v(dim);
    for (int a = 0; a < dim; ++a) v[a] = cnormal(g);
    return v / v.norm();
}

/// Random tensor with the Hermitian symmetry R_{ij ab} = conj(R_{ji ba}).
inline CurvatureTensor random_hermitian_tensor(int n, int r, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    CurvatureTensor R(n, r, true);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) {
                    const int x = i * n + j, y = a * r + b;
                    const int xt = j * n + i, yt = b * r + a;
                    if (std::make_pair(x, y) > std::make_pair(xt, yt)) continue;
                    Complex z = cnormal(g);
                    if (x == xt && y == yt) z = z.real();
                    R(i, j, a, b) = z;
                    R(j, i, b, a) = std::conj(z);
                }
    return R;
}

inline poslab::Curvature4<poslab::GaussianRational> random_rational_tensor(int n, int r, std::uint64_t seed) {
    using poslab::GaussianRational;
    using poslab::Rational;
    std::mt19937_64 g(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    poslab::Curvature4<GaussianRational> R(n, r, true);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) {
                    const int x = i * n + j, y = a * r + b;
                    const int xt = j * n + i, yt = b * r + a;
                    if (std::make_pair(x, y) > std::make_pair(xt, yt)) continue;
                    GaussianRational z(Rational(num(g), den(g)), Rational(num(g), den(g)));
                    if (x == xt && y == yt) z.im = 0;
                    R(i, j, a, b) = z;
                    R(j, i, b, a) = poslab::conj(z);
                }
    return R;
}

}  // namespace testing_support
