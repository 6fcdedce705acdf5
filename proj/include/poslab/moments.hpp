#pragma once

#include "poslab/geometry.hpp"
#include "poslab/rational.hpp"
#include "poslab/sym_bundle.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace poslab::moments {

using sym::MultiIndex;

/// Integral of V_A conj(V_B) / |W|^{2k} against omega_FS^{r-1}/(r-1)! over
/// CP^{r-1}, with V_A = W_{a_1} ... W_{a_k} and total FS volume 1.
struct MomentQuery {
    int r = 1;
    MultiIndex A;
    MultiIndex B;
};

/// delta_AB / (r+k-1)!, exact.
Rational moment_exact(const MomentQuery& q);

struct MomentEstimate {
    Complex estimate;
    double std_error = 0.0;
};

/// Samples per reproducible shard; shard s draws from Rng(seed, s).
inline constexpr std::size_t kShardSize = 1 << 16;

/// Monte Carlo over W uniform on the unit sphere of C^r (normalized complex
/// Gaussians). Deterministic in (samples, seed) regardless of thread count.
MomentEstimate moment_mc(const MomentQuery& q, std::size_t samples, std::uint64_t seed);

/// All pairs (A, B) of the degree-k basis from one shared sample set;
/// entry [a * N + b] for basis positions a, b.
std::vector<MomentEstimate> moment_mc_table(int r, int k, std::size_t samples, std::uint64_t seed);

/// Exact reduction of (r+k-1)! * integral of V_A conj(V_B)/|W|^{2k} phi_{ij}
/// with phi_{ij} = (r+k) sum R_{ij g dbar} W_d conj(W_g)/|W|^2 + (m-1) sum R_{ij d dbar}
/// to degree-(k+1) and degree-k moments:
///   sum_{g,d} R_{ij g dbar} (r+k)! M(A+d, B+g) + (m-1) (r+k-1)! M(A, B) tr R_{ij}.
template <class T>
sym::SymCurvatureT<T> integral_formula_rhs(const Curvature4<T>& R, int k, int m) {
    R.require_normalized("integral_formula_rhs");
    if (k < 0) fail(ErrorCode::ParamDomain, "symmetric power k must be >= 0");
    const int r = R.rank();
    const int n = R.base_dim();
    sym::SymCurvatureT<T> out;
    out.r = r;
    out.k = k;
    out.basis = sym::sym_basis(r, k);
    const int N = static_cast<int>(out.basis.size());
    out.values = Curvature4<T>(n, N, true);

    const Rational top = Rational(factorial(r + k));
    const Rational low = Rational(factorial(r + k - 1));
    for (int a = 0; a < N; ++a) {
        const MultiIndex& A = out.basis[a];
        for (int d = 0; d < r; ++d) {
            const MultiIndex X = A.with(d);
            // M(X, B+g) vanishes unless B+g equals X as a multiset, i.e. B = X - {g}.
            for (int g = 0; g < r; ++g) {
                if (std::find(X.entries().begin(), X.entries().end(), g) == X.entries().end()) continue;
                const MultiIndex B = X.without(g);
                const int b = sym::index_of(out.basis, B);
                const T coeff = from_rational<T>(top * moment_exact({r, X, B.with(g)}));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) out.values(i, j, a, b) += R(i, j, g, d) * coeff;
            }
        }
        if (m != 1) {
            const T coeff = from_rational<T>(Rational(m - 1) * low * moment_exact({r, A, A}));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) out.values(i, j, a, a) += coeff * R.trace(i, j);
        }
    }
    return out;
}

/// Single component (i, j, A, B) of integral_formula_rhs.
Complex integral_formula_rhs(const CurvatureTensor& R, int k, int m, int i, int j, const MultiIndex& A,
                             const MultiIndex& B);

/// Monte Carlo quadrature of the same integral, entry-wise with standard errors.
struct SymEstimate {
    sym::SymCurvature mean;
    sym::SymCurvature std_error;  // real-valued, stored in the real part
};
SymEstimate integral_formula_mc(const CurvatureTensor& R, int k, int m, std::size_t samples,
                                std::uint64_t seed);

struct LemmaLinearReport {
    std::string bundle;
    int k = 0;
    int m = 0;
    sym::SymCurvature algebraic;          // derivation rule
    sym::SymCurvature finite_difference;  // chern_curvature of S^k h (x) det(h)^m
    sym::SymCurvature moment_expansion;   // exact moment reduction
    SymEstimate monte_carlo;
    double dev_algebraic_fd = 0.0;
    double dev_algebraic_moment = 0.0;
    double dev_fd_moment = 0.0;
    double mc_max_abs_z = 0.0;  // max |mc - moment| / stderr over entries
    bool mc_within_3sigma = false;
};

/// Three deterministic routes plus a Monte Carlo quadrature, in coordinates
/// orthonormal for omega_FS and a frame orthonormal for h at p.
LemmaLinearReport verify_lemma_linear(const MetricField& bundle, const ChartPoint& p, int k, int m,
                                      std::size_t mc_samples = 200000, std::uint64_t seed = 0,
                                      double step = kDefaultStep);

}  // namespace poslab::moments
