#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>
#include <string_view>

namespace poslab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(int n);
BigInt binomial(int n, int k);

/// Serialized as "p/q" with q > 0, always including the denominator.
std::string to_string(const Rational& x);
/// Accepts "p", "p/q" and finite decimals such as "-0.25".
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

Rational floor_rational(const Rational& x);
Rational ceil_rational(const Rational& x);

/// Complex number with exact rational parts; used to run the curvature
/// algebra without rounding.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(int x) : re(x) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline GaussianRational conj(const GaussianRational& z) { return {z.re, -z.im}; }
inline std::complex<double> to_complex(const GaussianRational& z) {
    return {to_double(z.re), to_double(z.im)};
}

/// Embeds an exact rational coefficient into the scalar type of a tensor.
template <class T>
T from_rational(const Rational& x);

template <>
inline std::complex<double> from_rational<std::complex<double>>(const Rational& x) {
    return {to_double(x), 0.0};
}
template <>
inline GaussianRational from_rational<GaussianRational>(const Rational& x) {
    return GaussianRational(x);
}

}  // namespace poslab
