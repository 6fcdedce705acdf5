#include "poslab/rational.hpp"

#include "poslab/error.hpp"

#include <cctype>

namespace poslab {

BigInt factorial(int n) {
    BigInt out = 1;
    for (int i = 2; i <= n; ++i) out *= i;
    return out;
}

BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt out = 1;
    for (int i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

std::string to_string(const Rational& x) {
    return boost::multiprecision::numerator(x).str() + "/" +
           boost::multiprecision::denominator(x).str();
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
    if (s.empty()) fail(ErrorCode::ParseError, "empty integer in rational '" + std::string(whole) + "'");
    std::size_t pos = 0;
    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        pos = 1;
    }
    if (pos == s.size()) fail(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
    BigInt value = 0;
    for (; pos < s.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(s[pos])))
            fail(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
        value = value * 10 + (s[pos] - '0');
    }
    return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash), text);
        BigInt den = parse_integer(text.substr(slash + 1), text);
        if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string digits(text.substr(0, dot));
        std::string_view frac = text.substr(dot + 1);
        digits += frac;
        if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
        BigInt num = parse_integer(digits, text);
        BigInt den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        return Rational(num, den);
    }
    return Rational(parse_integer(text, text));
}

Rational floor_rational(const Rational& x) {
    BigInt num = boost::multiprecision::numerator(x);
    BigInt den = boost::multiprecision::denominator(x);
    BigInt q = num / den;
    if (num % den != 0 && num < 0) q -= 1;
    return Rational(q);
}

Rational ceil_rational(const Rational& x) { return -floor_rational(-x); }

}  // namespace poslab
