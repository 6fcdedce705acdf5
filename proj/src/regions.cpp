#include "poslab/regions.hpp"

#include "poslab/error.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <sstream>

namespace poslab::regions {

std::string to_string(Theorem t) {
    switch (t) {
        case Theorem::Main1: return "main1";
        case Theorem::GloballyGenerated: return "gg";
        case Theorem::AmpleNef: return "ample";
        case Theorem::Griffiths: return "griffiths";
    }
    return "unknown";
}

Theorem theorem_from_string(const std::string& name) {
    std::string s;
    for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "main1") return Theorem::Main1;
    if (s == "gg" || s == "globally_generated") return Theorem::GloballyGenerated;
    if (s == "ample" || s == "ample_nef") return Theorem::AmpleNef;
    if (s == "griffiths") return Theorem::Griffiths;
    fail(ErrorCode::ParamDomain, "unknown theorem '" + name + "' (expected main1, gg, ample or griffiths)");
}

void TheoremParams::validate() const {
    if (n < 1) fail(ErrorCode::ParamDomain, "n must be >= 1");
    if (r < 1) fail(ErrorCode::ParamDomain, "r must be >= 1");
    if (k < 1) fail(ErrorCode::ParamDomain, "k must be >= 1");
    switch (theorem) {
        case Theorem::Main1:
            if (eps1 > eps2) fail(ErrorCode::ParamDomain, "eps1 <= eps2 required for theorem main1");
            if (m + (r + k) * eps1 <= 0)
                fail(ErrorCode::ParamDomain, "m+(r+k)eps1 must be > 0 for theorem main1");
            break;
        case Theorem::GloballyGenerated:
            if (m < 1) fail(ErrorCode::ParamDomain, "m >= 1 required for theorem gg (E globally generated, L ample)");
            break;
        case Theorem::AmpleNef:
            if (m < k + r + 1) fail(ErrorCode::ParamDomain, "m >= k+r+1 required for theorem ample (E ample/nef)");
            break;
        case Theorem::Griffiths:
            if (m < 1) fail(ErrorCode::ParamDomain, "m >= 1 required for theorem griffiths (E Griffiths-positive)");
            break;
    }
}

Rational lambda0(const TheoremParams& params) {
    params.validate();
    const int r = params.r, k = params.k, m = params.m;
    switch (params.theorem) {
        case Theorem::Main1:
            return (m + (r + k) * params.eps1) / (m + (r + k) * params.eps2);
        case Theorem::GloballyGenerated:
        case Theorem::Griffiths:
            return Rational(m - 1, m - 1 + r + k);
        case Theorem::AmpleNef:
            return Rational((m - 1) - (r + k), (m - 1) + r * (r + k));
    }
    fail(ErrorCode::ParamDomain, "unknown theorem");
}

bool satisfies(int n, const Rational& l0, int p, int q) {
    if (p < 1 || q < 1 || p > n || q > n) return false;
    const Rational a(n - q, p), b(n - p, q);
    return std::min(a, b) <= l0;
}

bool VanishingRegion::contains(int p, int q) const {
    return std::binary_search(members.begin(), members.end(), Bidegree{p, q});
}

namespace {

VanishingRegion skeleton(int n, const Rational& l0) {
    VanishingRegion out;
    out.n = n;
    out.lambda0 = l0;
    out.c0 = Rational(n) / (1 + l0);
    out.vertices = {Vertex{0, n}, Vertex{n, n}, Vertex{n, 0}, Vertex{out.c0, out.c0}};
    return out;
}

}  // namespace

VanishingRegion region(int n, const Rational& l0) {
    if (n < 1) fail(ErrorCode::ParamDomain, "n must be >= 1");
    if (l0 < 0 || l0 > 1) fail(ErrorCode::ParamDomain, "lambda0 must lie in [0,1]");
    VanishingRegion out = skeleton(n, l0);
    for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q)
            if (satisfies(n, l0, p, q)) out.members.emplace_back(p, q);
    return out;
}

VanishingRegion theorem_region(const TheoremParams& params) {
    const Rational l0 = lambda0(params);
    const int n = params.n;
    if (params.theorem == Theorem::GloballyGenerated && params.m == 1) {
        VanishingRegion out = skeleton(n, l0);
        out.members = {{n, n}};
        return out;
    }
    if (params.theorem == Theorem::Main1 && params.eps1 == params.eps2) {
        VanishingRegion out = skeleton(n, l0);
        for (int p = 1; p <= n; ++p)
            for (int q = 1; q <= n; ++q)
                if (p + q >= n + 1) out.members.emplace_back(p, q);
        return out;
    }
    return region(n, l0);
}

int strip_threshold(int n, int r, int k, int s, Theorem flavor) {
    if (n < 1 || r < 1 || k < 1) fail(ErrorCode::ParamDomain, "n, r, k must be >= 1");
    if (s < 1 || s > n) fail(ErrorCode::ParamDomain, "strip offset s must satisfy 1 <= s <= n");
    const int half = (n - s) / 2;
    switch (flavor) {
        case Theorem::GloballyGenerated:
        case Theorem::Griffiths: {
            const Rational x(half * (r + k), s);
            return static_cast<int>(ceil_rational(x).convert_to<long long>()) + 1;
        }
        case Theorem::AmpleNef: {
            const Rational x(half * (r + k) * (r + 1), s);
            return static_cast<int>(ceil_rational(x).convert_to<long long>()) + (r + 1) + k;
        }
        case Theorem::Main1: break;
    }
    fail(ErrorCode::ParamDomain, "strip_threshold flavor must be gg or ample");
}

Rational strip_width(int n, const Rational& l0) {
    if (l0 < 0 || l0 > 1) fail(ErrorCode::ParamDomain, "lambda0 must lie in [0,1]");
    return Rational(2 * n) / (1 + l0) - n;
}

Rational strip_width(const TheoremParams& params) { return strip_width(params.n, lambda0(params)); }

Rational strip_key_ratio(int n, int s) {
    if (s < 1 || s > n) fail(ErrorCode::ParamDomain, "strip offset s must satisfy 1 <= s <= n");
    const int half = (n - s) / 2;
    return Rational(half, half + s);
}

TheoremParams proposition_ex_params(int n, int k, int l) {
    TheoremParams p;
    p.n = n;
    p.r = n;
    p.k = k;
    p.m = l + k - 1;
    p.eps1 = 0;
    p.eps2 = 1;
    p.theorem = Theorem::Main1;
    return p;
}

Rational proposition_ex_lambda0(int n, int k, int l) {
    if (l + k - 1 < 1) fail(ErrorCode::ParamDomain, "l >= 2-k required (l+k-1 >= 1)");
    return Rational(l + k - 1, l + n + 2 * k - 1);
}

std::string render_svg(const VanishingRegion& reg) {
    const int n = reg.n;
    const double cell = 40.0, pad = 40.0;
    const double size = cell * n + 2 * pad;
    auto X = [&](double p) { return pad + cell * p; };
    auto Y = [&](double q) { return size - pad - cell * q; };
    std::ostringstream s;
    s << std::fixed << std::setprecision(2);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    s << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (int t = 0; t <= n; ++t) {
        s << "  <line x1=\"" << X(t) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(t) << "\" y2=\"" << Y(n)
          << "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
        s << "  <line x1=\"" << X(0) << "\" y1=\"" << Y(t) << "\" x2=\"" << X(n) << "\" y2=\"" << Y(t)
          << "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
        s << "  <text x=\"" << X(t) << "\" y=\"" << Y(0) + 18 << "\" font-size=\"11\" text-anchor=\"middle\">" << t
          << "</text>\n";
        s << "  <text x=\"" << X(0) - 12 << "\" y=\"" << Y(t) + 4 << "\" font-size=\"11\" text-anchor=\"middle\">"
          << t << "</text>\n";
    }
    for (const auto& [p, q] : reg.members)
        s << "  <rect x=\"" << X(p) - cell * 0.3 << "\" y=\"" << Y(q) - cell * 0.3 << "\" width=\"" << cell * 0.6
          << "\" height=\"" << cell * 0.6 << "\" fill=\"#6a9fd8\" fill-opacity=\"0.7\"/>\n";
    const double c0 = to_double(reg.c0);
    s << "  <polygon points=\"" << X(0) << ',' << Y(n) << ' ' << X(n) << ',' << Y(n) << ' ' << X(n) << ',' << Y(0)
      << ' ' << X(c0) << ',' << Y(c0) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    const char* names[4] = {"A0", "A1", "A2", "A3"};
    for (int v = 0; v < 4; ++v) {
        const double vp = to_double(reg.vertices[v].p), vq = to_double(reg.vertices[v].q);
        s << "  <circle cx=\"" << X(vp) << "\" cy=\"" << Y(vq) << "\" r=\"3\" fill=\"black\"/>\n";
        s << "  <text x=\"" << X(vp) + 6 << "\" y=\"" << Y(vq) - 6 << "\" font-size=\"12\">" << names[v]
          << "</text>\n";
    }
    s << "  <text x=\"" << size / 2 << "\" y=\"" << pad / 2 << "\" font-size=\"12\" text-anchor=\"middle\">lambda0 = "
      << poslab::to_string(reg.lambda0) << ", c0 = " << poslab::to_string(reg.c0) << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

}  // namespace poslab::regions
