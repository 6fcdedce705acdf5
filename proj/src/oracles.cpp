#include "poslab/oracles.hpp"

#include "poslab/error.hpp"

#include <sstream>

namespace poslab::oracles {

std::string BundleParams::to_string() const {
    std::ostringstream s;
    s << family << "(n=" << n << ",k=" << k << ",l=" << l << ")";
    return s.str();
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Inapplicable: return "INAPPLICABLE";
    }
    return "UNKNOWN";
}

std::vector<CohomologyDim> grassmannian_nonvanishing(int d, int r, int k) {
    if (r < 1 || r >= d) fail(ErrorCode::ParamDomain, "grassmannian needs 1 <= r < d");
    if (k < 1) fail(ErrorCode::ParamDomain, "symmetric power k must be >= 1");
    const int n = r * (d - r);
    const int qstar = (r - 1) * (d - r);
    const int j = k + r - d;
    std::vector<CohomologyDim> out;
    for (int q = 0; q <= n; ++q) {
        BigInt dim = 0;
        if (q == qstar && j >= 0) dim = binomial(k + r - 1, j);
        out.push_back({n, q, dim, "grassmannian_quotient"});
    }
    return out;
}

BigInt pn_line_cohomology(int n, int p, int q, int l) {
    if (n < 1) fail(ErrorCode::ParamDomain, "n must be >= 1");
    if (p < 0 || p > n || q < 0 || q > n) fail(ErrorCode::ParamDomain, "0 <= p, q <= n required");
    if (q == n) return pn_line_cohomology(n, n - p, 0, -l);
    if (q == 0) {
        if (l == 0 && p == 0) return 1;
        if (l > p) return binomial(l + n - p, l) * binomial(l - 1, p);
        return 0;
    }
    return (l == 0 && p == q) ? BigInt(1) : BigInt(0);
}

OracleTable boundary_oracle(int n, int k) {
    OracleTable t;
    t.params = {"sym_tpn_twist", n, k, 1 - k};
    t.dims = grassmannian_nonvanishing(n + 1, n, k);
    return t;
}

std::optional<OracleTable> line_oracle(int n, int k, int l) {
    if (n != 1) return std::nullopt;
    OracleTable t;
    t.params = {"sym_tpn_twist", n, k, l};
    for (int p = 0; p <= 1; ++p)
        for (int q = 0; q <= 1; ++q) t.dims.push_back({p, q, pn_line_cohomology(1, p, q, 2 * k + l), "bott"});
    return t;
}

ConsistencyReport consistency_check(const regions::VanishingRegion& region, const BundleParams& region_params,
                                    const OracleTable& known) {
    ConsistencyReport rep;
    rep.region_params = region_params;
    rep.oracle_params = known.params;
    rep.parameters_match = region_params == known.params;
    if (!rep.parameters_match) {
        rep.note = "parameter mismatch: region for " + region_params.to_string() + ", oracle for " +
                   known.params.to_string() + "; no comparison possible";
        return rep;
    }
    for (const auto& c : known.dims)
        if (c.dim > 0 && region.contains(c.p, c.q)) rep.offending.emplace_back(c.p, c.q);
    rep.status = rep.offending.empty() ? Status::Pass : Status::Fail;
    if (known.dims.empty()) rep.note = "no known dimensions";
    return rep;
}

std::vector<ConsistencyReport> proposition_ex_check(int n, int k, int l) {
    if (n < 1 || k < 1) fail(ErrorCode::ParamDomain, "n, k must be >= 1");
    const BundleParams params{"sym_tpn_twist", n, k, l};
    const OracleTable boundary = boundary_oracle(n, k);
    std::vector<ConsistencyReport> out;
    regions::VanishingRegion reg;
    try {
        reg = regions::theorem_region(regions::proposition_ex_params(n, k, l));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::ParamDomain) throw;
        ConsistencyReport rep;
        rep.status = Status::Inapplicable;
        rep.region_params = params;
        rep.oracle_params = boundary.params;
        rep.parameters_match = params == boundary.params;
        std::ostringstream note;
        note << "theorem inapplicable - non-vanishing oracle active at";
        bool any = false;
        if (rep.parameters_match)
            for (const auto& c : boundary.dims)
                if (c.dim > 0) {
                    note << (any ? ", " : " ") << '(' << c.p << ", " << c.q << ')';
                    rep.offending.emplace_back(c.p, c.q);
                    any = true;
                }
        if (!any) note << " no bidegree";
        rep.note = note.str();
        out.push_back(rep);
        return out;
    }
    out.push_back(consistency_check(reg, params, boundary));
    if (auto line = line_oracle(n, k, l)) out.push_back(consistency_check(reg, params, *line));
    return out;
}

}  // namespace poslab::oracles
