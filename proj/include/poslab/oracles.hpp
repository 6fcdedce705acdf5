#pragma once

#include "poslab/rational.hpp"
#include "poslab/regions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace poslab::oracles {

struct CohomologyDim {
    int p = 0;
    int q = 0;
    BigInt dim = 0;
    std::string source;
};

/// Identifies which bundle a region or an oracle table speaks about:
/// family "sym_tpn_twist" means S^k T_Pn (x) O(l) on P^n.
struct BundleParams {
    std::string family;
    int n = 0;
    int k = 0;
    int l = 0;

    std::string to_string() const;
    bool operator==(const BundleParams&) const = default;
};

struct OracleTable {
    BundleParams params;
    std::vector<CohomologyDim> dims;
};

/// H^{n,q}(Gr(r, V), S^k E (x) det E) with E the tautological quotient,
/// for q = 0..n where n = r(d-r): nonzero only at q* = (r-1)(d-r), where
/// it is S^{k+r-d} V (x) det V of dimension C(k+r-1, k+r-d).
std::vector<CohomologyDim> grassmannian_nonvanishing(int d, int r, int k);

/// dim H^q(P^n, Omega^p(l)) by the Bott formula.
BigInt pn_line_cohomology(int n, int p, int q, int l);

/// On P^n (d = n+1, r = n) the Grassmannian answer is about
/// S^k T_Pn (x) O(1-k); the table is tagged with those parameters.
OracleTable boundary_oracle(int n, int k);

/// For n = 1, S^k T_P1 (x) O(l) = O(2k+l) and the Bott formula gives every
/// H^{p,q}; no analogous line-bundle table exists for n > 1.
std::optional<OracleTable> line_oracle(int n, int k, int l);

enum class Status { Pass, Fail, Inapplicable };
std::string to_string(Status s);

struct ConsistencyReport {
    Status status = Status::Pass;
    bool parameters_match = true;
    BundleParams region_params;
    BundleParams oracle_params;
    std::vector<regions::Bidegree> offending;
    std::string note;
};

/// PASS unless a bidegree with positive known dimension lies in the region.
/// Tables about other parameters cannot contradict the region; they pass
/// with parameters_match = false and a note.
ConsistencyReport consistency_check(const regions::VanishingRegion& region, const BundleParams& region_params,
                                    const OracleTable& known);

/// Region for S^k T_Pn (x) O(l) confronted with every applicable oracle table.
/// For l < 2-k the theorem does not apply and the report is Inapplicable,
/// naming the pairs where the boundary oracle is nonzero.
std::vector<ConsistencyReport> proposition_ex_check(int n, int k, int l);

}  // namespace poslab::oracles
