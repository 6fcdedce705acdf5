#include "poslab/serialize.hpp"

namespace poslab::io {

Json complex_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json vector_json(const CVector& v) {
    Json out = Json::array();
    for (Eigen::Index a = 0; a < v.size(); ++a) out.push_back(complex_json(v[a]));
    return out;
}

Json point_json(const ChartPoint& p) { return vector_json(p.coords()); }

Json rational_json(const Rational& x) { return to_string(x); }

namespace {

Json multi_index_json(const sym::MultiIndex& A) {
    Json out = Json::array();
    for (int e : A.entries()) out.push_back(e + 1);
    return out;
}

Json witness_json(const std::vector<CVector>& w) {
    Json out = Json::array();
    for (const auto& v : w) out.push_back(vector_json(v));
    return out;
}

}  // namespace

Json to_json(const CurvatureTensor& R) {
    Json entries = Json::array();
    for (int i = 0; i < R.base_dim(); ++i)
        for (int j = 0; j < R.base_dim(); ++j)
            for (int a = 0; a < R.rank(); ++a)
                for (int b = 0; b < R.rank(); ++b) {
                    const Complex z = R(i, j, a, b);
                    if (z == Complex(0.0)) continue;
                    entries.push_back({{"i", i + 1}, {"j", j + 1}, {"a", a + 1}, {"b", b + 1}, {"value", complex_json(z)}});
                }
    return {{"base_dim", R.base_dim()}, {"rank", R.rank()}, {"normalized", R.normalized()}, {"entries", entries}};
}

Json to_json(const sym::SymCurvature& R) {
    Json basis = Json::array();
    for (const auto& A : R.basis) basis.push_back(multi_index_json(A));
    Json entries = Json::array();
    const int n = R.base_dim(), N = R.sym_rank();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    const Complex z = R.values(i, j, a, b);
                    if (z == Complex(0.0)) continue;
                    entries.push_back({{"i", i + 1},
                                       {"j", j + 1},
                                       {"A", multi_index_json(R.basis[a])},
                                       {"B", multi_index_json(R.basis[b])},
                                       {"value", complex_json(z)}});
                }
    return {{"r", R.r}, {"k", R.k}, {"base_dim", n}, {"basis", basis}, {"entries", entries}};
}

Json to_json(const positivity::PositivityReport& rep) {
    Json points = Json::array();
    for (const auto& p : rep.points) points.push_back(point_json(p));
    return {{"mode", positivity::to_string(rep.mode)},
            {"min_value", rep.min_value},
            {"max_value", rep.max_value},
            {"certified_sign", positivity::to_string(rep.certified_sign)},
            {"heuristic", rep.heuristic},
            {"witness_point", rep.witness_point},
            {"witness", witness_json(rep.witness)},
            {"max_witness", witness_json(rep.max_witness)},
            {"points", points}};
}

Json to_json(const positivity::BoundednessCertificate& cert) {
    auto bound = [](const positivity::BoundWitness& w) {
        return Json{{"point", w.point}, {"value", w.value}, {"u", vector_json(w.u)}, {"v", vector_json(w.v)}};
    };
    Json points = Json::array();
    for (const auto& p : cert.points) points.push_back(point_json(p));
    return {{"eps1", cert.eps1},
            {"eps2", cert.eps2},
            {"strict_low", cert.strict_low},
            {"strict_high", cert.strict_high},
            {"low_witness", bound(cert.low)},
            {"high_witness", bound(cert.high)},
            {"point_min", cert.point_min},
            {"point_max", cert.point_max},
            {"points", points}};
}

Json to_json(const positivity::EstimateReport& rep) {
    return {{"trials", rep.trials},
            {"worst_slack", rep.worst_slack},
            {"worst_bound", rep.worst_bound},
            {"worst_p", rep.worst_p},
            {"worst_q", rep.worst_q}};
}

Json to_json(const regions::TheoremParams& p) {
    return {{"theorem", regions::to_string(p.theorem)},
            {"n", p.n},
            {"r", p.r},
            {"k", p.k},
            {"m", p.m},
            {"eps1", rational_json(p.eps1)},
            {"eps2", rational_json(p.eps2)}};
}

Json to_json(const regions::VanishingRegion& reg) {
    Json members = Json::array();
    for (const auto& [p, q] : reg.members) members.push_back({p, q});
    Json vertices = Json::object();
    const char* names[4] = {"A0", "A1", "A2", "A3"};
    for (int v = 0; v < 4; ++v)
        vertices[names[v]] = {rational_json(reg.vertices[v].p), rational_json(reg.vertices[v].q)};
    return {{"n", reg.n},
            {"lambda0", rational_json(reg.lambda0)},
            {"c0", rational_json(reg.c0)},
            {"members", members},
            {"vertices", vertices}};
}

Json to_json(const oracles::CohomologyDim& c) {
    return {{"p", c.p}, {"q", c.q}, {"dim", c.dim.str()}, {"source", c.source}};
}

Json to_json(const oracles::ConsistencyReport& rep) {
    Json offending = Json::array();
    for (const auto& [p, q] : rep.offending) offending.push_back({p, q});
    return {{"status", oracles::to_string(rep.status)},
            {"parameters_match", rep.parameters_match},
            {"region_params", rep.region_params.to_string()},
            {"oracle_params", rep.oracle_params.to_string()},
            {"offending", offending},
            {"note", rep.note}};
}

Json to_json(const moments::LemmaLinearReport& rep) {
    return {{"bundle", rep.bundle},
            {"k", rep.k},
            {"m", rep.m},
            {"dev_algebraic_fd", rep.dev_algebraic_fd},
            {"dev_algebraic_moment", rep.dev_algebraic_moment},
            {"dev_fd_moment", rep.dev_fd_moment},
            {"mc_max_abs_z", rep.mc_max_abs_z},
            {"mc_within_3sigma", rep.mc_within_3sigma},
            {"algebraic", to_json(rep.algebraic)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace poslab::io
