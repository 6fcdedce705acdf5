#pragma once

#include "poslab/geometry.hpp"
#include "poslab/moments.hpp"
#include "poslab/oracles.hpp"
#include "poslab/positivity.hpp"
#include "poslab/regions.hpp"
#include "poslab/sym_bundle.hpp"

#include <json.hpp>

namespace poslab::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

Json complex_json(const Complex& z);
Json vector_json(const CVector& v);
Json point_json(const ChartPoint& p);
Json rational_json(const Rational& x);

Json to_json(const CurvatureTensor& R);
/// {"r", "k", "base_dim", "basis": [[1,1],[1,2],...], "entries": [{"i","j","A","B","value":[re,im]}]}
/// with 1-based indices; zero entries are omitted.
Json to_json(const sym::SymCurvature& R);
Json to_json(const positivity::PositivityReport& rep);
Json to_json(const positivity::BoundednessCertificate& cert);
Json to_json(const positivity::EstimateReport& rep);
Json to_json(const regions::TheoremParams& params);
Json to_json(const regions::VanishingRegion& region);
Json to_json(const oracles::CohomologyDim& c);
Json to_json(const oracles::ConsistencyReport& rep);
Json to_json(const moments::LemmaLinearReport& rep);

/// Two-space indented text with a trailing newline; identical inputs give
/// identical bytes.
std::string dump(const Json& j);

}  // namespace poslab::io
