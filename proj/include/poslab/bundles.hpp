#pragma once

#include "poslab/geometry.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace poslab::bundles {

/// O(l) with h = (1+|z|^2)^{-l}.
MetricField line(int n, double l);
/// T CP^n with the Fubini-Study metric in the frame d/dz^i.
MetricField tangent(int n);
/// T CP^n (x) O(l).
MetricField tangent_twist(int n, double l);
/// O(a_1) + ... + O(a_r), block diagonal.
MetricField direct_sum(int n, const std::vector<double>& degrees);
/// Constant identity metric of rank r (flat).
MetricField trivial(int n, int r);

/// E (x) O(l): the metric multiplied by (1+|z|^2)^{-l}.
MetricField twist(const MetricField& E, double l);
/// det E with metric det h.
MetricField determinant(const MetricField& E);
/// E* with the dual metric (h^{-1})^T in the dual frame.
MetricField dual(const MetricField& E);
/// E * a for a constant frame change: z -> a^T h(z) conj(a).
MetricField constant_frame_change(const MetricField& E, const CMatrix& a);

/// Built-in identifiers: "o(l)", "tpn", "tpn_twist(l)", "dsum(a,b,...)",
/// "trivial(r)". Throws UNKNOWN_BUNDLE otherwise.
MetricField from_id(std::string_view id, int n);

}  // namespace poslab::bundles
