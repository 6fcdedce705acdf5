#pragma once

#include "poslab/geometry.hpp"

#include <json.hpp>

#include <memory>
#include <string>
#include <string_view>

namespace poslab::user_metric {

/// Compiled rational expression in z_k, zb_k (= conj z_k) and abs2 (= |z|^2).
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' ['+' | '-'] integer)?
///   primary := number | 'i' | 'z'k | 'zb'k | 'abs2' | '(' expr ')'
///
/// Coordinates are 1-based (z1 .. zn).
class Expression {
public:
    static Expression parse(std::string_view text, int base_dim);
    Complex operator()(const CVector& z) const;
    const std::string& source() const noexcept { return source_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string source_;
};

/// Builds a metric field from the declarative description
///
///   {"label": "...", "base_dim": n, "rank": r, "domain_radius": rho?,
///    "entries": [[e_11, ..., e_1r], ..., [e_r1, ..., e_rr]]}
///
/// where each entry is an expression string (or a number); an entry below the
/// diagonal may be null, meaning conj of the mirrored entry. Throws
/// PARSE_ERROR on malformed input.
MetricField from_json(const nlohmann::json& spec);
MetricField from_file(const std::string& path);

}  // namespace poslab::user_metric
