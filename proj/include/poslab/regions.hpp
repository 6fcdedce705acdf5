#pragma once

#include "poslab/rational.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace poslab::regions {

enum class Theorem { Main1, GloballyGenerated, AmpleNef, Griffiths };

std::string to_string(Theorem t);
/// Accepts main1, gg / globally_generated, ample / ample_nef, griffiths.
Theorem theorem_from_string(const std::string& name);

struct TheoremParams {
    int n = 1;
    int r = 1;
    int k = 1;
    int m = 1;
    Rational eps1 = 0;
    Rational eps2 = 1;
    Theorem theorem = Theorem::Main1;

    /// Throws PARAM_DOMAIN naming the violated hypothesis.
    void validate() const;
};

struct Vertex {
    Rational p;
    Rational q;
};

using Bidegree = std::pair<int, int>;

struct VanishingRegion {
    int n = 1;
    Rational lambda0;
    Rational c0;
    /// Sorted lexicographically; 1 <= p, q <= n.
    std::vector<Bidegree> members;
    /// A0 = (0,n), A1 = (n,n), A2 = (n,0), A3 = (c0,c0).
    std::array<Vertex, 4> vertices;

    bool contains(int p, int q) const;
};

/// min{(n-q)/p, (n-p)/q} <= lambda0, exactly.
bool satisfies(int n, const Rational& lambda0, int p, int q);

Rational lambda0(const TheoremParams& params);

/// Quadrilateral membership for a given ratio in [0, 1].
VanishingRegion region(int n, const Rational& lambda0);

/// The pairs each theorem actually covers: the generic quadrilateral, except
/// m = 1 for globally generated bundles (only (n,n)) and eps1 = eps2 for
/// main1 (p + q >= n + 1).
VanishingRegion theorem_region(const TheoremParams& params);

/// Least integer m with the strip p + q >= n + s inside the region, per the
/// closed-form bound [(n-s)/2](r+k)/s + 1 (gg) or
/// [(n-s)/2](r+k)(r+1)/s + (r+1) + k (ample_nef); [x] is the integer part.
int strip_threshold(int n, int r, int k, int s, Theorem flavor);

/// s0 = 2n/(1+lambda0) - n.
Rational strip_width(int n, const Rational& lambda0);
Rational strip_width(const TheoremParams& params);

/// [(n-s)/2] / ([(n-s)/2] + s): the largest value of min{(n-q)/p, (n-p)/q}
/// over the strip p + q >= n + s.
Rational strip_key_ratio(int n, int s);

/// Parameters of S^k T_Pn (x) O(l) written as S^k H (x) det H (x) L^{l+k-1}
/// with H = T_Pn (x) O(-1) strictly (0,1)-bounded by L = O(1).
TheoremParams proposition_ex_params(int n, int k, int l);
/// (l+k-1)/(l+n+2k-1).
Rational proposition_ex_lambda0(int n, int k, int l);

/// Static SVG of the quadrilateral with member lattice points shaded.
std::string render_svg(const VanishingRegion& region);

}  // namespace poslab::regions
