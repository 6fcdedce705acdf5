#pragma once

#include "poslab/geometry.hpp"
#include "poslab/tensor.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace poslab::sym {

/// Nondecreasing tuple of frame indices labelling the monomial e_A of S^k E.
/// Entries are 0-based in memory; JSON output and `one_based` use 1..r.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    static MultiIndex one_based(std::initializer_list<int> entries);

    int size() const noexcept { return static_cast<int>(entries_.size()); }
    const std::vector<int>& entries() const noexcept { return entries_; }
    int operator[](int pos) const { return entries_[static_cast<std::size_t>(pos)]; }

    /// Multiset union A + {d}, re-sorted.
    MultiIndex with(int d) const;
    /// A with the entry at `pos` replaced by `g`, re-sorted.
    MultiIndex replaced(int pos, int g) const;
    /// A with one copy of value `g` removed; g must occur in A.
    MultiIndex without(int g) const;
    /// prod over values of (multiplicity)!
    std::uint64_t multiplicity_factorial() const;
    bool within_rank(int r) const;

    std::string to_string() const;
    auto operator<=>(const MultiIndex&) const = default;

private:
    std::vector<int> entries_;
};

/// sum over permutations s of prod_j [a_{s(j)} = b_j]: the permanent of the
/// 0/1 matching matrix, equal to prod multiplicities! for equal multisets and
/// 0 otherwise. Throws LENGTH_MISMATCH if |A| != |B|.
std::uint64_t generalized_delta(const MultiIndex& A, const MultiIndex& B);

/// All multi-indices of length k over r symbols, lexicographic.
std::vector<MultiIndex> sym_basis(int r, int k);
/// Position of A in a basis produced by sym_basis.
int index_of(const std::vector<MultiIndex>& basis, const MultiIndex& A);

/// (S^k h)_{A Bbar} = sum_s prod_j h_{a_{s(j)} bbar_j} on the monomial basis.
CMatrix sym_metric(const CMatrix& h, int k);

template <class T>
struct SymCurvatureT {
    int r = 0;
    int k = 0;
    std::vector<MultiIndex> basis;
    Curvature4<T> values;

    int base_dim() const { return values.base_dim(); }
    int sym_rank() const { return static_cast<int>(basis.size()); }
};

using SymCurvature = SymCurvatureT<Complex>;

/// Curvature of (S^k E (x) (det E)^m, S^k h (x) (det h)^m) from the curvature
/// of E in a frame with h(p) = Id. The S^k part acts as a derivation:
///   R_{ij A Bbar} = sum_pos sum_g R_{ij a_pos gbar} delta(A[pos -> g], B)
///                 + m delta_AB sum_d R_{ij d dbar}.
template <class T>
SymCurvatureT<T> induced_sym_det_curvature(const Curvature4<T>& R, int k, int m) {
    R.require_normalized("induced_sym_det_curvature");
    if (k < 0) fail(ErrorCode::ParamDomain, "symmetric power k must be >= 0");
    SymCurvatureT<T> out;
    out.r = R.rank();
    out.k = k;
    out.basis = sym_basis(R.rank(), k);
    const int n = R.base_dim();
    const int N = static_cast<int>(out.basis.size());
    out.values = Curvature4<T>(n, N, true);
    std::vector<T> gram(N);
    for (int a = 0; a < N; ++a) gram[a] = T(static_cast<int>(out.basis[a].multiplicity_factorial()));

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const T trace = R.trace(i, j);
            for (int a = 0; a < N; ++a) {
                const MultiIndex& A = out.basis[a];
                for (int pos = 0; pos < k; ++pos)
                    for (int g = 0; g < out.r; ++g) {
                        const int b = index_of(out.basis, A.replaced(pos, g));
                        out.values(i, j, a, b) += R(i, j, A[pos], g) * gram[b];
                    }
                if (m != 0) out.values(i, j, a, a) += T(m) * gram[a] * trace;
            }
        }
    return out;
}

/// Adds t * Rline_{ij} * delta_AB, i.e. tensors with L^t.
SymCurvature twist_by_line(const SymCurvature& Rsym, const CurvatureTensor& Rline, double t);

/// Components in the orthonormal basis e_A / sqrt(delta_AA).
CurvatureTensor orthonormalized(const SymCurvature& Rsym);

/// Tensor with the same components as a plain rank-N curvature (no basis
/// rescaling); used to compare against finite differences of sym_det_field.
CurvatureTensor as_tensor(const SymCurvature& Rsym);

/// The explicit field z -> S^k h(z) (x) det(h(z))^m on the monomial basis.
MetricField sym_det_field(const MetricField& E, int k, int m);

}  // namespace poslab::sym
