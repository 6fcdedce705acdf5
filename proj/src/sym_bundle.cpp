#include "poslab/sym_bundle.hpp"

#include <cmath>
#include <numeric>

namespace poslab::sym {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end());
    if (!entries_.empty() && entries_.front() < 0)
        fail(ErrorCode::ParamDomain, "multi-index entries must be nonnegative");
}

MultiIndex MultiIndex::one_based(std::initializer_list<int> entries) {
    std::vector<int> v;
    for (int e : entries) v.push_back(e - 1);
    return MultiIndex(std::move(v));
}

MultiIndex MultiIndex::with(int d) const {
    std::vector<int> v = entries_;
    v.insert(std::upper_bound(v.begin(), v.end(), d), d);
    MultiIndex out;
    out.entries_ = std::move(v);
    return out;
}

MultiIndex MultiIndex::replaced(int pos, int g) const {
    std::vector<int> v = entries_;
    v[static_cast<std::size_t>(pos)] = g;
    return MultiIndex(std::move(v));
}

MultiIndex MultiIndex::without(int g) const {
    std::vector<int> v = entries_;
    auto it = std::find(v.begin(), v.end(), g);
    if (it == v.end()) fail(ErrorCode::ParamDomain, "multi-index does not contain the removed value");
    v.erase(it);
    MultiIndex out;
    out.entries_ = std::move(v);
    return out;
}

std::uint64_t MultiIndex::multiplicity_factorial() const {
    std::uint64_t out = 1;
    std::size_t run = 0;
    for (std::size_t p = 0; p < entries_.size(); ++p) {
        run = (p > 0 && entries_[p] == entries_[p - 1]) ? run + 1 : 1;
        out *= run;
    }
    return out;
}

bool MultiIndex::within_rank(int r) const {
    return std::all_of(entries_.begin(), entries_.end(), [r](int e) { return e >= 0 && e < r; });
}

std::string MultiIndex::to_string() const {
    std::string out = "(";
    for (std::size_t p = 0; p < entries_.size(); ++p) out += (p ? "," : "") + std::to_string(entries_[p] + 1);
    return out + ")";
}

std::uint64_t generalized_delta(const MultiIndex& A, const MultiIndex& B) {
    if (A.size() != B.size())
        fail(ErrorCode::LengthMismatch, "generalized_delta: |A| = " + std::to_string(A.size()) +
                                            " but |B| = " + std::to_string(B.size()));
    // Both are sorted, so they match as multisets iff they are equal.
    return A == B ? A.multiplicity_factorial() : 0;
}

std::vector<MultiIndex> sym_basis(int r, int k) {
    if (r < 1) fail(ErrorCode::ParamDomain, "rank must be >= 1");
    if (k < 0) fail(ErrorCode::ParamDomain, "symmetric power must be >= 0");
    std::vector<MultiIndex> out;
    std::vector<int> current(static_cast<std::size_t>(k), 0);
    for (;;) {
        out.emplace_back(current);
        int pos = k - 1;
        while (pos >= 0 && current[static_cast<std::size_t>(pos)] == r - 1) --pos;
        if (pos < 0) break;
        const int next = current[static_cast<std::size_t>(pos)] + 1;
        for (int q = pos; q < k; ++q) current[static_cast<std::size_t>(q)] = next;
    }
    return out;
}

int index_of(const std::vector<MultiIndex>& basis, const MultiIndex& A) {
    auto it = std::lower_bound(basis.begin(), basis.end(), A);
    if (it == basis.end() || *it != A) fail(ErrorCode::ParamDomain, "multi-index " + A.to_string() + " not in basis");
    return static_cast<int>(it - basis.begin());
}

CMatrix sym_metric(const CMatrix& h, int k) {
    const int r = static_cast<int>(h.rows());
    const auto basis = sym_basis(r, k);
    const int N = static_cast<int>(basis.size());
    CMatrix out = CMatrix::Zero(N, N);
    std::vector<int> perm(static_cast<std::size_t>(k));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            std::iota(perm.begin(), perm.end(), 0);
            Complex acc = 0.0;
            do {
                Complex term = 1.0;
                for (int j = 0; j < k; ++j) term *= h(basis[a][perm[j]], basis[b][j]);
                acc += term;
            } while (std::next_permutation(perm.begin(), perm.end()));
            out(a, b) = acc;
        }
    return out;
}

SymCurvature twist_by_line(const SymCurvature& Rsym, const CurvatureTensor& Rline, double t) {
    if (Rline.rank() != 1 || Rline.base_dim() != Rsym.base_dim())
        fail(ErrorCode::DimMismatch, "twist_by_line: need a rank-one tensor over the same base");
    if (Rsym.values.normalized() && !Rline.normalized())
        fail(ErrorCode::FrameNotNormalized, "twist_by_line: line curvature must use the same normalized coordinates");
    SymCurvature out = Rsym;
    if (t == 0.0) return out;
    const int n = Rsym.base_dim();
    for (int a = 0; a < Rsym.sym_rank(); ++a) {
        const double gram = static_cast<double>(Rsym.basis[a].multiplicity_factorial());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.values(i, j, a, a) += t * gram * Rline(i, j, 0, 0);
    }
    return out;
}

CurvatureTensor orthonormalized(const SymCurvature& Rsym) {
    const int n = Rsym.base_dim();
    const int N = Rsym.sym_rank();
    std::vector<double> scale(N);
    for (int a = 0; a < N; ++a) scale[a] = std::sqrt(static_cast<double>(Rsym.basis[a].multiplicity_factorial()));
    CurvatureTensor out(n, N, Rsym.values.normalized());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) out(i, j, a, b) = Rsym.values(i, j, a, b) / (scale[a] * scale[b]);
    return out;
}

CurvatureTensor as_tensor(const SymCurvature& Rsym) { return Rsym.values; }

MetricField sym_det_field(const MetricField& E, int k, int m) {
    MetricField f;
    f.base_dim = E.base_dim;
    f.rank = static_cast<int>(sym_basis(E.rank, k).size());
    f.label = "S^" + std::to_string(k) + "(" + E.label + ")*det^" + std::to_string(m);
    f.domain_radius = E.domain_radius;
    f.eval = [E, k, m](const CVector& z) -> CMatrix {
        const CMatrix h = E.raw(z);
        const double det = h.determinant().real();
        return sym_metric(h, k) * std::pow(det, m);
    };
    return f;
}

}  // namespace poslab::sym
