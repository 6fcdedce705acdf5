#include "poslab/bundles.hpp"
#include "poslab/error.hpp"
#include "poslab/moments.hpp"
#include "poslab/sym_bundle.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace poslab;
using namespace testing_support;
using sym::MultiIndex;

namespace {

MultiIndex mi(std::initializer_list<int> e) { return MultiIndex::one_based(e); }

// Permanent by brute force over all permutations.
std::uint64_t permanent_delta(const MultiIndex& A, const MultiIndex& B) {
    std::vector<int> perm(A.size());
    for (int j = 0; j < A.size(); ++j) perm[j] = j;
    std::uint64_t total = 0;
    do {
        bool ok = true;
        for (int j = 0; j < A.size(); ++j) ok = ok && A[perm[j]] == B[j];
        total += ok ? 1 : 0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

CurvatureTensor single_entry(int n, int r) {
    CurvatureTensor R(n, r, true);
    R(0, 0, 0, 0) = 1.0;
    return R;
}

}  // namespace

TEST_CASE("generalized delta") {
    CHECK(sym::generalized_delta(mi({1, 2}), mi({1, 2})) == 1);
    CHECK(sym::generalized_delta(mi({1, 1}), mi({1, 1})) == 2);
    CHECK(sym::generalized_delta(mi({1, 1, 2}), mi({1, 2, 2})) == 0);
    CHECK(sym::generalized_delta(mi({}), mi({})) == 1);
    CHECK(sym::generalized_delta(mi({2, 2, 2}), mi({2, 2, 2})) == 6);
    CHECK_THROWS_AS(sym::generalized_delta(mi({1}), mi({1, 1})), Error);
    try {
        sym::generalized_delta(mi({1}), mi({1, 2}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LengthMismatch);
    }
    for (int r = 1; r <= 3; ++r)
        for (int k = 0; k <= 4; ++k) {
            const auto basis = sym::sym_basis(r, k);
            for (const auto& A : basis)
                for (const auto& B : basis) {
                    CHECK(sym::generalized_delta(A, B) == permanent_delta(A, B));
                    CHECK(sym::generalized_delta(A, B) == sym::generalized_delta(B, A));
                }
        }
}

TEST_CASE("multi-index validation") {
    CHECK(MultiIndex::one_based({2, 1}) == mi({1, 2}));
    CHECK_THROWS_AS(MultiIndex::one_based({0}), Error);
    CHECK(mi({1, 3}).with(1) == mi({1, 2, 3}));
    CHECK(mi({1, 3}).replaced(1, 0) == mi({1, 1}));
    CHECK(mi({1, 2, 2}).without(1) == mi({1, 2}));
    CHECK(mi({1, 1, 2, 2, 2}).multiplicity_factorial() == 12);
    CHECK(mi({1, 2}).to_string() == "(1,2)");
    CHECK_FALSE(mi({1, 3}).within_rank(2));
}

TEST_CASE("symmetric basis") {
    const auto b22 = sym::sym_basis(2, 2);
    REQUIRE(b22.size() == 3);
    CHECK(b22[0] == mi({1, 1}));
    CHECK(b22[1] == mi({1, 2}));
    CHECK(b22[2] == mi({2, 2}));
    const auto b31 = sym::sym_basis(3, 1);
    REQUIRE(b31.size() == 3);
    CHECK(b31[2] == mi({3}));
    const auto b20 = sym::sym_basis(2, 0);
    REQUIRE(b20.size() == 1);
    CHECK(b20[0].size() == 0);
    for (int r = 1; r <= 4; ++r)
        for (int k = 0; k <= 4; ++k) {
            const auto b = sym::sym_basis(r, k);
            CHECK(b.size() == static_cast<std::size_t>(binomial(r + k - 1, k)));
            CHECK(std::is_sorted(b.begin(), b.end()));
            CHECK(std::adjacent_find(b.begin(), b.end()) == b.end());
            for (std::size_t a = 0; a < b.size(); ++a) CHECK(sym::index_of(b, b[a]) == static_cast<int>(a));
        }
}

TEST_CASE("symmetric power metric") {
    const CMatrix S = sym::sym_metric(CMatrix::Identity(2, 2), 2);
    CHECK(S(0, 0) == Complex(2.0));
    CHECK(S(1, 1) == Complex(1.0));
    CHECK(S(0, 1) == Complex(0.0));

    const double t = 1.7;
    CMatrix h = CMatrix::Identity(2, 2);
    h(0, 0) = t;
    CHECK(std::abs(sym::sym_metric(h, 2)(0, 0) - 2 * t * t) < 1e-14);

    const Complex eps(0.2, -0.3);
    CMatrix he(2, 2);
    he << 1.4, eps, std::conj(eps), 0.9;
    CHECK(std::abs(sym::sym_metric(he, 2)(0, 1) - 2.0 * eps * 1.4) < 1e-14);

    for (int r = 1; r <= 3; ++r)
        for (int k = 0; k <= 3; ++k) {
            const auto basis = sym::sym_basis(r, k);
            const CMatrix G = sym::sym_metric(CMatrix::Identity(r, r), k);
            for (std::size_t a = 0; a < basis.size(); ++a)
                for (std::size_t b = 0; b < basis.size(); ++b)
                    CHECK(G(a, b) == Complex(static_cast<double>(sym::generalized_delta(basis[a], basis[b]))));
        }

    std::mt19937_64 g(3);
    for (int trial = 0; trial < 5; ++trial) {
        CMatrix A(3, 3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) A(a, b) = cnormal(g);
        const CMatrix H = A * A.adjoint() + 0.1 * CMatrix::Identity(3, 3);
        CHECK(HermitianForm(sym::sym_metric(H, 3), 1e-10).positive_definite());
    }
}

TEST_CASE("induced curvature examples") {
    const auto S = sym::induced_sym_det_curvature(single_entry(1, 2), 1, 1);
    CHECK(S.values(0, 0, 0, 0) == Complex(2.0));
    CHECK(S.values(0, 0, 1, 1) == Complex(1.0));
    CHECK(S.values(0, 0, 0, 1) == Complex(0.0));

    const auto R = random_hermitian_tensor(2, 2, 7);
    CurvatureTensor Rn = R;
    Rn.set_normalized(true);
    const auto S0 = sym::induced_sym_det_curvature(Rn, 0, 1);
    REQUIRE(S0.sym_rank() == 1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(S0.values(i, j, 0, 0) - Rn.trace(i, j)) < 1e-14);

    const auto S1 = sym::induced_sym_det_curvature(Rn, 1, 0);
    CHECK(relative_deviation(S1.values, Rn) < 1e-15);

    for (int k = 0; k <= 3; ++k)
        for (int m = -1; m <= 2; ++m) CHECK(hermitian_defect(sym::induced_sym_det_curvature(Rn, k, m).values) < 1e-12);

    try {
        sym::induced_sym_det_curvature(CurvatureTensor(2, 2), 1, 1);
        FAIL("expected FRAME_NOT_NORMALIZED");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FrameNotNormalized);
    }
}

TEST_CASE("twist by a line") {
    CurvatureTensor omega(2, 1, true);
    omega(0, 0, 0, 0) = 1.0;
    omega(1, 1, 0, 0) = 1.0;

    const auto base = sym::induced_sym_det_curvature(tpn_origin(2), 2, 0);
    const auto same = sym::twist_by_line(base, omega, 0.0);
    CHECK(relative_deviation(same.values, base.values) == 0.0);

    const auto zero = sym::induced_sym_det_curvature(CurvatureTensor(2, 2, true), 1, 0);
    const auto tw = sym::twist_by_line(zero, omega, 3.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    CHECK(tw.values(i, j, a, b) == Complex(i == j && a == b ? 3.0 : 0.0));

    CurvatureTensor w1(1, 1, true);
    w1(0, 0, 0, 0) = 1.0;
    const auto t1 = sym::induced_sym_det_curvature(tpn_origin(1), 1, 0);
    CHECK(std::abs(sym::twist_by_line(t1, w1, -1.0).values(0, 0, 0, 0) - 1.0) < 1e-14);

    CHECK_THROWS_AS(sym::twist_by_line(base, tpn_origin(2), 1.0), Error);
    CHECK_THROWS_AS(sym::twist_by_line(base, CurvatureTensor(3, 1, true), 1.0), Error);
}

TEST_CASE("orthonormalized components divide by the basis norms") {
    const auto S = sym::induced_sym_det_curvature(tpn_origin(2), 2, 1);
    const auto O = sym::orthonormalized(S);
    CHECK(O.normalized());
    for (int a = 0; a < S.sym_rank(); ++a)
        for (int b = 0; b < S.sym_rank(); ++b) {
            const double na = static_cast<double>(S.basis[a].multiplicity_factorial());
            const double nb = static_cast<double>(S.basis[b].multiplicity_factorial());
            CHECK(std::abs(O(0, 1, a, b) * std::sqrt(na * nb) - S.values(0, 1, a, b)) < 1e-14);
        }
    CHECK(hermitian_defect(O) < 1e-14);
}

TEST_CASE("derivation rule agrees with finite differences of the symmetric power metric") {
    const MetricField T1 = bundles::tangent(1);
    const std::vector<std::pair<MetricField, int>> cases = {
        {bundles::tangent(2), 2},
        {bundles::from_id("dsum(2,-1)", 2), 2},
        {bundles::from_id("tpn_twist(-1)", 2), 2},
        {bundles::from_id("dsum(1,1)", 1), 1},
        {bundles::line(2, 1), 2},
    };
    for (const auto& [E, n] : cases) {
        const MetricField g = bundles::tangent(n);
        for (const auto& p : sample_points(n, 3, 11, 1.0)) {
            const auto N = normalize_at_point(E, g, p);
            const MetricField F = recentered(E, p.coords(), N.coord_change, N.frame_change);
            for (int k = 0; k <= 3; ++k)
                for (int m = 0; m <= 2; ++m) {
                    CAPTURE(E.label);
                    CAPTURE(k);
                    CAPTURE(m);
                    const auto fd = chern_curvature(sym::sym_det_field(F, k, m), ChartPoint::origin(n));
                    const auto alg = sym::induced_sym_det_curvature(N.tensor, k, m);
                    CHECK(relative_deviation(fd, sym::as_tensor(alg), 1.0) < 1e-6);
                }
        }
    }
}

TEST_CASE("exact identities on rational tensors") {
    using GR = GaussianRational;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        for (int r = 1; r <= 3; ++r) {
            const auto R = random_rational_tensor(2, r, seed * 10 + r);
            const auto S = sym::induced_sym_det_curvature(R, 1, 1);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int a = 0; a < r; ++a)
                        for (int b = 0; b < r; ++b) {
                            const GR expected = R(i, j, a, b) + (a == b ? R.trace(i, j) : GR(0));
                            CHECK(S.values(i, j, a, b) == expected);
                        }
            for (int k = 0; k <= 3; ++k)
                for (int m = -1; m <= 3; ++m) {
                    const auto alg = sym::induced_sym_det_curvature(R, k, m);
                    const auto rhs = moments::integral_formula_rhs(R, k, m);
                    CHECK(alg.values.data() == rhs.values.data());
                }
        }
    }
}
