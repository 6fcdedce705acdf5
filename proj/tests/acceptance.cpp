// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include "poslab/bundles.hpp"
#include "poslab/moments.hpp"
#include "poslab/oracles.hpp"
#include "poslab/positivity.hpp"
#include "poslab/regions.hpp"
#include "poslab/sym_bundle.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace poslab;
using namespace testing_support;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail << "first failure: " << what << "; ";
        ok = ok && cond;
    }
};

int failures = 0;

void criterion(const char* id, double limit_seconds, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail << "exception: " << e.what() << "; ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
        o.ok = false;
        o.detail << "runtime " << secs << " s exceeds " << limit_seconds << " s; ";
    }
    std::printf("%s %s  %s(%.2f s)\n", id, o.ok ? "PASS" : "FAIL", o.detail.str().c_str(), secs);
    std::fflush(stdout);
    if (!o.ok) ++failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Rational ratio(int n, int p, int q) { return std::min(Rational(n - q, p), Rational(n - p, q)); }

}  // namespace

int main() {
    criterion("AC1", 30.0, [](Outcome& o) {
        using sym::MultiIndex;
        o.require(moments::moment_exact({2, MultiIndex::one_based({1}), MultiIndex::one_based({1})}) == Rational(1, 2),
                  "M((1),(1)) = 1/2");
        o.require(moments::moment_exact({2, MultiIndex::one_based({1, 2}), MultiIndex::one_based({1, 2})}) ==
                      Rational(1, 6),
                  "M((1,2),(1,2)) = 1/6");
        double worst = 0.0;
        int entries = 0;
        for (int r = 1; r <= 4; ++r)
            for (int k = 0; k <= 3; ++k) {
                const auto basis = sym::sym_basis(r, k);
                const auto table = moments::moment_mc_table(r, k, 1000000, 0);
                const std::size_t N = basis.size();
                for (std::size_t a = 0; a < N; ++a)
                    for (std::size_t b = 0; b < N; ++b) {
                        const double exact = to_double(moments::moment_exact({r, basis[a], basis[b]}));
                        const auto& e = table[a * N + b];
                        const double diff = std::abs(e.estimate - exact);
                        if (diff > 1e-12 * std::max(1.0, exact)) {
                            const double z = e.std_error > 0 ? diff / e.std_error : 1e300;
                            worst = std::max(worst, z);
                            o.require(z <= 3.0, "r=" + std::to_string(r) + " k=" + std::to_string(k) + " " +
                                                    basis[a].to_string() + "," + basis[b].to_string() +
                                                    " z=" + fmt(z));
                        }
                        ++entries;
                    }
            }
        o.detail << entries << " entries, max |z| " << fmt(worst) << "; ";
    });

    criterion("AC2", 60.0, [](Outcome& o) {
        double worst = 0.0;
        const std::vector<ChartPoint> pts = {ChartPoint::origin(2),
                                             ChartPoint(CVector::Constant(2, Complex(0.3, -0.4)))};
        for (const char* id : {"tpn", "dsum(1,1)"}) {
            const MetricField E = bundles::from_id(id, 2);
            for (const auto& p : pts)
                for (int k = 1; k <= 3; ++k)
                    for (int m = 0; m <= 3; ++m) {
                        const auto rep = moments::verify_lemma_linear(E, p, k, m, 1000, 0);
                        const double d =
                            std::max({rep.dev_algebraic_fd, rep.dev_algebraic_moment, rep.dev_fd_moment});
                        worst = std::max(worst, d);
                        o.require(d <= 1e-6, std::string(id) + " k=" + std::to_string(k) + " m=" +
                                                 std::to_string(m) + " dev=" + fmt(d));
                    }
        }
        o.detail << "max pairwise relative deviation " << fmt(worst) << "; ";
    });

    criterion("AC3", 0.0, [](Outcome& o) {
        int compared = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed)
            for (int n = 1; n <= 3; ++n)
                for (int r = 1; r <= 3; ++r) {
                    const auto R = random_rational_tensor(n, r, seed * 100 + n * 10 + r);
                    const auto S = sym::induced_sym_det_curvature(R, 1, 1);
                    const auto M = moments::integral_formula_rhs(R, 1, 1);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            for (int a = 0; a < r; ++a)
                                for (int b = 0; b < r; ++b) {
                                    const GaussianRational expected =
                                        R(i, j, a, b) + (a == b ? R.trace(i, j) : GaussianRational(0));
                                    o.require(S.values(i, j, a, b) == expected, "derivation rule entry");
                                    o.require(M.values(i, j, a, b) == expected, "moment expansion entry");
                                    ++compared;
                                }
                }
        o.detail << compared << " exact entries; ";
    });

    criterion("AC4", 10.0, [](Outcome& o) {
        int trials = 0;
        double worst = 1e300;
        for (int n = 1; n <= 4; ++n) {
            const auto rep = positivity::estimate_sweep(n, 300, 1000 + n);
            trials += rep.trials;
            worst = std::min(worst, rep.worst_slack);
        }
        o.require(trials >= 1000, "trial count");
        o.require(worst >= -1e-9, "worst slack " + fmt(worst));
        o.detail << trials << " trials, worst slack " << fmt(worst) << "; ";
    });

    criterion("AC5", 60.0, [](Outcome& o) {
        for (int n : {2, 3}) {
            const auto pts = sample_points(n, 50, 5);
            const auto t = positivity::boundedness_scan(bundles::tangent(n), bundles::line(n, 1), pts);
            o.require(std::abs(t.eps1 - 1.0) <= 1e-6 && std::abs(t.eps2 - 2.0) <= 1e-6,
                      "T_P" + std::to_string(n) + " bounds " + fmt(t.eps1) + "," + fmt(t.eps2));
            o.require(t.strict(), "strictness for T_P" + std::to_string(n));
            const auto h = positivity::boundedness_scan(bundles::tangent_twist(n, -1), bundles::line(n, 1), pts);
            o.require(std::abs(h.eps1) <= 1e-6 && std::abs(h.eps2 - 1.0) <= 1e-6,
                      "T_P" + std::to_string(n) + "(-1) bounds " + fmt(h.eps1) + "," + fmt(h.eps2));
            o.detail << "n=" << n << ": (" << fmt(t.eps1) << ", " << fmt(t.eps2) << "), twisted (" << fmt(h.eps1)
                     << ", " << fmt(h.eps2) << "); ";
        }
        const MetricField E = bundles::from_id("dsum(3,-1)", 2);
        const auto d = positivity::boundedness_scan(E, bundles::determinant(E), sample_points(2, 50, 6));
        o.require(std::abs(d.eps1 + 0.5) <= 1e-6 && std::abs(d.eps2 - 1.5) <= 1e-6,
                  "O(3)+O(-1) extremes " + fmt(d.eps1) + "," + fmt(d.eps2));
        o.require(d.eps1 >= -1.0 && d.eps2 <= 2.0, "O(3)+O(-1) inside (-1,2)");
        o.detail << "O(3)+O(-1) vs O(2): (" << fmt(d.eps1) << ", " << fmt(d.eps2) << "); ";
    });

    criterion("AC6", 0.0, [](Outcome& o) {
        for (int r = 1; r <= 6; ++r) {
            regions::TheoremParams p;
            p.n = 5;
            p.r = r;
            p.k = 1;
            p.m = r + 2;
            p.theorem = regions::Theorem::GloballyGenerated;
            const auto reg = regions::theorem_region(p);
            o.require(reg.lambda0 == Rational(1, 2), "lambda0 = 1/2 for r=" + std::to_string(r));
            o.require(reg.contains(2, 4) && reg.contains(4, 3), "(2,4) and (4,3) members");
        }
        std::set<Rational> grid;
        for (int b = 1; b <= 10; ++b)
            for (int a = 0; a <= b; ++a) grid.insert(Rational(a, b));
        long checked = 0;
        for (int n = 1; n <= 30; ++n)
            for (const Rational& lam : grid) {
                const auto reg = regions::region(n, lam);
                for (int p = 1; p <= n; ++p)
                    for (int q = 1; q <= n; ++q) {
                        const bool in = reg.contains(p, q);
                        o.require(in == (ratio(n, p, q) <= lam), "membership");
                        o.require(in == reg.contains(q, p), "symmetry");
                        if (in && p < n) o.require(reg.contains(p + 1, q), "monotone in p");
                        if (in && q < n) o.require(reg.contains(p, q + 1), "monotone in q");
                        ++checked;
                    }
            }
        o.detail << checked << " (n, lambda0, p, q) cases; ";
    });

    criterion("AC7", 0.0, [](Outcome& o) {
        o.require(regions::strip_threshold(2, 2, 1, 1, regions::Theorem::GloballyGenerated) == 1, "threshold");
        regions::TheoremParams p;
        p.n = 2;
        p.r = 2;
        p.k = 1;
        p.m = 1;
        p.theorem = regions::Theorem::GloballyGenerated;
        const auto reg = regions::theorem_region(p);
        o.require(reg.members == std::vector<regions::Bidegree>{{2, 2}}, "members {(2,2)}");
    });

    criterion("AC8", 0.0, [](Outcome& o) {
        int count = 0;
        for (int n = 1; n <= 6; ++n)
            for (int k = 1; k <= 4; ++k)
                for (int l = 2 - k; l <= 10; ++l) {
                    regions::TheoremParams p;
                    p.n = n;
                    p.r = n;
                    p.k = k;
                    p.m = l + k - 1;
                    p.eps1 = 0;
                    p.eps2 = 1;
                    p.theorem = regions::Theorem::Main1;
                    const Rational expected(l + k - 1, l + n + 2 * k - 1);
                    o.require(regions::lambda0(p) == expected, "substituted lambda0");
                    o.require(regions::lambda0(regions::proposition_ex_params(n, k, l)) == expected,
                              "library substitution");
                    ++count;
                }
        o.detail << count << " exact identities; ";
    });

    criterion("AC9", 0.0, [](Outcome& o) {
        for (int n = 1; n <= 6; ++n)
            for (const auto& c : oracles::grassmannian_nonvanishing(n + 1, n, 1))
                o.require(c.p == n && c.dim == (c.q == n - 1 ? 1 : 0), "Grassmannian dims n=" + std::to_string(n));
        int reports = 0;
        for (int n = 1; n <= 4; ++n)
            for (int k = 1; k <= 3; ++k)
                for (int l = 2 - k; l <= 8; ++l)
                    for (const auto& rep : oracles::proposition_ex_check(n, k, l)) {
                        o.require(rep.status == oracles::Status::Pass,
                                  "consistency n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                      " l=" + std::to_string(l));
                        ++reports;
                    }
        o.detail << reports << " consistency reports; ";
    });

    criterion("AC10", 120.0, [](Outcome& o) {
        const MetricField T = bundles::tangent(2);
        const auto pts = sample_points(2, 20, 10);
        auto scan = [&](positivity::Mode mode, int k, int l) {
            return positivity::positivity_scan(mode, pts, [&](const ChartPoint& p) {
                       return positivity::sym_twist_curvature(T, T, p, {k, 0, double(l)});
                   }).min_value;
        };
        for (int k = 1; k <= 2; ++k) {
            double nak_min = 1e300, dual_min = 1e300;
            for (int l = 2 - k; l <= 4; ++l) {
                const double a = scan(positivity::Mode::Nakano, k, l);
                const double b = scan(positivity::Mode::DualNakano, k, l);
                nak_min = std::min(nak_min, a);
                dual_min = std::min(dual_min, b);
                o.require(a > positivity::kZeroTol, "Nakano k=" + std::to_string(k) + " l=" + std::to_string(l) +
                                                        " min " + fmt(a));
                o.require(b > positivity::kZeroTol, "dual k=" + std::to_string(k) + " l=" + std::to_string(l) +
                                                        " min " + fmt(b));
            }
            const double boundary = scan(positivity::Mode::Nakano, k, 1 - k);
            o.require(boundary <= 1e-8, "boundary Nakano k=" + std::to_string(k) + " min " + fmt(boundary));
            o.detail << "k=" << k << ": Nakano >= " << fmt(nak_min) << ", dual >= " << fmt(dual_min)
                     << ", boundary " << fmt(boundary) << "; ";
        }
    });

    std::printf("%s\n", failures == 0 ? "ALL PASS" : "SOME CRITERIA FAILED");
    return failures == 0 ? 0 : 1;
}
