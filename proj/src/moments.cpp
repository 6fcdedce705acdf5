#include "poslab/moments.hpp"

#include "poslab/bundles.hpp"
#include "poslab/parallel.hpp"
#include "poslab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace poslab::moments {

Rational moment_exact(const MomentQuery& q) {
    if (q.A.size() != q.B.size())
        fail(ErrorCode::LengthMismatch, "moment_exact: |A| != |B|");
    if (q.r < 1) fail(ErrorCode::ParamDomain, "moment_exact: rank must be >= 1");
    if (!q.A.within_rank(q.r) || !q.B.within_rank(q.r))
        fail(ErrorCode::ParamDomain, "moment_exact: index outside 1..r");
    const int k = q.A.size();
    return Rational(BigInt(sym::generalized_delta(q.A, q.B)), factorial(q.r + k - 1));
}

namespace {

void unit_sphere_sample(Rng& rng, CVector& w) {
    for (Eigen::Index a = 0; a < w.size(); ++a) w[a] = rng.complex_normal();
    w /= w.norm();
}

Complex monomial(const CVector& w, const MultiIndex& A) {
    Complex v = 1.0;
    for (int e : A.entries()) v *= w[e];
    return v;
}

std::size_t shard_count(std::size_t samples) { return (samples + kShardSize - 1) / kShardSize; }

std::size_t shard_samples(std::size_t samples, std::size_t shard) {
    return std::min(kShardSize, samples - shard * kShardSize);
}

/// Accumulates sum x and sum |x|^2 per slot over sharded samples.
struct Accumulator {
    std::vector<Complex> sum;
    std::vector<double> sum_sq;
    explicit Accumulator(std::size_t slots = 0) : sum(slots, 0.0), sum_sq(slots, 0.0) {}
    void merge(const Accumulator& o) {
        for (std::size_t s = 0; s < sum.size(); ++s) {
            sum[s] += o.sum[s];
            sum_sq[s] += o.sum_sq[s];
        }
    }
};

template <class Visit>
Accumulator sharded(std::size_t slots, int r, std::size_t samples, std::uint64_t seed, const Visit& visit) {
    const std::size_t shards = shard_count(samples);
    std::vector<Accumulator> parts(shards, Accumulator(slots));
    parallel_for(shards, [&](std::size_t s) {
        Rng rng(seed, s);
        CVector w(r);
        Accumulator& acc = parts[s];
        const std::size_t count = shard_samples(samples, s);
        for (std::size_t t = 0; t < count; ++t) {
            unit_sphere_sample(rng, w);
            visit(w, acc);
        }
    });
    Accumulator total(slots);
    for (const auto& p : parts) total.merge(p);
    return total;
}

MomentEstimate finish(const Accumulator& acc, std::size_t slot, std::size_t samples, double scale) {
    const double N = static_cast<double>(samples);
    const Complex mean = acc.sum[slot] / N;
    const double var = std::max(0.0, acc.sum_sq[slot] / N - std::norm(mean));
    const double se = (samples > 1) ? std::sqrt(var * N / (N - 1.0) / N) : 0.0;
    return {mean * scale, se * scale};
}

}  // namespace

MomentEstimate moment_mc(const MomentQuery& q, std::size_t samples, std::uint64_t seed) {
    if (q.A.size() != q.B.size()) fail(ErrorCode::LengthMismatch, "moment_mc: |A| != |B|");
    if (samples < 100) fail(ErrorCode::ParamDomain, "moment_mc needs at least 100 samples");
    if (!q.A.within_rank(q.r) || !q.B.within_rank(q.r))
        fail(ErrorCode::ParamDomain, "moment_mc: index outside 1..r");
    const Accumulator acc = sharded(1, q.r, samples, seed, [&](const CVector& w, Accumulator& a) {
        const Complex x = monomial(w, q.A) * std::conj(monomial(w, q.B));
        a.sum[0] += x;
        a.sum_sq[0] += std::norm(x);
    });
    // Sphere average -> FS integral with omega^{r-1}/(r-1)!.
    const double scale = 1.0 / to_double(Rational(factorial(q.r - 1)));
    return finish(acc, 0, samples, scale);
}

std::vector<MomentEstimate> moment_mc_table(int r, int k, std::size_t samples, std::uint64_t seed) {
    if (samples < 100) fail(ErrorCode::ParamDomain, "moment_mc needs at least 100 samples");
    const auto basis = sym::sym_basis(r, k);
    const std::size_t N = basis.size();
    const Accumulator acc = sharded(N * N, r, samples, seed, [&](const CVector& w, Accumulator& a) {
        std::vector<Complex> v(N);
        for (std::size_t x = 0; x < N; ++x) v[x] = monomial(w, basis[x]);
        for (std::size_t x = 0; x < N; ++x)
            for (std::size_t y = 0; y < N; ++y) {
                const Complex val = v[x] * std::conj(v[y]);
                a.sum[x * N + y] += val;
                a.sum_sq[x * N + y] += std::norm(val);
            }
    });
    const double scale = 1.0 / to_double(Rational(factorial(r - 1)));
    std::vector<MomentEstimate> out;
    out.reserve(N * N);
    for (std::size_t s = 0; s < N * N; ++s) out.push_back(finish(acc, s, samples, scale));
    return out;
}

Complex integral_formula_rhs(const CurvatureTensor& R, int k, int m, int i, int j, const MultiIndex& A,
                             const MultiIndex& B) {
    if (A.size() != B.size()) fail(ErrorCode::LengthMismatch, "integral_formula_rhs: |A| != |B|");
    if (A.size() != k) fail(ErrorCode::LengthMismatch, "integral_formula_rhs: |A| != k");
    const auto full = integral_formula_rhs<Complex>(R, k, m);
    return full.values(i, j, sym::index_of(full.basis, A), sym::index_of(full.basis, B));
}

SymEstimate integral_formula_mc(const CurvatureTensor& R, int k, int m, std::size_t samples, std::uint64_t seed) {
    R.require_normalized("integral_formula_mc");
    if (samples < 100) fail(ErrorCode::ParamDomain, "integral_formula_mc needs at least 100 samples");
    const int r = R.rank();
    const int n = R.base_dim();
    const auto basis = sym::sym_basis(r, k);
    const int N = static_cast<int>(basis.size());
    const std::size_t slots = static_cast<std::size_t>(n) * n * N * N;
    auto slot = [&](int i, int j, int a, int b) {
        return ((static_cast<std::size_t>(i) * n + j) * N + a) * N + b;
    };

    const Accumulator acc = sharded(slots, r, samples, seed, [&](const CVector& w, Accumulator& ac) {
        std::vector<Complex> v(N);
        for (int x = 0; x < N; ++x) v[x] = monomial(w, basis[x]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Complex phi = 0.0;
                for (int g = 0; g < r; ++g)
                    for (int d = 0; d < r; ++d) phi += R(i, j, g, d) * w[d] * std::conj(w[g]);
                phi = static_cast<double>(r + k) * phi + static_cast<double>(m - 1) * R.trace(i, j);
                for (int a = 0; a < N; ++a)
                    for (int b = 0; b < N; ++b) {
                        const Complex val = v[a] * std::conj(v[b]) * phi;
                        ac.sum[slot(i, j, a, b)] += val;
                        ac.sum_sq[slot(i, j, a, b)] += std::norm(val);
                    }
            }
    });
    // (r+k-1)! * sphere average / (r-1)!
    const double scale = to_double(Rational(factorial(r + k - 1), factorial(r - 1)));
    SymEstimate out;
    for (auto* target : {&out.mean, &out.std_error}) {
        target->r = r;
        target->k = k;
        target->basis = basis;
        target->values = CurvatureTensor(n, N, true);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    const MomentEstimate e = finish(acc, slot(i, j, a, b), samples, scale);
                    out.mean.values(i, j, a, b) = e.estimate;
                    out.std_error.values(i, j, a, b) = e.std_error;
                }
    return out;
}

LemmaLinearReport verify_lemma_linear(const MetricField& bundle, const ChartPoint& p, int k, int m,
                                      std::size_t mc_samples, std::uint64_t seed, double step) {
    if (k < 0) fail(ErrorCode::ParamDomain, "symmetric power k must be >= 0");
    LemmaLinearReport rep;
    rep.bundle = bundle.label;
    rep.k = k;
    rep.m = m;

    const MetricField omega = bundles::tangent(bundle.base_dim);
    const NormalizedCurvature norm = normalize_at_point(bundle, omega, p, step);

    rep.algebraic = sym::induced_sym_det_curvature(norm.tensor, k, m);
    rep.moment_expansion = integral_formula_rhs(norm.tensor, k, m);

    // Route (b): differentiate the explicitly induced metric in the same
    // normalized coordinates and frame.
    const MetricField local = recentered(bundle, p.coords(), norm.coord_change, norm.frame_change);
    const MetricField induced = sym::sym_det_field(local, k, m);
    rep.finite_difference = rep.algebraic;
    rep.finite_difference.values = chern_curvature(induced, ChartPoint::origin(bundle.base_dim), step);
    rep.finite_difference.values.set_normalized(true);

    rep.dev_algebraic_fd = relative_deviation(rep.algebraic.values, rep.finite_difference.values);
    rep.dev_algebraic_moment = relative_deviation(rep.algebraic.values, rep.moment_expansion.values);
    rep.dev_fd_moment = relative_deviation(rep.finite_difference.values, rep.moment_expansion.values);

    rep.monte_carlo = integral_formula_mc(norm.tensor, k, m, mc_samples, seed);
    double worst = 0.0;
    const auto& mean = rep.monte_carlo.mean.values.data();
    const auto& se = rep.monte_carlo.std_error.values.data();
    const auto& exact = rep.moment_expansion.values.data();
    for (std::size_t s = 0; s < mean.size(); ++s) {
        const double diff = std::abs(mean[s] - exact[s]);
        const double sigma = se[s].real();
        if (diff <= 1e-12 * std::max(1.0, std::abs(exact[s]))) continue;
        worst = std::max(worst, sigma > 0.0 ? diff / sigma : std::numeric_limits<double>::infinity());
    }
    rep.mc_max_abs_z = worst;
    rep.mc_within_3sigma = worst <= 3.0;
    return rep;
}

}  // namespace poslab::moments
