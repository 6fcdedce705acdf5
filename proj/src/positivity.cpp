#include "poslab/positivity.hpp"

#include "poslab/parallel.hpp"
#include "poslab/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace poslab::positivity {

std::string to_string(Mode mode) {
    switch (mode) {
        case Mode::Griffiths: return "griffiths";
        case Mode::Nakano: return "nakano";
        case Mode::DualNakano: return "dual_nakano";
    }
    return "unknown";
}

std::string to_string(Sign sign) {
    switch (sign) {
        case Sign::Positive: return "positive";
        case Sign::NonpositiveFound: return "nonpositive_found";
        case Sign::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

CMatrix hermitian_part(const CMatrix& M) { return (M + M.adjoint()) * 0.5; }

Sign classify(double min_value) {
    if (min_value > kZeroTol) return Sign::Positive;
    if (min_value <= 0.0) return Sign::NonpositiveFound;
    return Sign::Inconclusive;
}

/// B_{ab} = sum R_{ij ab} u^i conj(u^j)
CMatrix fiber_matrix(const CurvatureTensor& R, const CVector& u) {
    const int n = R.base_dim(), r = R.rank();
    CMatrix B = CMatrix::Zero(r, r);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Complex w = u[i] * std::conj(u[j]);
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) B(a, b) += R(i, j, a, b) * w;
        }
    return hermitian_part(B);
}

/// A_{ij} = sum R_{ij ab} v^a conj(v^b)
CMatrix base_matrix(const CurvatureTensor& R, const CVector& v) {
    const int n = R.base_dim(), r = R.rank();
    CMatrix A = CMatrix::Zero(n, n);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            const Complex w = v[a] * std::conj(v[b]);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) A(i, j) += R(i, j, a, b) * w;
        }
    return hermitian_part(A);
}

CVector random_unit(Rng& rng, int dim) {
    CVector v(dim);
    for (int a = 0; a < dim; ++a) v[a] = rng.complex_normal();
    return v / v.norm();
}

struct Extremum {
    double value = 0.0;
    CVector u, v;
};

/// Minimizes sign * Q(u, v) and returns Q at the minimizer.
Extremum alternate(const CurvatureTensor& R, double sign, const GriffithsOptions& opts) {
    const int n = R.base_dim(), r = R.rank();
    Rng rng(opts.seed, sign > 0 ? 0x67726d6e : 0x67726d78);
    Extremum best;
    best.value = std::numeric_limits<double>::infinity();
    const int starts = std::max(opts.restarts, r);
    for (int s = 0; s < starts; ++s) {
        CVector v = s < r ? CVector(CVector::Unit(r, s)) : random_unit(rng, r);
        CVector u(n);
        double value = std::numeric_limits<double>::infinity();
        for (int it = 0; it < opts.max_iterations; ++it) {
            Eigen::SelfAdjointEigenSolver<CMatrix> ea(sign * base_matrix(R, v));
            u = ea.eigenvectors().col(0).conjugate();
            Eigen::SelfAdjointEigenSolver<CMatrix> eb(sign * fiber_matrix(R, u));
            v = eb.eigenvectors().col(0).conjugate();
            const double next = eb.eigenvalues()[0];
            const bool done = std::abs(value - next) < opts.tol;
            value = next;
            if (done) break;
        }
        if (value < best.value) best = {value, u, v};
    }
    best.value *= sign;
    return best;
}

PositivityReport matrix_report(Mode mode, const CMatrix& M) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(M));
    const auto last = es.eigenvalues().size() - 1;
    PositivityReport rep;
    rep.mode = mode;
    rep.min_value = es.eigenvalues()[0];
    rep.max_value = es.eigenvalues()[last];
    rep.witness = {es.eigenvectors().col(0).conjugate()};
    rep.max_witness = {es.eigenvectors().col(last).conjugate()};
    rep.certified_sign = classify(rep.min_value);
    return rep;
}

}  // namespace

double griffiths_value(const CurvatureTensor& R, const CVector& u, const CVector& v) {
    const CMatrix B = fiber_matrix(R, u);
    return (v.transpose() * B * v.conjugate())(0, 0).real();
}

double nakano_value(const CurvatureTensor& R, const CVector& u) {
    const CMatrix M = nakano_matrix(R);
    return (u.transpose() * M * u.conjugate())(0, 0).real();
}

double dual_nakano_value(const CurvatureTensor& R, const CVector& u) {
    const CMatrix M = dual_nakano_matrix(R);
    return (u.transpose() * M * u.conjugate())(0, 0).real();
}

CMatrix nakano_matrix(const CurvatureTensor& R) {
    const int n = R.base_dim(), r = R.rank();
    CMatrix M(n * r, n * r);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) M(i * r + a, j * r + b) = R(i, j, a, b);
    return M;
}

CMatrix dual_nakano_matrix(const CurvatureTensor& R) {
    const int n = R.base_dim(), r = R.rank();
    CMatrix M(n * r, n * r);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) M(i * r + a, j * r + b) = R(i, j, b, a);
    return M;
}

PositivityReport griffiths_min(const CurvatureTensor& R, const GriffithsOptions& opts) {
    R.require_normalized("griffiths_min");
    const Extremum lo = alternate(R, 1.0, opts);
    const Extremum hi = alternate(R, -1.0, opts);
    PositivityReport rep;
    rep.mode = Mode::Griffiths;
    rep.min_value = lo.value;
    rep.max_value = hi.value;
    rep.witness = {lo.u, lo.v};
    rep.max_witness = {hi.u, hi.v};
    rep.certified_sign = classify(lo.value);
    rep.heuristic = rep.certified_sign == Sign::Positive;
    return rep;
}

PositivityReport nakano_min(const CurvatureTensor& R) {
    R.require_normalized("nakano_min");
    return matrix_report(Mode::Nakano, nakano_matrix(R));
}

PositivityReport nakano_min(const sym::SymCurvature& R) { return nakano_min(sym::orthonormalized(R)); }

PositivityReport dual_nakano_min(const CurvatureTensor& R) {
    R.require_normalized("dual_nakano_min");
    return matrix_report(Mode::DualNakano, dual_nakano_matrix(R));
}

PositivityReport dual_nakano_min(const sym::SymCurvature& R) { return dual_nakano_min(sym::orthonormalized(R)); }

PositivityReport evaluate_mode(Mode mode, const CurvatureTensor& R, const GriffithsOptions& opts) {
    switch (mode) {
        case Mode::Griffiths: return griffiths_min(R, opts);
        case Mode::Nakano: return nakano_min(R);
        case Mode::DualNakano: return dual_nakano_min(R);
    }
    fail(ErrorCode::Unsupported, "unknown positivity mode");
}

PositivityReport positivity_scan(Mode mode, const std::vector<ChartPoint>& points,
                                 const std::function<CurvatureTensor(const ChartPoint&)>& tensor_at,
                                 const GriffithsOptions& opts) {
    if (points.empty()) fail(ErrorCode::ParamDomain, "positivity_scan needs at least one point");
    std::vector<PositivityReport> per(points.size());
    parallel_for(points.size(), [&](std::size_t s) {
        GriffithsOptions o = opts;
        o.seed = opts.seed + s;
        per[s] = evaluate_mode(mode, tensor_at(points[s]), o);
    });
    PositivityReport rep = per[0];
    std::size_t hi = 0;
    for (std::size_t s = 1; s < per.size(); ++s) {
        if (per[s].min_value < rep.min_value) {
            rep.min_value = per[s].min_value;
            rep.witness = per[s].witness;
            rep.witness_point = static_cast<int>(s);
        }
        if (per[s].max_value > per[hi].max_value) hi = s;
    }
    rep.max_value = per[hi].max_value;
    rep.max_witness = per[hi].max_witness;
    rep.points = points;
    rep.certified_sign = classify(rep.min_value);
    rep.heuristic = mode == Mode::Griffiths && rep.certified_sign == Sign::Positive;
    return rep;
}

CurvatureTensor sym_twist_curvature(const MetricField& E, const MetricField& omega, const ChartPoint& p,
                                    const SymTwist& spec, double step) {
    const NormalizedCurvature norm = normalize_at_point(E, omega, p, step);
    sym::SymCurvature S = sym::induced_sym_det_curvature(norm.tensor, spec.k, spec.det_power);
    if (spec.twist != 0.0) {
        const int n = E.base_dim;
        CurvatureTensor line(n, 1, true);
        for (int i = 0; i < n; ++i) line(i, i, 0, 0) = 1.0;
        S = sym::twist_by_line(S, line, spec.twist);
    }
    return sym::orthonormalized(S);
}

BoundednessCertificate boundedness_scan(const MetricField& E, const MetricField& L,
                                        const std::vector<ChartPoint>& points, const GriffithsOptions& opts,
                                        double step) {
    if (L.rank != 1) fail(ErrorCode::DimMismatch, "polarization must be a line bundle");
    if (L.base_dim != E.base_dim) fail(ErrorCode::DimMismatch, "bundle and polarization live on different bases");
    if (points.empty()) fail(ErrorCode::ParamDomain, "boundedness_scan needs at least one point");
    const MetricField omega_L = curvature_form_field(L, step);

    struct PointResult {
        Extremum lo, hi;
    };
    std::vector<PointResult> per(points.size());
    parallel_for(points.size(), [&](std::size_t s) {
        const ChartPoint& p = points[s];
        const HermitianForm G = omega_L.evaluate(p);
        if (!G.positive_definite())
            fail(ErrorCode::NonpositivePolarization, "curvature of the polarization is not positive definite");
        const CurvatureTensor R = chern_curvature(E, p, step);
        const NormalizedCurvature norm = normalize_tensor(R, E.evaluate(p).matrix(), G.matrix());
        GriffithsOptions o = opts;
        o.seed = opts.seed + s;
        per[s] = {alternate(norm.tensor, 1.0, o), alternate(norm.tensor, -1.0, o)};
    });

    BoundednessCertificate cert;
    cert.points = points;
    cert.eps1 = std::numeric_limits<double>::infinity();
    cert.eps2 = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < per.size(); ++s) {
        cert.point_min.push_back(per[s].lo.value);
        cert.point_max.push_back(per[s].hi.value);
        if (per[s].lo.value < cert.eps1) {
            cert.eps1 = per[s].lo.value;
            cert.low = {static_cast<int>(s), per[s].lo.u, per[s].lo.v, per[s].lo.value};
        }
        if (per[s].hi.value > cert.eps2) {
            cert.eps2 = per[s].hi.value;
            cert.high = {static_cast<int>(s), per[s].hi.u, per[s].hi.v, per[s].hi.value};
        }
    }
    // Griffiths values determine the tensor, so Theta == eps omega (x) Id on
    // the samples exactly when the form is constant at every point.
    const double tol = 1e-6 * std::max(1.0, std::max(std::abs(cert.eps1), std::abs(cert.eps2)));
    cert.strict_low = cert.eps2 > cert.eps1 + tol;
    cert.strict_high = cert.strict_low;
    return cert;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<unsigned> subsets(int n, int size) {
    std::vector<unsigned> out;
    if (size < 0 || size > n) return out;
    std::vector<int> idx(size);
    for (int t = 0; t < size; ++t) idx[t] = t;
    while (true) {
        unsigned mask = 0;
        for (int t : idx) mask |= 1u << t;
        out.push_back(mask);
        int t = size - 1;
        while (t >= 0 && idx[t] == n - size + t) --t;
        if (t < 0) break;
        ++idx[t];
        for (int u = t + 1; u < size; ++u) idx[u] = idx[u - 1] + 1;
    }
    return out;
}

std::vector<int> rank_table(int n, const std::vector<unsigned>& sets) {
    std::vector<int> table(std::size_t{1} << n, -1);
    for (std::size_t s = 0; s < sets.size(); ++s) table[sets[s]] = static_cast<int>(s);
    return table;
}

double insertion_sign(int extra, unsigned rest) {
    return (std::popcount(rest & ((1u << extra) - 1u)) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

Form::Form(int n, int p, int q, int rank) : n_(n), p_(p), q_(q), rank_(rank) {
    if (n < 1 || n > 16) fail(ErrorCode::ParamDomain, "form dimension must be in 1..16");
    if (p < 0 || p > n || q < 0 || q > n)
        fail(ErrorCode::BidegreeOutOfRange, "bidegree (p,q) must satisfy 0 <= p,q <= n");
    if (rank < 1) fail(ErrorCode::ParamDomain, "form rank must be >= 1");
    p_sets_ = subsets(n, p);
    q_sets_ = subsets(n, q);
    p_rank_ = rank_table(n, p_sets_);
    q_rank_ = rank_table(n, q_sets_);
    coeffs_.assign(p_sets_.size() * q_sets_.size() * static_cast<std::size_t>(rank), 0.0);
}

int Form::slot(unsigned I, unsigned J, int a) const {
    const int ip = p_rank_[I], jq = q_rank_[J];
    if (ip < 0 || jq < 0) fail(ErrorCode::DimMismatch, "index set has the wrong size");
    return (ip * static_cast<int>(q_sets_.size()) + jq) * rank_ + a;
}

Complex& Form::at(unsigned I, unsigned J, int a) { return coeffs_[slot(I, J, a)]; }
Complex Form::at(unsigned I, unsigned J, int a) const { return coeffs_[slot(I, J, a)]; }

Complex Form::holo_prefixed(int extra, unsigned rest, unsigned J, int a) const {
    if (rest & (1u << extra)) return 0.0;
    return insertion_sign(extra, rest) * at(rest | (1u << extra), J, a);
}

Complex Form::anti_prefixed(unsigned I, int extra, unsigned rest, int a) const {
    if (rest & (1u << extra)) return 0.0;
    return insertion_sign(extra, rest) * at(I, rest | (1u << extra), a);
}

double Form::norm_squared() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return s;
}

void Form::scale(double s) {
    for (auto& c : coeffs_) c *= s;
}

Form Form::random(int n, int p, int q, int rank, std::uint64_t seed) {
    Form f(n, p, q, rank);
    Rng rng(seed, 0x666f726d);
    for (auto& c : f.coeffs_) c = rng.complex_normal();
    return f;
}

double curvature_term(const CurvatureTensor& R, const Form& u) {
    R.require_normalized("curvature_term");
    if (R.base_dim() != u.n() || R.rank() != u.rank())
        fail(ErrorCode::DimMismatch, "curvature and form dimensions differ");
    const int n = u.n(), r = u.rank();
    const auto S_sets = subsets(n, u.q() - 1);
    const auto R_sets = subsets(n, u.p() - 1);
    Complex total = 0.0;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Complex c = R(i, j, a, b);
                    if (c == Complex(0.0)) continue;
                    Complex s = 0.0;
                    for (unsigned I : u.p_sets())
                        for (unsigned S : S_sets)
                            s += u.anti_prefixed(I, i, S, a) * std::conj(u.anti_prefixed(I, j, S, b));
                    for (unsigned Rm : R_sets)
                        for (unsigned J : u.q_sets())
                            s += u.holo_prefixed(j, Rm, J, a) * std::conj(u.holo_prefixed(i, Rm, J, b));
                    if (i == j)
                        for (unsigned I : u.p_sets())
                            for (unsigned J : u.q_sets()) s -= u.at(I, J, a) * std::conj(u.at(I, J, b));
                    total += c * s;
                }
    return total.real();
}

double estimate_bound(const Eigen::VectorXd& eigenvalues, int p, int q) {
    const int n = static_cast<int>(eigenvalues.size());
    const double lo = eigenvalues.minCoeff(), hi = eigenvalues.maxCoeff();
    return std::max(p * lo - (n - q) * hi, q * lo - (n - p) * hi);
}

namespace {

CurvatureTensor line_tensor(const HermitianForm& phi) {
    const int n = phi.size();
    CurvatureTensor R(n, 1, true);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R(i, j, 0, 0) = phi(i, j);
    return R;
}

void record(EstimateReport& rep, double slack, double bound, int p, int q) {
    if (rep.trials == 0 || slack < rep.worst_slack) {
        rep.worst_slack = slack;
        rep.worst_bound = bound;
        rep.worst_p = p;
        rep.worst_q = q;
    }
    ++rep.trials;
}

}  // namespace

EstimateReport estimate_check(const HermitianForm& phi, int p, int q, int trials, std::uint64_t seed) {
    const int n = phi.size();
    const CurvatureTensor R = line_tensor(phi);
    const double bound = estimate_bound(phi.eigenvalues(), p, q);
    EstimateReport rep;
    for (int t = 0; t < trials; ++t) {
        Form u = Form::random(n, p, q, 1, seed * 1000003ULL + static_cast<std::uint64_t>(t));
        u.scale(1.0 / std::sqrt(u.norm_squared()));
        record(rep, curvature_term(R, u) - bound, bound, p, q);
    }
    return rep;
}

EstimateReport estimate_sweep(int n, int trials, std::uint64_t seed) {
    if (n < 1) fail(ErrorCode::ParamDomain, "dimension must be >= 1");
    EstimateReport rep;
    Rng rng(seed, 0x65737477);
    for (int t = 0; t < trials; ++t) {
        CMatrix A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = rng.complex_normal();
        const HermitianForm phi(A * A.adjoint() + 0.01 * CMatrix::Identity(n, n), 1e-9);
        const int p = static_cast<int>(rng.uniform() * (n + 1)) % (n + 1);
        const int q = static_cast<int>(rng.uniform() * (n + 1)) % (n + 1);
        const EstimateReport one = estimate_check(phi, p, q, 1, seed + 7919ULL * static_cast<std::uint64_t>(t + 1));
        record(rep, one.worst_slack, one.worst_bound, p, q);
    }
    return rep;
}

}  // namespace poslab::positivity
