#include "poslab/geometry.hpp"

#include "poslab/rng.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace poslab {

ChartPoint::ChartPoint(CVector coords) : coords_(std::move(coords)) {
    if (coords_.size() < 1) fail(ErrorCode::DimMismatch, "chart point needs at least one coordinate");
    for (Eigen::Index i = 0; i < coords_.size(); ++i)
        if (!std::isfinite(coords_[i].real()) || !std::isfinite(coords_[i].imag()))
            fail(ErrorCode::ParamDomain, "chart point coordinates must be finite");
}

ChartPoint ChartPoint::origin(int n) { return ChartPoint(CVector::Zero(n)); }

HermitianForm::HermitianForm(CMatrix entries, double tol) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) fail(ErrorCode::DimMismatch, "Hermitian form must be square");
    const double defect = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (defect > tol * std::max(1.0, entries_.cwiseAbs().maxCoeff()))
        fail(ErrorCode::ParamDomain, "matrix is not Hermitian (defect " + std::to_string(defect) + ")");
}

Eigen::VectorXd HermitianForm::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

bool HermitianForm::positive_definite() const {
    Eigen::LLT<CMatrix> llt(entries_);
    return llt.info() == Eigen::Success;
}

HermitianForm MetricField::evaluate(const ChartPoint& p) const {
    if (p.dim() != base_dim) fail(ErrorCode::DimMismatch, label + ": chart point has wrong dimension");
    if (!in_domain(p.coords())) fail(ErrorCode::StencilOutOfChart, label + ": point outside declared domain");
    CMatrix value = eval(p.coords());
    if (value.rows() != rank || value.cols() != rank)
        fail(ErrorCode::DimMismatch, label + ": evaluator returned a matrix of the wrong size");
    return HermitianForm(std::move(value), 1e-10);
}

CMatrix fubini_study_matrix(const CVector& z) {
    const auto n = z.size();
    const double s = 1.0 + z.squaredNorm();
    CMatrix g = CMatrix::Identity(n, n) / s;
    // g_{i jbar} -= zbar_i z_j / s^2
    g -= (z.conjugate() * z.transpose()) / (s * s);
    return g;
}

HermitianForm fubini_study(int n, const ChartPoint& p) {
    if (n < 1 || p.dim() != n) fail(ErrorCode::DimMismatch, "fubini_study: dimension mismatch");
    return HermitianForm(fubini_study_matrix(p.coords()));
}

namespace {

// Fourth-order central stencil for the first derivative, offsets -2, -1, 1, 2.
constexpr std::array<int, 4> kOffsets{-2, -1, 1, 2};
constexpr std::array<double, 4> kFirst{1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};

Complex unit_direction(int real_index) {
    return (real_index % 2 == 0) ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
}

}  // namespace

CurvatureTensor chern_curvature(const MetricField& h, const ChartPoint& p, double step) {
    const int n = h.base_dim;
    const int r = h.rank;
    if (p.dim() != n) fail(ErrorCode::DimMismatch, h.label + ": chart point has wrong dimension");
    if (!(step > 0.0)) fail(ErrorCode::ParamDomain, "finite-difference step must be positive");

    const CVector& z0 = p.coords();
    auto at = [&](const CVector& z) -> CMatrix {
        if (!h.in_domain(z))
            fail(ErrorCode::StencilOutOfChart, h.label + ": stencil point leaves the declared domain");
        return h.raw(z);
    };
    auto shifted = [&](int a, double ta, int b = -1, double tb = 0.0) {
        CVector z = z0;
        z[a / 2] += unit_direction(a) * ta;
        if (b >= 0) z[b / 2] += unit_direction(b) * tb;
        return z;
    };

    const CMatrix H = at(z0);
    if (H.rows() != r || H.cols() != r) fail(ErrorCode::DimMismatch, h.label + ": metric has wrong size");
    Eigen::FullPivLU<CMatrix> lu(H);
    if (!lu.isInvertible() || lu.rcond() < 1e-13)
        fail(ErrorCode::SingularMetric, h.label + ": metric is not invertible at the point");

    const int m = 2 * n;
    std::vector<CMatrix> grad(m, CMatrix::Zero(r, r));
    std::vector<CMatrix> hess(static_cast<std::size_t>(m) * m, CMatrix::Zero(r, r));
    auto hs = [&](int a, int b) -> CMatrix& { return hess[static_cast<std::size_t>(a) * m + b]; };

    for (int a = 0; a < m; ++a) {
        std::array<CMatrix, 4> line;
        for (int k = 0; k < 4; ++k) line[k] = at(shifted(a, kOffsets[k] * step));
        for (int k = 0; k < 4; ++k) grad[a] += kFirst[k] * line[k];
        grad[a] /= step;
        // -f(+2) + 16 f(+1) - 30 f(0) + 16 f(-1) - f(-2), over 12 s^2
        hs(a, a) = (-line[0] + 16.0 * line[1] - 30.0 * H + 16.0 * line[2] - line[3]) / (12.0 * step * step);
    }
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            CMatrix acc = CMatrix::Zero(r, r);
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    acc += (kFirst[k] * kFirst[l]) * at(shifted(a, kOffsets[k] * step, b, kOffsets[l] * step));
            acc /= step * step;
            hs(a, b) = acc;
            hs(b, a) = acc;
        }
    }

    const Complex I(0.0, 1.0);
    std::vector<CMatrix> dz(n), dzbar(n);
    for (int i = 0; i < n; ++i) {
        dz[i] = 0.5 * (grad[2 * i] - I * grad[2 * i + 1]);
        dzbar[i] = 0.5 * (grad[2 * i] + I * grad[2 * i + 1]);
    }

    const CMatrix Hinv = lu.solve(CMatrix::Identity(r, r));
    CurvatureTensor R(n, r);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int xi = 2 * i, yi = 2 * i + 1, xj = 2 * j, yj = 2 * j + 1;
            const CMatrix ddbar = 0.25 * (hs(xi, xj) + hs(yi, yj) + I * (hs(xi, yj) - hs(yi, xj)));
            const CMatrix block = -ddbar + dz[i] * Hinv * dzbar[j];
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) R(i, j, a, b) = block(a, b);
        }
    }
    return R;
}

CMatrix orthonormalizing_change(const CMatrix& H, const char* what) {
    Eigen::LLT<CMatrix> llt(H);
    if (llt.info() != Eigen::Success)
        fail(ErrorCode::SingularMetric, std::string(what) + " is not positive definite at the point");
    const auto n = H.rows();
    const CMatrix L = llt.matrixL();
    const CMatrix Linv = L.triangularView<Eigen::Lower>().solve(CMatrix::Identity(n, n));
    return Linv.transpose();
}

CurvatureTensor transform(const CurvatureTensor& R, const CMatrix& C, const CMatrix& P) {
    const int n = R.base_dim();
    const int r = R.rank();
    if (C.rows() != n || C.cols() != n || P.rows() != r || P.cols() != r)
        fail(ErrorCode::DimMismatch, "transform: change-of-basis matrices have the wrong size");

    // Frame indices first: S_{kl ab} = P_ca conj(P_db) R_{kl cd}.
    CurvatureTensor S(n, r);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            CMatrix block(r, r);
            for (int c = 0; c < r; ++c)
                for (int d = 0; d < r; ++d) block(c, d) = R(k, l, c, d);
            const CMatrix out = P.transpose() * block * P.conjugate();
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) S(k, l, a, b) = out(a, b);
        }
    CurvatureTensor T(n, r);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            CMatrix block(n, n);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) block(k, l) = S(k, l, a, b);
            const CMatrix out = C.transpose() * block * C.conjugate();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) T(i, j, a, b) = out(i, j);
        }
    return T;
}

NormalizedCurvature normalize_tensor(const CurvatureTensor& R, const CMatrix& h_at_p, const CMatrix& g_at_p) {
    NormalizedCurvature out;
    out.frame_change = orthonormalizing_change(h_at_p, "bundle metric");
    out.coord_change = orthonormalizing_change(g_at_p, "Kahler metric");
    out.tensor = transform(R, out.coord_change, out.frame_change);
    out.tensor.set_normalized(true);
    return out;
}

NormalizedCurvature normalize_at_point(const MetricField& h, const MetricField& g, const ChartPoint& p,
                                       double step) {
    if (g.rank != h.base_dim || g.base_dim != h.base_dim)
        fail(ErrorCode::DimMismatch, "normalize_at_point: Kahler metric must be n x n over the same base");
    const CurvatureTensor R = chern_curvature(h, p, step);
    return normalize_tensor(R, h.evaluate(p).matrix(), g.evaluate(p).matrix());
}

MetricField recentered(const MetricField& h, const CVector& p, const CMatrix& C, const CMatrix& P) {
    MetricField out;
    out.rank = h.rank;
    out.base_dim = h.base_dim;
    out.label = h.label + "@normalized";
    out.eval = [h, p, C, P](const CVector& w) -> CMatrix {
        const CVector z = p + C * w;
        if (!h.in_domain(z))
            fail(ErrorCode::StencilOutOfChart, h.label + ": stencil point leaves the declared domain");
        return P.transpose() * h.raw(z) * P.conjugate();
    };
    return out;
}

MetricField curvature_form_field(const MetricField& line, double step) {
    if (line.rank != 1) fail(ErrorCode::DimMismatch, "curvature_form_field needs a line bundle");
    MetricField out;
    out.rank = line.base_dim;
    out.base_dim = line.base_dim;
    out.label = "omega[" + line.label + "]";
    out.domain_radius = line.domain_radius;
    out.eval = [line, step](const CVector& z) -> CMatrix {
        const CurvatureTensor R = chern_curvature(line, ChartPoint(z), step);
        const double hz = line.raw(z)(0, 0).real();
        const int n = line.base_dim;
        CMatrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = R(i, j, 0, 0) / hz;
        // Symmetrize away finite-difference noise.
        return 0.5 * (g + g.adjoint());
    };
    return out;
}

std::vector<ChartPoint> sample_points(int n, int count, std::uint64_t seed, double radius) {
    std::vector<ChartPoint> pts;
    if (count <= 0) return pts;
    pts.push_back(ChartPoint::origin(n));
    Rng rng(seed, 0x5a4d);
    for (int k = 1; k < count; ++k) {
        CVector dir(n);
        for (int i = 0; i < n; ++i) dir[i] = rng.complex_normal();
        const double norm = dir.norm();
        const double rho = radius * rng.uniform();
        pts.emplace_back(dir * (rho / norm));
    }
    return pts;
}

}  // namespace poslab
