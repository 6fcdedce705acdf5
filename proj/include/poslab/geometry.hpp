#pragma once

#include "poslab/tensor.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace poslab {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Point of the affine chart {W_0 != 0} of CP^n, z^i = W_i / W_0.
class ChartPoint {
public:
    explicit ChartPoint(CVector coords);
    static ChartPoint origin(int n);

    int dim() const noexcept { return static_cast<int>(coords_.size()); }
    const CVector& coords() const noexcept { return coords_; }
    double norm_squared() const { return coords_.squaredNorm(); }

private:
    CVector coords_;
};

/// Square complex matrix with entries[a][b] = conj(entries[b][a]).
class HermitianForm {
public:
    HermitianForm() = default;
    explicit HermitianForm(CMatrix entries, double tol = 1e-12);

    int size() const noexcept { return static_cast<int>(entries_.rows()); }
    const CMatrix& matrix() const noexcept { return entries_; }
    const Complex& operator()(int a, int b) const { return entries_(a, b); }

    Eigen::VectorXd eigenvalues() const;
    bool positive_definite() const;

private:
    CMatrix entries_;
};

/// Chart-local Hermitian metric h_{a bbar}(z) on a rank-r bundle over CP^n,
/// expressed in a holomorphic frame.
struct MetricField {
    using Evaluator = std::function<CMatrix(const CVector&)>;

    int rank = 1;
    int base_dim = 1;
    std::string label;
    Evaluator eval;
    /// User metrics may declare |z| < radius as their validity region.
    std::optional<double> domain_radius;

    CMatrix raw(const CVector& z) const { return eval(z); }
    HermitianForm evaluate(const ChartPoint& p) const;
    bool in_domain(const CVector& z) const {
        return !domain_radius || z.norm() < *domain_radius;
    }
};

/// g_{i jbar} = (delta_ij - zbar_i z_j / (1+|z|^2)) / (1+|z|^2), the
/// curvature form of the built-in O(1) metric (1+|z|^2)^{-1}.
HermitianForm fubini_study(int n, const ChartPoint& p);
CMatrix fubini_study_matrix(const CVector& z);

inline constexpr double kDefaultStep = 1e-3;

/// R_{i jbar a bbar} = -d_i dbar_j h + (d_i h) h^{-1} (dbar_j h) by fourth-order
/// central differences in the 2n real coordinates.
CurvatureTensor chern_curvature(const MetricField& h, const ChartPoint& p, double step = kDefaultStep);

/// Coordinate change z = p + C w and frame change e'_a = sum_b P_{ba} e_b.
/// Components transform as R'_{ij ab} = C_ki conj(C_lj) P_ca conj(P_db) R_{kl cd}.
struct NormalizedCurvature {
    CurvatureTensor tensor;
    CMatrix coord_change;
    CMatrix frame_change;
};

/// Frame change P with P^T H conj(P) = Id (from the Cholesky factor).
CMatrix orthonormalizing_change(const CMatrix& H, const char* what = "metric");

CurvatureTensor transform(const CurvatureTensor& R, const CMatrix& coord_change, const CMatrix& frame_change);

/// Components of the curvature of h in coordinates orthonormal for g and a
/// frame orthonormal for h at p. The returned tensor carries the normalized
/// flag that downstream positivity routines require.
NormalizedCurvature normalize_at_point(const MetricField& h, const MetricField& g, const ChartPoint& p,
                                       double step = kDefaultStep);
/// Same, starting from an already computed tensor and the metric values at p.
NormalizedCurvature normalize_tensor(const CurvatureTensor& R, const CMatrix& h_at_p, const CMatrix& g_at_p);

/// The field z -> P^T h(p + C z) conj(P); its curvature at z = 0 is
/// transform(chern_curvature(h, p), C, P).
MetricField recentered(const MetricField& h, const CVector& p, const CMatrix& coord_change,
                       const CMatrix& frame_change);

/// Kahler form omega_L of a rank-one metric, as a rank-n field: the
/// curvature of L divided by h_L(z).
MetricField curvature_form_field(const MetricField& line, double step = kDefaultStep);

/// Origin followed by count-1 points with |z| uniform in [0, radius] and
/// direction uniform on the unit sphere of C^n.
std::vector<ChartPoint> sample_points(int n, int count, std::uint64_t seed, double radius = 2.0);

}  // namespace poslab
