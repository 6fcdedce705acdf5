#pragma once

#include "poslab/geometry.hpp"
#include "poslab/sym_bundle.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace poslab::positivity {

enum class Mode { Griffiths, Nakano, DualNakano };
enum class Sign { Positive, NonpositiveFound, Inconclusive };

std::string to_string(Mode mode);
std::string to_string(Sign sign);

/// Minimum (and maximum) of one positivity quadratic form over unit vectors.
///
/// Griffiths witnesses are {u in C^n, v in C^r}; Nakano and dual-Nakano
/// witnesses are a single vector u^{i a} in C^{n r}, flattened as i * r + a.
/// A nonpositive minimum is certified by its witness. A positive Griffiths
/// minimum comes from multi-start search and is flagged heuristic; Nakano
/// minima are eigenvalues and are certified both ways up to `zero_tol`.
struct PositivityReport {
    Mode mode = Mode::Griffiths;
    double min_value = 0.0;
    double max_value = 0.0;
    std::vector<CVector> witness;
    std::vector<CVector> max_witness;
    std::vector<ChartPoint> points;
    int witness_point = 0;
    Sign certified_sign = Sign::Inconclusive;
    bool heuristic = false;
};

struct GriffithsOptions {
    int restarts = 32;
    double tol = 1e-10;
    int max_iterations = 500;
    std::uint64_t seed = 0;
};

inline constexpr double kZeroTol = 1e-8;

/// sum R_{i jbar a bbar} u^i conj(u^j) v^a conj(v^b).
double griffiths_value(const CurvatureTensor& R, const CVector& u, const CVector& v);
/// sum R_{i jbar a bbar} u^{ia} conj(u^{jb}).
double nakano_value(const CurvatureTensor& R, const CVector& u);
/// sum R_{i jbar a bbar} u^{ib} conj(u^{ja}).
double dual_nakano_value(const CurvatureTensor& R, const CVector& u);

/// Hermitian matrices M_{(ia),(jb)} = R_{ij ab} and N_{(ia),(jb)} = R_{ij ba}.
CMatrix nakano_matrix(const CurvatureTensor& R);
CMatrix dual_nakano_matrix(const CurvatureTensor& R);

/// Alternating smallest-eigenvector iteration on the biquadratic form.
PositivityReport griffiths_min(const CurvatureTensor& R, const GriffithsOptions& opts = {});
PositivityReport nakano_min(const CurvatureTensor& R);
PositivityReport nakano_min(const sym::SymCurvature& R);
PositivityReport dual_nakano_min(const CurvatureTensor& R);
PositivityReport dual_nakano_min(const sym::SymCurvature& R);

PositivityReport evaluate_mode(Mode mode, const CurvatureTensor& R, const GriffithsOptions& opts = {});

/// Pointwise report over a sample set; the global minimum's point index is
/// recorded in witness_point. The tensor at each point must be normalized.
PositivityReport positivity_scan(Mode mode, const std::vector<ChartPoint>& points,
                                 const std::function<CurvatureTensor(const ChartPoint&)>& tensor_at,
                                 const GriffithsOptions& opts = {});

/// Curvature of S^k E (x) (det E)^m (x) O(l) at p, in coordinates orthonormal
/// for omega (a Kahler form given as a rank-n field) and the orthonormalized
/// monomial basis.
struct SymTwist {
    int k = 1;
    int det_power = 0;
    double twist = 0.0;
};
CurvatureTensor sym_twist_curvature(const MetricField& E, const MetricField& omega, const ChartPoint& p,
                                    const SymTwist& spec, double step = kDefaultStep);

struct BoundWitness {
    int point = 0;
    CVector u;
    CVector v;
    double value = 0.0;
};

/// eps1 omega_L (x) Id <= Theta(E) <= eps2 omega_L (x) Id in the Griffiths sense,
/// certified at the sampled points only.
struct BoundednessCertificate {
    double eps1 = 0.0;
    double eps2 = 0.0;
    /// Theta - eps1 omega (x) Id, resp. Theta - eps2 omega (x) Id, is not
    /// identically zero on the samples.
    bool strict_low = false;
    bool strict_high = false;
    BoundWitness low;
    BoundWitness high;
    std::vector<ChartPoint> points;
    std::vector<double> point_min;
    std::vector<double> point_max;

    bool strict() const { return strict_low || strict_high; }
};

BoundednessCertificate boundedness_scan(const MetricField& E, const MetricField& L,
                                        const std::vector<ChartPoint>& points, const GriffithsOptions& opts = {},
                                        double step = kDefaultStep);

/// Bundle-valued (p,q)-form at a point, stored on strictly increasing index
/// sets I (|I| = p), J (|J| = q) and bundle index a.
class Form {
public:
    Form(int n, int p, int q, int rank);

    int n() const noexcept { return n_; }
    int p() const noexcept { return p_; }
    int q() const noexcept { return q_; }
    int rank() const noexcept { return rank_; }

    /// Canonical index sets of size p (resp. q) as bitmasks in lexicographic order.
    const std::vector<unsigned>& p_sets() const noexcept { return p_sets_; }
    const std::vector<unsigned>& q_sets() const noexcept { return q_sets_; }

    Complex& at(unsigned I, unsigned J, int a);
    Complex at(unsigned I, unsigned J, int a) const;

    /// Coefficient of dz^{i} ^ dz^{I'} style lookups: inserts index `extra`
    /// in front of the set `rest` and returns sign * coefficient, or 0 when
    /// `extra` already lies in `rest`.
    Complex holo_prefixed(int extra, unsigned rest, unsigned J, int a) const;
    Complex anti_prefixed(unsigned I, int extra, unsigned rest, int a) const;

    double norm_squared() const;
    void scale(double s);

    static Form random(int n, int p, int q, int rank, std::uint64_t seed);

private:
    int slot(unsigned I, unsigned J, int a) const;

    int n_, p_, q_, rank_;
    std::vector<unsigned> p_sets_, q_sets_;
    std::vector<int> p_rank_, q_rank_;  // bitmask -> position, -1 if wrong size
    std::vector<Complex> coeffs_;
};

/// <[R, Lambda] u, u> at a point with g = h = Id:
///   sum R_{ij ab} u_{I,iS,a} conj(u_{I,jS,b}) + sum R_{ij ab} u_{jR,J,a} conj(u_{iR,J,b})
///   - sum R_{ii ab} u_{IJa} conj(u_{IJb}).
double curvature_term(const CurvatureTensor& R, const Form& u);

struct EstimateReport {
    int trials = 0;
    double worst_slack = 0.0;  // min over trials of (T(u,u) - bound |u|^2) / |u|^2
    double worst_bound = 0.0;
    int worst_p = 0;
    int worst_q = 0;
};

/// T(u,u) >= max{p l_1 - (n-q) l_n, q l_1 - (n-p) l_n} |u|^2 for line bundles
/// (rank one), checked on random forms.
double estimate_bound(const Eigen::VectorXd& eigenvalues, int p, int q);
EstimateReport estimate_check(const HermitianForm& phi, int p, int q, int trials, std::uint64_t seed);
/// Random positive phi and random bidegrees in [0, n]^2 per trial.
EstimateReport estimate_sweep(int n, int trials, std::uint64_t seed);

}  // namespace poslab::positivity
