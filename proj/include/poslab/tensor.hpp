#pragma once

#include "poslab/error.hpp"

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace poslab {

using Complex = std::complex<double>;

inline Complex conj(const Complex& z) { return std::conj(z); }

/// Four-index curvature array R_{i jbar a bbar}: base indices (i, j) in
/// [0, base_dim), bundle indices (a, b) in [0, rank).
///
/// `normalized` records that the components are expressed in coordinates
/// with g(p) = Id and a frame with h(p) = Id. For symmetric-power bundles
/// built on a normalized frame the flag is also set, even though the
/// monomial basis itself has Gram matrix diag(delta_AA).
template <class T>
class Curvature4 {
public:
    Curvature4() = default;
    Curvature4(int base_dim, int rank, bool normalized = false)
        : base_dim_(base_dim),
          rank_(rank),
          normalized_(normalized),
          data_(static_cast<std::size_t>(base_dim) * base_dim * rank * rank, T(0)) {}

    int base_dim() const noexcept { return base_dim_; }
    int rank() const noexcept { return rank_; }
    bool normalized() const noexcept { return normalized_; }
    void set_normalized(bool flag) noexcept { normalized_ = flag; }

    T& operator()(int i, int j, int a, int b) { return data_[index(i, j, a, b)]; }
    const T& operator()(int i, int j, int a, int b) const { return data_[index(i, j, a, b)]; }

    const std::vector<T>& data() const noexcept { return data_; }
    std::vector<T>& data() noexcept { return data_; }

    /// Trace over the bundle indices: sum_d R_{i jbar d dbar}.
    T trace(int i, int j) const {
        T out(0);
        for (int d = 0; d < rank_; ++d) out += (*this)(i, j, d, d);
        return out;
    }

    /// Throws FRAME_NOT_NORMALIZED when the flag is missing.
    void require_normalized(const char* where) const {
        if (!normalized_)
            fail(ErrorCode::FrameNotNormalized,
                 std::string(where) + ": curvature must be expressed in a normalized frame");
    }

private:
    std::size_t index(int i, int j, int a, int b) const {
        return ((static_cast<std::size_t>(i) * base_dim_ + j) * rank_ + a) * rank_ + b;
    }

    int base_dim_ = 0;
    int rank_ = 0;
    bool normalized_ = false;
    std::vector<T> data_;
};

using CurvatureTensor = Curvature4<Complex>;

double max_abs(const CurvatureTensor& R);
/// max |R_{ij ab} - conj(R_{ji ba})|.
double hermitian_defect(const CurvatureTensor& R);
/// max |A - B| / max(max|A|, max|B|, floor).
double relative_deviation(const CurvatureTensor& A, const CurvatureTensor& B, double floor = 1e-300);

CurvatureTensor operator+(const CurvatureTensor& A, const CurvatureTensor& B);
CurvatureTensor operator*(double s, const CurvatureTensor& A);

}  // namespace poslab
