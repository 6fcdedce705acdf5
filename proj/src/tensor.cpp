#include "poslab/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace poslab {

double max_abs(const CurvatureTensor& R) {
    double out = 0.0;
    for (const auto& v : R.data()) out = std::max(out, std::abs(v));
    return out;
}

double hermitian_defect(const CurvatureTensor& R) {
    double out = 0.0;
    for (int i = 0; i < R.base_dim(); ++i)
        for (int j = 0; j < R.base_dim(); ++j)
            for (int a = 0; a < R.rank(); ++a)
                for (int b = 0; b < R.rank(); ++b)
                    out = std::max(out, std::abs(R(i, j, a, b) - std::conj(R(j, i, b, a))));
    return out;
}

double relative_deviation(const CurvatureTensor& A, const CurvatureTensor& B, double floor) {
    if (A.base_dim() != B.base_dim() || A.rank() != B.rank())
        fail(ErrorCode::DimMismatch, "relative_deviation: tensor shapes differ");
    double diff = 0.0;
    for (std::size_t k = 0; k < A.data().size(); ++k)
        diff = std::max(diff, std::abs(A.data()[k] - B.data()[k]));
    const double scale = std::max({max_abs(A), max_abs(B), floor});
    return diff == 0.0 ? 0.0 : diff / scale;
}

CurvatureTensor operator+(const CurvatureTensor& A, const CurvatureTensor& B) {
    if (A.base_dim() != B.base_dim() || A.rank() != B.rank())
        fail(ErrorCode::DimMismatch, "tensor sum: shapes differ");
    CurvatureTensor out(A.base_dim(), A.rank(), A.normalized() && B.normalized());
    for (std::size_t k = 0; k < A.data().size(); ++k) out.data()[k] = A.data()[k] + B.data()[k];
    return out;
}

CurvatureTensor operator*(double s, const CurvatureTensor& A) {
    CurvatureTensor out = A;
    for (auto& v : out.data()) v *= s;
    return out;
}

}  // namespace poslab
