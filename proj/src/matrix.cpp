#include "mca/matrix.hpp"

#include <cmath>

#include "mca/errors.hpp"
#include "mca/kernels.hpp"

namespace mca {

bool all_finite(std::span<const double> x) noexcept {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

bool Matrix::all_finite() const noexcept { return mca::all_finite({data_.data(), data_.size()}); }

double Matrix::frobenius_norm() const noexcept {
  return kernels::nrm2({data_.data(), data_.size()});
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) t(j, i) = a(i, j);
  return t;
}

Vector matvec(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.cols()) raise(errc::dimension_mismatch, "matvec: vector length != cols");
  Vector out(a.rows(), 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j) kernels::axpy(x[j], a.col(j), out);
  return out;
}

Vector matvec_t(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.rows()) raise(errc::dimension_mismatch, "matvec_t: vector length != rows");
  Vector out(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) out[j] = kernels::dot(a.col(j), x);
  return out;
}

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::all_zero_matrix: return "AllZeroMatrix";
    case errc::non_finite: return "NonFinite";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::pole_evaluation: return "PoleEvaluation";
    case errc::separation_violated: return "SeparationViolated";
    case errc::convergence_failure: return "ConvergenceFailure";
    case errc::degenerate_graph: return "DegenerateGraph";
    case errc::rank_too_small: return "RankTooSmall";
    case errc::component_count_too_large: return "ComponentCountTooLarge";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::too_few_points: return "TooFewPoints";
    case errc::parse_error: return "ParseError";
    case errc::invalid_flag: return "InvalidFlag";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace mca
