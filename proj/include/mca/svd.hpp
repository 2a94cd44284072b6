#pragma once

#include "mca/matrix.hpp"

namespace mca {

/// Thin SVD of a p-by-n matrix truncated at the detected numerical rank k:
/// X ~= U * diag(sigma) * V', with U (p-by-k) and V (n-by-k) having orthonormal
/// columns and sigma strictly positive, non-increasing.
struct SvdFactors {
  Matrix u;
  Vector sigma;
  Matrix v;

  std::size_t rank() const noexcept { return sigma.size(); }
};

/// One-sided Jacobi SVD with relative rank cutoff: triplets with
/// sigma_j > rank_tol * sigma_1 are kept. Deterministic sign convention: the
/// largest-magnitude entry of each U column is positive (ties broken by lowest
/// row index); V column signs follow U.
///
/// Throws Error(errc::all_zero_matrix) when sigma_1 == 0 and
/// Error(errc::non_finite) on NaN/Inf input.
SvdFactors thin_svd(const Matrix& x, double rank_tol = 1e-10);

/// Row vector b' X-dagger, returned as a column (length p), computed from the
/// factors as sum_j ((v_j' b) / sigma_j) u_j without forming the pseudoinverse.
Vector apply_pinv_left(const SvdFactors& factors, std::span<const double> b);

}  // namespace mca
