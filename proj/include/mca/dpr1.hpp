#pragma once

#include "mca/matrix.hpp"

namespace mca {

/// Symmetric diagonal-plus-rank-one eigenproblem diag(alpha) + rho * y * y'
/// with rho < 0. alpha is strictly decreasing and y has unit 2-norm; with all
/// y components nonzero the eigenvalues strictly interlace alpha from below:
/// alpha_{i+1} < beta_i < alpha_i.
struct Dpr1Problem {
  Vector alpha;
  Vector y;
  double rho = -1.0;
};

/// The r largest eigenpairs. Column i of `vectors` is the unit eigenvector for
/// beta[i], with the same sign convention as thin_svd columns.
struct Dpr1Spectrum {
  Vector beta;
  Matrix vectors;
};

/// Components of y smaller than this are treated as zero, which breaks strict
/// interlacing and is rejected.
inline constexpr double kYComponentTol = 1e-12;

/// Relative gap (times |alpha_1|) below which consecutive alpha are considered
/// tied and the problem rejected.
inline constexpr double kAlphaSeparationTol = 1e-10;

/// Secular function 1 + rho * sum_j y_j^2 / (alpha_j - beta); its roots are the
/// eigenvalues. Strictly decreasing in beta between consecutive poles.
/// Throws Error(errc::pole_evaluation) when beta is within 1e-300 of a pole.
double secular_value(const Dpr1Problem& problem, double beta);

/// Top num_roots eigenpairs (num_roots <= k-1) by bisection-bracketed,
/// Newton-accelerated secular root finding; eigenvector i is
/// y_j / (alpha_j - beta_i) componentwise, normalized.
Dpr1Spectrum solve_dpr1(const Dpr1Problem& problem, std::size_t num_roots);

}  // namespace mca
