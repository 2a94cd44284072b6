#pragma once

#include "mca/matrix.hpp"
#include "mca/svd.hpp"

namespace mca {

/// Degree statistics of the implicit similarity graph A = X'X:
/// d = X'(Xe), 2m = d'e, computed without forming A.
struct ModularityStats {
  Vector d;
  double two_m = 0.0;
  double d_norm = 0.0;
};

/// Leading eigenpairs of the modularity matrix B = X'X - dd'/(2m).
/// Column i of `b` is the unit eigenvector for beta[i]; column i of `gamma`
/// holds its expansion coefficients over the right singular vectors,
/// b_i = sum_j gamma(j, i) v_j.
struct ModularityEigenpairs {
  Vector beta;
  Matrix b;
  Matrix gamma;
};

/// Throws Error(errc::degenerate_graph) when the total similarity mass 2m is
/// not positive (relative threshold 1e-12 * ||X||_F^2).
ModularityStats degree_stats(const Matrix& x);

/// B * s without forming B: X'(Xs) - d (d's)/(2m). O(pn).
Vector apply_modularity(const Matrix& x, const ModularityStats& stats, std::span<const double> s);

/// Modularity Q(s) = s'Bs evaluated as ||Xs||^2 - (d's)^2/(2m).
double modularity_score(const Matrix& x, const ModularityStats& stats, std::span<const double> s);

/// Top r eigenpairs of B through the diagonal-plus-rank-one route:
/// alpha_j = sigma_j^2, y = V'd normalized, rho = -||V'd||^2/(2m).
/// Requires r <= k-1; propagates Error(errc::separation_violated) when the
/// strict-interlacing hypotheses fail.
ModularityEigenpairs leading_eigenpairs(const SvdFactors& factors, const ModularityStats& stats,
                                        std::size_t r);

/// Two-group labels from entry signs: 1 where b_i > 0, otherwise 0 (exact
/// zeros go to group 0).
std::vector<int> partition_by_sign(std::span<const double> b);

}  // namespace mca
