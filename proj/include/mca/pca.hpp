#pragma once

#include "mca/matrix.hpp"

namespace mca {

/// Centered-data PCA, the comparison baseline. Columns of `components` are the
/// top left singular vectors of the centered matrix; variances are
/// sigma_j^2 / (n-1).
struct PcaModel {
  Vector mean;
  Matrix components;
  Vector variances;
  Vector row_scale;           // per-row factors applied when standardized; empty otherwise
  bool zero_variance = false; // advisory: some requested directions carry no variance
};

struct PcaOptions {
  std::size_t num_components = 1;
  bool standardize_rows = false;  // divide each attribute row by its sample std
};

/// Requires n >= 2 (Error(errc::too_few_points)) and
/// num_components <= min(p, n-1). Constant data (centered matrix identically
/// zero) yields canonical-basis components with zero variances and the
/// zero_variance advisory instead of an error.
PcaModel pca_fit(const Matrix& x, const PcaOptions& options = {});

/// r-by-n score matrix; row i is components_i' (X - mean * e').
Matrix pca_embed(const PcaModel& model, const Matrix& x, std::size_t r);

}  // namespace mca
