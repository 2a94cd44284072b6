#include "mca/pca.hpp"

#include <cmath>

#include "mca/errors.hpp"
#include "mca/kernels.hpp"
#include "mca/svd.hpp"

namespace mca {

namespace {

// Orthonormal vectors completing `m`'s first `have` columns, drawn from the
// canonical basis by Gram-Schmidt. Used to pad rank-deficient PCA models.
void extend_orthonormal(Matrix& m, std::size_t have) {
  const std::size_t p = m.rows();
  std::size_t next = have;
  for (std::size_t e = 0; e < p && next < m.cols(); ++e) {
    Vector cand(p, 0.0);
    cand[e] = 1.0;
    for (std::size_t j = 0; j < next; ++j)
      kernels::axpy(-kernels::dot(m.col(j), cand), m.col(j), cand);
    const double norm = kernels::nrm2(cand);
    if (norm < 1e-8) continue;
    kernels::scal(1.0 / norm, cand);
    std::copy(cand.begin(), cand.end(), m.col(next).begin());
    ++next;
  }
}

Matrix apply_row_scale(const Matrix& x, const Vector& scale) {
  if (scale.empty()) return x;
  Matrix out = x;
  for (std::size_t j = 0; j < out.cols(); ++j)
    for (std::size_t i = 0; i < out.rows(); ++i) out(i, j) *= scale[i];
  return out;
}

}  // namespace

PcaModel pca_fit(const Matrix& x, const PcaOptions& options) {
  const std::size_t p = x.rows();
  const std::size_t n = x.cols();
  if (p == 0 || n == 0) raise(errc::invalid_argument, "pca_fit: empty matrix");
  if (n < 2) raise(errc::too_few_points, "pca_fit: need at least 2 data points");
  if (!x.all_finite()) raise(errc::non_finite, "pca_fit: input has NaN/Inf entries");
  const std::size_t r = options.num_components;
  if (r < 1 || r > std::min(p, n - 1))
    raise(errc::component_count_too_large, "pca_fit: need 1 <= r <= min(p, n-1)");

  PcaModel model;
  if (options.standardize_rows) {
    model.row_scale.assign(p, 1.0);
    for (std::size_t i = 0; i < p; ++i) {
      double mean = 0.0;
      for (std::size_t j = 0; j < n; ++j) mean += x(i, j);
      mean /= static_cast<double>(n);
      double ss = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double c = x(i, j) - mean;
        ss += c * c;
      }
      const double sd = std::sqrt(ss / static_cast<double>(n - 1));
      if (sd > 0.0) model.row_scale[i] = 1.0 / sd;  // constant rows stay unscaled
    }
  }
  const Matrix xw = apply_row_scale(x, model.row_scale);

  model.mean.assign(p, 0.0);
  for (std::size_t j = 0; j < n; ++j) kernels::axpy(1.0, xw.col(j), model.mean);
  kernels::scal(1.0 / static_cast<double>(n), model.mean);

  Matrix centered = xw;
  for (std::size_t j = 0; j < n; ++j) kernels::axpy(-1.0, model.mean, centered.col(j));

  model.components = Matrix(p, r);
  model.variances.assign(r, 0.0);
  if (centered.frobenius_norm() == 0.0) {
    extend_orthonormal(model.components, 0);
    model.zero_variance = true;
    return model;
  }

  const SvdFactors factors = thin_svd(centered, 1e-10);
  const std::size_t keep = std::min(r, factors.rank());
  for (std::size_t j = 0; j < keep; ++j) {
    auto src = factors.u.col(j);
    std::copy(src.begin(), src.end(), model.components.col(j).begin());
    model.variances[j] = factors.sigma[j] * factors.sigma[j] / static_cast<double>(n - 1);
  }
  if (keep < r) {
    extend_orthonormal(model.components, keep);
    model.zero_variance = true;
  }
  return model;
}

Matrix pca_embed(const PcaModel& model, const Matrix& x, std::size_t r) {
  if (r > model.components.cols())
    raise(errc::index_out_of_range, "pca_embed: r exceeds fitted component count");
  if (x.rows() != model.mean.size())
    raise(errc::dimension_mismatch, "pca_embed: data dimension does not match model");
  const Matrix xw = apply_row_scale(x, model.row_scale);
  Matrix out(r, xw.cols());
  for (std::size_t i = 0; i < r; ++i) {
    auto comp = model.components.col(i);
    const double offset = kernels::dot(comp, model.mean);
    const Vector scores = matvec_t(xw, comp);
    for (std::size_t j = 0; j < xw.cols(); ++j) out(i, j) = scores[j] - offset;
  }
  return out;
}

}  // namespace mca
