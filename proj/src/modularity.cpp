#include "mca/modularity.hpp"

#include <cmath>

#include "mca/dpr1.hpp"
#include "mca/errors.hpp"
#include "mca/kernels.hpp"

namespace mca {

ModularityStats degree_stats(const Matrix& x) {
  if (x.rows() == 0 || x.cols() == 0) raise(errc::invalid_argument, "degree_stats: empty matrix");
  if (!x.all_finite()) raise(errc::non_finite, "degree_stats: input has NaN/Inf entries");

  Vector row_sums(x.rows(), 0.0);  // Xe
  for (std::size_t j = 0; j < x.cols(); ++j) kernels::axpy(1.0, x.col(j), row_sums);

  ModularityStats st;
  st.d = matvec_t(x, row_sums);
  double two_m = 0.0;
  for (double v : st.d) two_m += v;
  const double fro = x.frobenius_norm();
  if (two_m <= 1e-12 * fro * fro)
    raise(errc::degenerate_graph, "degree_stats: total similarity mass 2m is not positive");
  st.two_m = two_m;
  st.d_norm = kernels::nrm2(st.d);
  return st;
}

Vector apply_modularity(const Matrix& x, const ModularityStats& stats,
                        std::span<const double> s) {
  if (s.size() != x.cols()) raise(errc::dimension_mismatch, "apply_modularity: vector length != n");
  const Vector t = matvec(x, s);
  Vector out = matvec_t(x, t);
  kernels::axpy(-kernels::dot(stats.d, s) / stats.two_m, stats.d, out);
  return out;
}

double modularity_score(const Matrix& x, const ModularityStats& stats,
                        std::span<const double> s) {
  if (s.size() != x.cols()) raise(errc::dimension_mismatch, "modularity_score: vector length != n");
  const Vector t = matvec(x, s);
  const double ds = kernels::dot(stats.d, s);
  return kernels::dot(t, t) - ds * ds / stats.two_m;
}

ModularityEigenpairs leading_eigenpairs(const SvdFactors& factors, const ModularityStats& stats,
                                        std::size_t r) {
  const std::size_t k = factors.rank();
  const std::size_t n = factors.v.rows();
  if (stats.d.size() != n)
    raise(errc::dimension_mismatch, "leading_eigenpairs: stats and factors disagree on n");
  if (k < 2) raise(errc::rank_too_small, "leading_eigenpairs: rank < 2, no components exist");
  if (r < 1 || r > k - 1)
    raise(errc::component_count_too_large, "leading_eigenpairs: need 1 <= r <= k-1");

  Vector z(k);
  for (std::size_t j = 0; j < k; ++j) z[j] = kernels::dot(factors.v.col(j), stats.d);
  const double znorm = kernels::nrm2(z);
  if (znorm == 0.0)
    raise(errc::separation_violated,
          "leading_eigenpairs: degree vector orthogonal to the right singular vectors");

  Dpr1Problem pb;
  pb.alpha.resize(k);
  for (std::size_t j = 0; j < k; ++j) pb.alpha[j] = factors.sigma[j] * factors.sigma[j];
  pb.y = z;
  kernels::scal(1.0 / znorm, pb.y);
  pb.rho = -(znorm * znorm) / stats.two_m;

  const Dpr1Spectrum spectrum = solve_dpr1(pb, r);

  ModularityEigenpairs out;
  out.beta = spectrum.beta;
  out.b = Matrix(n, r);
  out.gamma = Matrix(k, r);
  for (std::size_t i = 0; i < r; ++i) {
    auto p = spectrum.vectors.col(i);
    auto bi = out.b.col(i);
    for (std::size_t j = 0; j < k; ++j) kernels::axpy(p[j], factors.v.col(j), bi);
    const double scale = 1.0 / kernels::nrm2(bi);
    kernels::scal(scale, bi);
    auto gi = out.gamma.col(i);
    for (std::size_t j = 0; j < k; ++j) gi[j] = p[j] * scale;

    std::size_t imax = 0;
    double amax = -1.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double a = std::abs(bi[t]);
      if (a > amax) {
        amax = a;
        imax = t;
      }
    }
    if (bi[imax] < 0.0) {
      kernels::scal(-1.0, bi);
      kernels::scal(-1.0, gi);
    }
  }
  return out;
}

std::vector<int> partition_by_sign(std::span<const double> b) {
  std::vector<int> labels(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) labels[i] = b[i] > 0.0 ? 1 : 0;
  return labels;
}

}  // namespace mca
