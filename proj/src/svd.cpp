#include "mca/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mca/errors.hpp"
#include "mca/kernels.hpp"

namespace mca {

namespace {

constexpr int kMaxSweeps = 64;

// Index of the largest-magnitude entry, lowest index on ties.
std::size_t argmax_abs(std::span<const double> v) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

// Orthogonalize the columns of w by cyclic Jacobi plane rotations; v accumulates
// the product of rotations so that w_in * v == w_out on exit.
void one_sided_jacobi(Matrix& w, Matrix& v) {
  const std::size_t m = w.rows();
  const std::size_t q = w.cols();
  const double tol = std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(m));
  Vector colsq(q);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (std::size_t j = 0; j < q; ++j) colsq[j] = kernels::dot(w.col(j), w.col(j));
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < q; ++i) {
      for (std::size_t j = i + 1; j < q; ++j) {
        const double a = colsq[i];
        const double b = colsq[j];
        if (a == 0.0 || b == 0.0) continue;
        const double c = kernels::dot(w.col(i), w.col(j));
        if (std::abs(c) <= tol * std::sqrt(a * b)) continue;
        rotated = true;
        // Rotation angle zeroing the (i,j) inner product; smaller-root formula
        // keeps |t| <= 1 for stability.
        const double zeta = (b - a) / (2.0 * c);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double cs = 1.0 / std::hypot(1.0, t);
        const double sn = cs * t;
        kernels::rot(w.col(i), w.col(j), cs, sn);
        kernels::rot(v.col(i), v.col(j), cs, sn);
        colsq[i] = kernels::dot(w.col(i), w.col(i));
        colsq[j] = kernels::dot(w.col(j), w.col(j));
      }
    }
    if (!rotated) return;
  }
  raise(errc::convergence_failure, "one-sided Jacobi SVD did not converge");
}

}  // namespace

SvdFactors thin_svd(const Matrix& x, double rank_tol) {
  if (x.rows() == 0 || x.cols() == 0)
    raise(errc::invalid_argument, "thin_svd: empty matrix");
  if (!(rank_tol > 0.0 && rank_tol < 1.0))
    raise(errc::invalid_argument, "thin_svd: rank_tol must lie in (0, 1)");
  if (!x.all_finite()) raise(errc::non_finite, "thin_svd: input has NaN/Inf entries");

  // Work on the orientation with rows >= cols so Jacobi sees the fewest column
  // pairs; factors are swapped back at the end.
  const bool transposed = x.rows() < x.cols();
  Matrix w = transposed ? transpose(x) : x;
  const std::size_t q = w.cols();
  Matrix vacc = Matrix::identity(q);

  one_sided_jacobi(w, vacc);

  Vector sig(q);
  for (std::size_t j = 0; j < q; ++j) sig[j] = kernels::nrm2(w.col(j));
  std::vector<std::size_t> order(q);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sig[a] > sig[b]; });

  const double sigma1 = sig[order[0]];
  if (sigma1 == 0.0) raise(errc::all_zero_matrix, "thin_svd: all singular values are zero");
  std::size_t k = 0;
  while (k < q && sig[order[k]] > rank_tol * sigma1) ++k;

  Matrix left(w.rows(), k);
  Matrix right(q, k);
  Vector sigma(k);
  for (std::size_t jj = 0; jj < k; ++jj) {
    const std::size_t idx = order[jj];
    sigma[jj] = sig[idx];
    auto src = w.col(idx);
    auto dst = left.col(jj);
    const double inv = 1.0 / sig[idx];
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] * inv;
    auto vsrc = vacc.col(idx);
    auto vdst = right.col(jj);
    std::copy(vsrc.begin(), vsrc.end(), vdst.begin());
  }

  SvdFactors f;
  f.sigma = std::move(sigma);
  if (transposed) {
    f.u = std::move(right);
    f.v = std::move(left);
  } else {
    f.u = std::move(left);
    f.v = std::move(right);
  }

  for (std::size_t j = 0; j < f.rank(); ++j) {
    auto uj = f.u.col(j);
    if (uj[argmax_abs(uj)] < 0.0) {
      kernels::scal(-1.0, uj);
      kernels::scal(-1.0, f.v.col(j));
    }
  }
  return f;
}

Vector apply_pinv_left(const SvdFactors& factors, std::span<const double> b) {
  if (b.size() != factors.v.rows())
    raise(errc::dimension_mismatch, "apply_pinv_left: vector length != n");
  Vector out(factors.u.rows(), 0.0);
  for (std::size_t j = 0; j < factors.rank(); ++j) {
    const double coef = kernels::dot(factors.v.col(j), b) / factors.sigma[j];
    kernels::axpy(coef, factors.u.col(j), out);
  }
  return out;
}

}  // namespace mca
