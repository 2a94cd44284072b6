#include "mca/dpr1.hpp"

#include <cmath>
#include <string>

#include "mca/errors.hpp"
#include "mca/kernels.hpp"

namespace mca {

namespace {

constexpr int kMaxRootIterations = 200;

void check_shape(const Dpr1Problem& pb) {
  if (pb.alpha.empty()) raise(errc::invalid_argument, "dpr1: empty diagonal");
  if (pb.y.size() != pb.alpha.size())
    raise(errc::dimension_mismatch, "dpr1: alpha and y lengths differ");
  if (!all_finite(pb.alpha) || !all_finite(pb.y) || !std::isfinite(pb.rho))
    raise(errc::non_finite, "dpr1: non-finite problem data");
}

void check_problem(const Dpr1Problem& pb) {
  check_shape(pb);
  if (!(pb.rho < 0.0)) raise(errc::invalid_argument, "dpr1: rho must be negative");
  const double ynorm = kernels::nrm2(pb.y);
  if (std::abs(ynorm - 1.0) > 1e-12)
    raise(errc::invalid_argument, "dpr1: y must have unit 2-norm");
  const double sep = kAlphaSeparationTol * std::abs(pb.alpha[0]);
  for (std::size_t j = 0; j + 1 < pb.alpha.size(); ++j) {
    if (!(pb.alpha[j] - pb.alpha[j + 1] > sep))
      raise(errc::separation_violated,
            "dpr1: alpha[" + std::to_string(j) + "] and alpha[" + std::to_string(j + 1) +
                "] are not strictly separated");
  }
  for (std::size_t j = 0; j < pb.y.size(); ++j) {
    if (std::abs(pb.y[j]) <= kYComponentTol)
      raise(errc::separation_violated,
            "dpr1: y[" + std::to_string(j) + "] is numerically zero; strict interlacing fails");
  }
}

// One root inside the open bracket (lo, hi) = (alpha_{i+1}, alpha_i). The
// secular function decreases from +inf at lo to -inf at hi, so the sign at the
// midpoint always shrinks the bracket; Newton steps are taken when they stay
// strictly inside, with a forced bisection every other iteration so the bracket
// width provably contracts.
double find_root(std::span<const double> alpha, std::span<const double> w, double rho, double lo,
                 double hi) {
  const double width_tol = 1e-14 * std::max(1.0, std::abs(hi));
  const double lo0 = lo;
  const double hi0 = hi;
  double beta = 0.5 * (lo + hi);
  bool converged = false;
  for (int iter = 0; iter < kMaxRootIterations; ++iter) {
    const auto s = kernels::secular_sums(alpha, w, beta);
    const double f = 1.0 + rho * s.inv_sum;
    const double fp = rho * s.inv_sq_sum;
    if (f == 0.0) {
      converged = true;
      break;
    }
    if (f > 0.0)
      lo = beta;
    else
      hi = beta;
    if (hi - lo <= width_tol) {
      beta = 0.5 * (lo + hi);
      converged = true;
      break;
    }
    double next = 0.5 * (lo + hi);
    if (iter % 2 == 0 && std::isfinite(f) && std::isfinite(fp) && fp < 0.0) {
      const double newton = beta - f / fp;
      if (newton > lo && newton < hi) next = newton;
    }
    beta = next;
  }
  if (!converged) raise(errc::convergence_failure, "dpr1: secular root finder hit iteration cap");

  // Newton polish; stays within the original open bracket.
  for (int polish = 0; polish < 2; ++polish) {
    const auto s = kernels::secular_sums(alpha, w, beta);
    const double f = 1.0 + rho * s.inv_sum;
    const double fp = rho * s.inv_sq_sum;
    if (!(std::isfinite(f) && std::isfinite(fp)) || fp == 0.0) break;
    const double next = beta - f / fp;
    if (next > lo0 && next < hi0)
      beta = next;
    else
      break;
  }
  return beta;
}

}  // namespace

double secular_value(const Dpr1Problem& problem, double beta) {
  check_shape(problem);
  for (double a : problem.alpha)
    if (std::abs(a - beta) < 1e-300)
      raise(errc::pole_evaluation, "secular_value: beta coincides with a diagonal entry");
  Vector w(problem.y.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = problem.y[j] * problem.y[j];
  const auto s = kernels::secular_sums(problem.alpha, w, beta);
  return 1.0 + problem.rho * s.inv_sum;
}

Dpr1Spectrum solve_dpr1(const Dpr1Problem& problem, std::size_t num_roots) {
  check_problem(problem);
  const std::size_t k = problem.alpha.size();
  if (num_roots + 1 > k)
    raise(errc::invalid_argument, "solve_dpr1: num_roots must be <= k-1");

  Vector w(k);
  for (std::size_t j = 0; j < k; ++j) w[j] = problem.y[j] * problem.y[j];

  Dpr1Spectrum out;
  out.beta.resize(num_roots);
  out.vectors = Matrix(k, num_roots);
  for (std::size_t i = 0; i < num_roots; ++i) {
    const double beta =
        find_root(problem.alpha, w, problem.rho, problem.alpha[i + 1], problem.alpha[i]);
    out.beta[i] = beta;
    auto p = out.vectors.col(i);
    for (std::size_t j = 0; j < k; ++j) p[j] = problem.y[j] / (problem.alpha[j] - beta);
    kernels::scal(1.0 / kernels::nrm2(p), p);
    std::size_t imax = 0;
    double amax = -1.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double a = std::abs(p[j]);
      if (a > amax) {
        amax = a;
        imax = j;
      }
    }
    if (p[imax] < 0.0) kernels::scal(-1.0, p);
  }
  return out;
}

}  // namespace mca
