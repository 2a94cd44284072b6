#include "mca/mca.hpp"

#include <algorithm>
#include <cmath>

#include "mca/dpr1.hpp"
#include "mca/errors.hpp"
#include "mca/kernels.hpp"

namespace mca {

namespace {

std::vector<Violation> collect_violations(const Vector& alpha, const Vector& y,
                                          const Vector& beta, double sep_scale, double y_tol) {
  std::vector<Violation> out;
  for (std::size_t j = 0; j + 1 < alpha.size(); ++j) {
    const double gap = alpha[j] - alpha[j + 1];
    if (gap <= sep_scale) out.push_back({j + 1, ViolationKind::alpha_tie, gap});
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double mag = std::abs(y[j]);
    if (mag <= y_tol) out.push_back({j + 1, ViolationKind::y_component_zero, mag});
  }
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const double g1 = std::abs(beta[i] - alpha[i]);
    if (g1 <= sep_scale) out.push_back({i + 1, ViolationKind::beta_equals_alpha_i, g1});
    const double g2 = std::abs(beta[i] - alpha[i + 1]);
    if (g2 <= sep_scale) out.push_back({i + 1, ViolationKind::beta_equals_alpha_next, g2});
  }
  return out;
}

void merge_violations(std::vector<Violation>& dst, const std::vector<Violation>& extra) {
  for (const auto& v : extra) {
    const bool seen = std::any_of(dst.begin(), dst.end(), [&](const Violation& u) {
      return u.index == v.index && u.kind == v.kind;
    });
    if (!seen) dst.push_back(v);
  }
}

Vector dpr1_y(const SvdFactors& factors, const Vector& d, double* znorm_out) {
  const std::size_t k = factors.rank();
  Vector z(k);
  for (std::size_t j = 0; j < k; ++j) z[j] = kernels::dot(factors.v.col(j), d);
  const double znorm = kernels::nrm2(z);
  if (znorm_out) *znorm_out = znorm;
  if (znorm > 0.0) kernels::scal(1.0 / znorm, z);
  return z;  // zero vector when znorm == 0
}

const McaComponent& component_at(const McaModel& model, std::size_t i) {
  if (i < 1 || i > model.components.size())
    raise(errc::index_out_of_range, "component index " + std::to_string(i) + " out of range");
  return model.components[i - 1];
}

Matrix preprocessed(const McaModel& model, const Matrix& x) {
  return model.rows_normalized ? normalize_rows(x) : x;
}

void check_data_shape(const McaModel& model, const Matrix& x) {
  if (model.components.empty()) return;
  if (x.rows() != model.components[0].c.size() || x.cols() != model.components[0].b.size())
    raise(errc::dimension_mismatch, "data shape does not match the fitted model");
}

}  // namespace

const char* violation_kind_name(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::beta_equals_alpha_i: return "beta_equals_alpha_i";
    case ViolationKind::beta_equals_alpha_next: return "beta_equals_alpha_next";
    case ViolationKind::alpha_tie: return "alpha_tie";
    case ViolationKind::y_component_zero: return "y_component_zero";
  }
  return "unknown";
}

Matrix normalize_rows(const Matrix& x) {
  Matrix out = x;
  const std::size_t p = x.rows();
  const std::size_t n = x.cols();
  Vector sq(p, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < p; ++i) sq[i] += x(i, j) * x(i, j);
  for (std::size_t i = 0; i < p; ++i) {
    if (sq[i] == 0.0) continue;
    const double inv = 1.0 / std::sqrt(sq[i]);
    for (std::size_t j = 0; j < n; ++j) out(i, j) *= inv;
  }
  return out;
}

McaModel fit(const Matrix& x, const FitOptions& options) {
  if (options.num_components < 1) raise(errc::invalid_argument, "fit: need num_components >= 1");
  if (!(options.rank_tol > 0.0 && options.rank_tol < 1.0))
    raise(errc::invalid_argument, "fit: rank_tol must lie in (0, 1)");
  if (!(options.sep_tol > 0.0)) raise(errc::invalid_argument, "fit: sep_tol must be positive");

  const Matrix xw = options.normalize_rows ? normalize_rows(x) : x;
  const SvdFactors factors = thin_svd(xw, options.rank_tol);
  const ModularityStats stats = degree_stats(xw);
  const std::size_t k = factors.rank();
  if (k < 2) raise(errc::rank_too_small, "fit: data has rank < 2, no components exist");
  const std::size_t r = options.num_components;
  if (r > k - 1)
    raise(errc::component_count_too_large,
          "fit: requested " + std::to_string(r) + " components but rank allows only " +
              std::to_string(k - 1));

  // All k-1 eigenpairs are solved so the full Lemma-style assumption audit can
  // gate the fit, not just the r requested roots.
  const ModularityEigenpairs pairs = leading_eigenpairs(factors, stats, k - 1);

  Vector alpha(k);
  for (std::size_t j = 0; j < k; ++j) alpha[j] = factors.sigma[j] * factors.sigma[j];
  const Vector y = dpr1_y(factors, stats.d, nullptr);
  const auto violations =
      collect_violations(alpha, y, pairs.beta, options.sep_tol * alpha[0], kYComponentTol);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    raise(errc::separation_violated,
          "fit: assumption audit found " + std::to_string(violations.size()) +
              " violation(s); first: " + violation_kind_name(v.kind) + " at index " +
              std::to_string(v.index));
  }

  McaModel model;
  model.stats = stats;
  model.rank = k;
  model.sigma = factors.sigma;
  model.rows_normalized = options.normalize_rows;
  model.components.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    McaComponent comp;
    comp.index = i + 1;
    comp.beta = pairs.beta[i];
    auto bi = pairs.b.col(i);
    comp.b.assign(bi.begin(), bi.end());
    auto gi = pairs.gamma.col(i);
    comp.gamma.assign(gi.begin(), gi.end());
    comp.m.assign(xw.rows(), 0.0);
    for (std::size_t j = 0; j < k; ++j)
      kernels::axpy(comp.gamma[j] / factors.sigma[j], factors.u.col(j), comp.m);
    comp.c = comp.m;
    kernels::scal(1.0 / kernels::nrm2(comp.c), comp.c);
    model.components.push_back(std::move(comp));
  }
  return model;
}

Matrix project_onto_component(const McaModel& model, const Matrix& x, std::size_t i) {
  const McaComponent& comp = component_at(model, i);
  check_data_shape(model, x);
  const Matrix xp = preprocessed(model, x);
  const Vector w = matvec_t(xp, comp.c);  // c' X
  const std::size_t p = xp.rows();
  const std::size_t n = xp.cols();
  Matrix out(p, n);
  for (std::size_t j = 0; j < n; ++j) kernels::axpy(w[j], comp.c, out.col(j));

  // Projection identity c c'X == sqrt(beta) c b'; a violation means x is not
  // the matrix this model was fitted on.
  const double root_beta = std::sqrt(comp.beta);
  const double tol = 1e-8 * std::max(1.0, root_beta);
  for (std::size_t j = 0; j < n; ++j) {
    const double expected_w = root_beta * comp.b[j];
    if (std::abs(w[j] - expected_w) > tol)
      raise(errc::invalid_argument,
            "project_onto_component: projection identity violated; data does not match model");
  }
  return out;
}

Matrix embed(const McaModel& model, const Matrix& x, std::size_t r) {
  if (r > model.components.size())
    raise(errc::index_out_of_range, "embed: r exceeds fitted component count");
  check_data_shape(model, x);
  const Matrix xp = preprocessed(model, x);
  Matrix out(r, xp.cols());
  for (std::size_t i = 0; i < r; ++i) {
    const Vector w = matvec_t(xp, model.components[i].c);
    for (std::size_t j = 0; j < xp.cols(); ++j) out(i, j) = w[j];
  }
  return out;
}

Matrix deflate(const Matrix& x, const McaModel& model, std::size_t i) {
  if (i < 1 || i > model.components.size() + 1)
    raise(errc::index_out_of_range, "deflate: need 1 <= i <= r+1");
  check_data_shape(model, x);
  Matrix out = preprocessed(model, x);
  for (std::size_t j = 0; j + 1 < i; ++j) {
    const Vector w = matvec_t(out, model.components[j].c);
    for (std::size_t t = 0; t < out.cols(); ++t)
      kernels::axpy(-w[t], model.components[j].c, out.col(t));
  }
  return out;
}

AssumptionAudit audit_assumptions(const Matrix& x, double rank_tol, double sep_tol) {
  if (!(sep_tol > 0.0)) raise(errc::invalid_argument, "audit: sep_tol must be positive");
  AssumptionAudit audit;
  audit.p = x.rows();
  audit.n = x.cols();

  SvdFactors factors;
  try {
    factors = thin_svd(x, rank_tol);
  } catch (const Error& e) {
    if (e.code() != errc::all_zero_matrix) throw;
    audit.degenerate = true;
    audit.report.advisory = "zero data matrix: similarity graph is empty";
    return audit;
  }
  const std::size_t k = factors.rank();
  audit.alpha.resize(k);
  for (std::size_t j = 0; j < k; ++j) audit.alpha[j] = factors.sigma[j] * factors.sigma[j];
  audit.report.k = k;
  audit.report.positive_alpha_count = k;

  // Degree statistics, without degree_stats' throw: degeneracy is reported.
  Vector row_sums(x.rows(), 0.0);
  for (std::size_t j = 0; j < x.cols(); ++j) kernels::axpy(1.0, x.col(j), row_sums);
  const Vector d = matvec_t(x, row_sums);
  double two_m = 0.0;
  double min_degree = d.empty() ? 0.0 : d[0];
  for (double v : d) {
    two_m += v;
    min_degree = std::min(min_degree, v);
  }
  audit.min_degree = min_degree;
  audit.two_m = two_m;
  const double fro = x.frobenius_norm();
  audit.degenerate = two_m <= 1e-12 * fro * fro;

  double znorm = 0.0;
  Vector y = dpr1_y(factors, d, &znorm);
  if (audit.degenerate || znorm == 0.0) {
    y.assign(k, 0.0);
    if (audit.report.advisory.empty())
      audit.report.advisory = "degenerate similarity mass (2m ~ 0): modularity matrix undefined";
  }

  const double sep_scale = sep_tol * audit.alpha[0];
  audit.report.violations = collect_violations(audit.alpha, y, {}, sep_scale, kYComponentTol);

  if (k >= 2 && !audit.degenerate && znorm > 0.0) {
    Dpr1Problem pb;
    pb.alpha = audit.alpha;
    pb.y = y;
    pb.rho = -(znorm * znorm) / two_m;
    try {
      const Dpr1Spectrum spectrum = solve_dpr1(pb, k - 1);
      audit.beta = spectrum.beta;
      merge_violations(audit.report.violations,
                       collect_violations(audit.alpha, {}, audit.beta, sep_scale, 0.0));
    } catch (const Error& e) {
      if (e.code() != errc::separation_violated && e.code() != errc::convergence_failure) throw;
      // Solver refused at its own (tighter) tolerances; record those causes.
      merge_violations(audit.report.violations,
                       collect_violations(audit.alpha, y, {},
                                          kAlphaSeparationTol * std::abs(audit.alpha[0]),
                                          kYComponentTol));
    }
  }
  audit.report.beta_count = audit.beta.size();

  if (k == 1 && audit.report.advisory.empty())
    audit.report.advisory = "rank-1 data: no modularity components exist";
  audit.report.passed = audit.report.violations.empty();
  return audit;
}

AssumptionReport check_assumptions(const Matrix& x, double rank_tol, double sep_tol) {
  return audit_assumptions(x, rank_tol, sep_tol).report;
}

}  // namespace mca
