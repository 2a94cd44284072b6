#pragma once

#include <string>

#include "mca/matrix.hpp"
#include "mca/modularity.hpp"
#include "mca/svd.hpp"

namespace mca {

/// One fitted modularity component. b is the unit eigenvector of B for beta,
/// gamma its expansion over right singular vectors, m = (b' X-dagger)', and
/// c = m / ||m|| the component direction in attribute space. index is 1-based.
struct McaComponent {
  std::size_t index = 0;
  double beta = 0.0;
  Vector b;
  Vector gamma;
  Vector m;
  Vector c;
};

struct McaModel {
  std::vector<McaComponent> components;
  ModularityStats stats;
  std::size_t rank = 0;
  Vector sigma;
  bool rows_normalized = false;
};

struct FitOptions {
  std::size_t num_components = 1;
  double rank_tol = 1e-10;
  double sep_tol = 1e-8;
  bool normalize_rows = false;
};

enum class ViolationKind {
  beta_equals_alpha_i,
  beta_equals_alpha_next,
  alpha_tie,
  y_component_zero,
};

const char* violation_kind_name(ViolationKind kind) noexcept;

struct Violation {
  std::size_t index = 0;  // 1-based position of the offending alpha/beta/y entry
  ViolationKind kind{};
  double gap = 0.0;
};

struct AssumptionReport {
  std::size_t k = 0;
  std::size_t positive_alpha_count = 0;
  std::size_t beta_count = 0;
  std::vector<Violation> violations;
  bool passed = true;
  std::string advisory;  // non-fatal notes (rank-1 data, degenerate mass, ...)
};

/// Everything the assumption audit computed, for callers that also want the
/// spectra (the CLI report). `report` alone satisfies check_assumptions.
struct AssumptionAudit {
  AssumptionReport report;
  Vector alpha;
  Vector beta;
  std::size_t p = 0;
  std::size_t n = 0;
  double two_m = 0.0;
  double min_degree = 0.0;
  bool degenerate = false;
};

/// Scale each row of x to unit 2-norm; all-zero rows are left unchanged.
Matrix normalize_rows(const Matrix& x);

/// Fit num_components modularity components. Runs thin_svd, degree_stats and
/// leading_eigenpairs, audits the strict-interlacing assumptions at sep_tol
/// and refuses (Error(errc::separation_violated)) on any violation rather than
/// perturbing the data. m_i is assembled as sum_j (gamma_ij / sigma_j) u_j.
McaModel fit(const Matrix& x, const FitOptions& options = {});

/// Rank-one projection of the data onto component i (1-based): c_i (c_i' X).
/// Verifies the projection identity c_i c_i' X == sqrt(beta_i) c_i b_i' and
/// throws Error(errc::invalid_argument) if x is not the matrix the model was
/// fitted on.
Matrix project_onto_component(const McaModel& model, const Matrix& x, std::size_t i);

/// r-by-n embedding; row i is c_i' X (= sqrt(beta_i) b_i' up to sign).
Matrix embed(const McaModel& model, const Matrix& x, std::size_t r);

/// Deflated data matrix X_i = X - sum_{j<i} c_j c_j' X, 1 <= i <= r+1.
/// i == 1 returns x unchanged.
Matrix deflate(const Matrix& x, const McaModel& model, std::size_t i);

AssumptionAudit audit_assumptions(const Matrix& x, double rank_tol = 1e-10,
                                  double sep_tol = 1e-8);

/// The Lemma-style audit: counts positive alpha, computes the top k-1 beta when
/// possible, and records every alpha tie, beta-alpha collision and zero y
/// component at tolerance sep_tol (relative to alpha_1). Always returns a
/// report; solver failures surface as violations, not exceptions.
AssumptionReport check_assumptions(const Matrix& x, double rank_tol = 1e-10,
                                   double sep_tol = 1e-8);

}  // namespace mca
