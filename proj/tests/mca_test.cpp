#include "mca/mca.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "mca/errors.hpp"
#include "mca/kernels.hpp"
#include "testing/fixtures.hpp"
#include "testing/oracles.hpp"

using namespace mca;
namespace mt = mca::testing;
using mt::fixture_x;
using mt::random_matrix;

namespace {

McaModel full_fit(const Matrix& x) {
  FitOptions opt;
  opt.num_components = thin_svd(x).rank() - 1;
  return fit(x, opt);
}

}  // namespace

TEST(Fit, FixtureNumbers) {
  FitOptions opt;
  opt.num_components = 1;
  const McaModel model = fit(fixture_x(), opt);
  ASSERT_EQ(model.components.size(), 1u);
  const McaComponent& c1 = model.components[0];
  EXPECT_NEAR(c1.beta, 1.6, 1e-12);
  EXPECT_NEAR(c1.m[0], 0.35355339059327373, 1e-12);
  EXPECT_NEAR(c1.m[1], -0.7071067811865475, 1e-12);
  EXPECT_NEAR(kernels::dot(c1.m, c1.m), 0.625, 1e-12);
  EXPECT_NEAR(c1.c[0], 1.0 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(c1.c[1], -2.0 / std::sqrt(5.0), 1e-12);
  EXPECT_EQ(model.rank, 2u);
}

TEST(Fit, DualRouteForM) {
  // gamma/sigma expansion vs direct pseudoinverse application
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    const Matrix x = random_matrix(8, 12, seed);
    const McaModel model = full_fit(x);
    const SvdFactors f = thin_svd(x);
    for (const auto& comp : model.components) {
      const Vector via_pinv = apply_pinv_left(f, comp.b);
      for (std::size_t i = 0; i < via_pinv.size(); ++i)
        EXPECT_NEAR(comp.m[i], via_pinv[i], 1e-10);
    }
  }
}

TEST(Fit, RankOneRejected) {
  try {
    fit(Matrix(2, 2, 1.0), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::rank_too_small);
  }
}

TEST(Fit, ComponentCountTooLarge) {
  FitOptions opt;
  opt.num_components = 2;  // fixture rank is 2, so only 1 component exists
  try {
    fit(fixture_x(), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::component_count_too_large);
  }
}

TEST(Fit, ModelInvariantsOnRandomData) {
  const Matrix x = random_matrix(8, 12, 4242);
  const McaModel model = full_fit(x);
  const std::size_t r = model.components.size();
  ASSERT_GE(r, 2u);
  for (std::size_t i = 0; i < r; ++i) {
    const McaComponent& ci = model.components[i];
    // Theorem: beta_i * ||m_i||^2 == 1
    EXPECT_LE(std::abs(ci.beta * kernels::dot(ci.m, ci.m) - 1.0), 1e-8);
    EXPECT_NEAR(kernels::nrm2(ci.c), 1.0, 1e-12);
    // c_i' X == sqrt(beta_i) b_i'
    const Vector proj = matvec_t(x, ci.c);
    const double root_beta = std::sqrt(ci.beta);
    for (std::size_t j = 0; j < proj.size(); ++j)
      EXPECT_NEAR(proj[j], root_beta * ci.b[j], 1e-8);
    // pairwise orthogonality of components
    for (std::size_t j = 0; j < i; ++j)
      EXPECT_LE(std::abs(kernels::dot(ci.c, model.components[j].c)), 1e-10);
  }
}

TEST(Fit, GramIdentityForModularityMatrix) {
  // B == (B X-dagger)(B X-dagger)' with the oracle forming both sides
  for (std::uint64_t seed : {31u, 32u}) {
    const Matrix x = random_matrix(6, 15, seed);
    const Matrix b = mt::explicit_modularity(x);
    const Matrix bx = mt::matmul(b, mt::explicit_pinv(x));
    const Matrix outer = mt::matmul_transposed(bx, bx);
    double bnorm = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) bnorm += b.data()[i] * b.data()[i];
    bnorm = std::sqrt(bnorm);
    EXPECT_LE(mt::max_abs_diff(b, outer), 1e-9 * std::max(1.0, bnorm));
  }
}

TEST(Project, FixtureMatrix) {
  FitOptions opt;
  const McaModel model = fit(fixture_x(), opt);
  const Matrix p = project_onto_component(model, fixture_x(), 1);
  EXPECT_NEAR(p(0, 0), 0.4, 1e-12);
  EXPECT_NEAR(p(0, 1), -0.4, 1e-12);
  EXPECT_NEAR(p(1, 0), -0.8, 1e-12);
  EXPECT_NEAR(p(1, 1), 0.8, 1e-12);
}

TEST(Project, ResidualOrthogonalToComponents) {
  const Matrix x = random_matrix(9, 13, 606);
  const McaModel model = full_fit(x);
  Matrix residual = x;
  for (std::size_t i = 1; i <= model.components.size(); ++i) {
    const Matrix p = project_onto_component(model, x, i);
    for (std::size_t t = 0; t < residual.size(); ++t) residual.data()[t] -= p.data()[t];
  }
  for (const auto& comp : model.components) {
    const Vector leftover = matvec_t(residual, comp.c);
    for (double v : leftover) EXPECT_LE(std::abs(v), 1e-9);
  }
}

TEST(Project, IndexOutOfRange) {
  const McaModel model = fit(fixture_x(), {});
  try {
    project_onto_component(model, fixture_x(), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), errc::index_out_of_range);
  }
}

TEST(Project, RejectsForeignData) {
  const McaModel model = fit(fixture_x(), {});
  Matrix other = fixture_x();
  other(0, 1) = 1.5;
  EXPECT_THROW(project_onto_component(model, other, 1), Error);
}

TEST(Embed, FixtureRow) {
  const McaModel model = fit(fixture_x(), {});
  const Matrix e = embed(model, fixture_x(), 1);
  ASSERT_EQ(e.rows(), 1u);
  EXPECT_NEAR(e(0, 0), 0.8944271909999159, 1e-12);   // sqrt(1.6)/sqrt(2)
  EXPECT_NEAR(e(0, 1), -0.8944271909999159, 1e-12);
}

TEST(Embed, ZeroComponentsGivesEmptyMatrix) {
  const McaModel model = fit(fixture_x(), {});
  const Matrix e = embed(model, fixture_x(), 0);
  EXPECT_EQ(e.rows(), 0u);
  EXPECT_EQ(e.cols(), 2u);
}

TEST(Embed, RowsAreScaledEigenvectors) {
  const Matrix x = random_matrix(7, 11, 17);
  const McaModel model = full_fit(x);
  const Matrix e = embed(model, x, model.components.size());
  for (std::size_t i = 0; i < model.components.size(); ++i) {
    const double root_beta = std::sqrt(model.components[i].beta);
    for (std::size_t j = 0; j < 11; ++j)
      EXPECT_NEAR(e(i, j), root_beta * model.components[i].b[j], 1e-8);
  }
}

TEST(Embed, BlobSignsReproducePartition) {
  const mt::Blobs blobs = mt::two_blobs();
  const McaModel model = fit(blobs.x, {});
  const Matrix e = embed(model, blobs.x, 1);
  Vector row(e.cols());
  for (std::size_t j = 0; j < e.cols(); ++j) row[j] = e(0, j);
  EXPECT_EQ(partition_by_sign(row), partition_by_sign(model.components[0].b));
}

TEST(Deflate, FixtureRankOneRemainder) {
  const McaModel model = fit(fixture_x(), {});
  const Matrix x2 = deflate(fixture_x(), model, 2);
  EXPECT_NEAR(x2(0, 0), 1.6, 1e-12);
  EXPECT_NEAR(x2(0, 1), 0.4, 1e-12);
  EXPECT_NEAR(x2(1, 0), 0.8, 1e-12);
  EXPECT_NEAR(x2(1, 1), 0.2, 1e-12);
  // rank 1: rows proportional
  EXPECT_NEAR(x2(0, 0) * x2(1, 1) - x2(0, 1) * x2(1, 0), 0.0, 1e-12);
}

TEST(Deflate, FirstIndexIsIdentity) {
  const Matrix x = random_matrix(5, 8, 52);
  const McaModel model = full_fit(x);
  EXPECT_EQ(mt::max_abs_diff(deflate(x, model, 1), x), 0.0);
}

TEST(Deflate, BrauerSpectrumShift) {
  // Largest eigenpair of B_2 (built from deflated X_2 with its own degree
  // statistics) equals (beta_2, b_2) of the original B.
  const Matrix x = random_matrix(6, 9, 1234);
  const McaModel model = full_fit(x);
  ASSERT_GE(model.components.size(), 2u);
  const Matrix x2 = deflate(x, model, 2);
  const mt::SymEig eig2 = mt::dense_symmetric_eig(mt::explicit_modularity(x2));
  EXPECT_NEAR(eig2.values[0], model.components[1].beta, 1e-8);
  Vector expect(eig2.vectors.col(0).begin(), eig2.vectors.col(0).end());
  const Vector aligned = mt::aligned_to(model.components[1].b, expect);
  for (std::size_t t = 0; t < expect.size(); ++t)
    EXPECT_NEAR(model.components[1].b[t], aligned[t], 1e-8);
}

TEST(Deflate, IndexOutOfRange) {
  const McaModel model = fit(fixture_x(), {});
  EXPECT_THROW(deflate(fixture_x(), model, 3), Error);
  EXPECT_THROW(deflate(fixture_x(), model, 0), Error);
}

TEST(NormalizeRows, UnitRowNormsAndFitConsistency) {
  const Matrix x = random_matrix(4, 9, 909, 0.1, 2.0);
  const Matrix xn = normalize_rows(x);
  for (std::size_t i = 0; i < 4; ++i) {
    double sq = 0.0;
    for (std::size_t j = 0; j < 9; ++j) sq += xn(i, j) * xn(i, j);
    EXPECT_NEAR(sq, 1.0, 1e-12);
  }
  FitOptions opt;
  opt.normalize_rows = true;
  const McaModel a = fit(x, opt);
  const McaModel b = fit(xn, {});
  EXPECT_NEAR(a.components[0].beta, b.components[0].beta, 1e-12);
  // model operations re-apply the stored normalization to raw data
  const Matrix ea = embed(a, x, 1);
  const Matrix eb = embed(b, xn, 1);
  EXPECT_LE(mt::max_abs_diff(ea, eb), 1e-12);
}

TEST(CheckAssumptions, FixturePasses) {
  const AssumptionReport report = check_assumptions(fixture_x());
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.k, 2u);
  EXPECT_EQ(report.positive_alpha_count, 2u);
  EXPECT_EQ(report.beta_count, 1u);
  EXPECT_TRUE(report.violations.empty());
}

TEST(CheckAssumptions, IdentityHasAlphaTie) {
  const AssumptionReport report = check_assumptions(Matrix::identity(2));
  EXPECT_FALSE(report.passed);
  ASSERT_FALSE(report.violations.empty());
  bool has_tie = false;
  for (const auto& v : report.violations) has_tie |= v.kind == ViolationKind::alpha_tie;
  EXPECT_TRUE(has_tie);
  EXPECT_EQ(report.beta_count, 0u);
}

TEST(CheckAssumptions, RankOneVacuouslyPasses) {
  const AssumptionReport report = check_assumptions(Matrix(2, 2, 1.0));
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.k, 1u);
  EXPECT_EQ(report.beta_count, 0u);
  EXPECT_FALSE(report.advisory.empty());
}

TEST(CheckAssumptions, ZeroMatrixReportsDegenerateAdvisory) {
  const AssumptionAudit audit = audit_assumptions(Matrix(3, 4, 0.0));
  EXPECT_TRUE(audit.degenerate);
  EXPECT_EQ(audit.report.k, 0u);
  EXPECT_FALSE(audit.report.advisory.empty());
}

TEST(CheckAssumptions, CenteredDataIsDegenerate) {
  // rows sum to zero => 2m == 0
  Matrix x(2, 2);
  x(0, 0) = 1.0;
  x(0, 1) = -1.0;
  x(1, 0) = -2.0;
  x(1, 1) = 2.0;
  const AssumptionAudit audit = audit_assumptions(x);
  EXPECT_TRUE(audit.degenerate);
  EXPECT_FALSE(audit.report.passed);  // y components all recorded as zero
}
