#include "mca/kernels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mca/errors.hpp"
#include "testing/fixtures.hpp"

using namespace mca;
namespace mt = mca::testing;
using kernels::Isa;

namespace {

const std::vector<std::size_t> kSizes{0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 67, 500};

long double dot_long_double(const Vector& a, const Vector& b) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += static_cast<long double>(a[i]) * static_cast<long double>(b[i]);
  return acc;
}

std::vector<Isa> simd_isas() {
  std::vector<Isa> isas;
  for (Isa isa : {Isa::avx2, Isa::neon})
    if (kernels::isa_available(isa)) isas.push_back(isa);
  return isas;
}

struct IsaGuard {
  ~IsaGuard() { kernels::reset_isa(); }
};

}  // namespace

TEST(Kernels, DotMatchesLongDoubleReference) {
  IsaGuard guard;
  kernels::reset_isa();
  const Isa host = kernels::active_isa();
  for (std::size_t n : kSizes) {
    const Vector a = mt::random_vector(n, 100 + n);
    const Vector b = mt::random_vector(n, 200 + n);
    const double expected = static_cast<double>(dot_long_double(a, b));
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i] * b[i]);
    for (Isa isa : {Isa::scalar, host}) {
      kernels::force_isa(isa);
      EXPECT_NEAR(kernels::dot(a, b), expected, 1e-14 * scale) << "n=" << n;
    }
  }
}

TEST(Kernels, SimdDotMatchesScalar) {
  IsaGuard guard;
  for (Isa isa : simd_isas()) {
    for (std::size_t n : kSizes) {
      const Vector a = mt::random_vector(n, 300 + n);
      const Vector b = mt::random_vector(n, 400 + n);
      kernels::force_isa(Isa::scalar);
      const double ref = kernels::dot(a, b);
      kernels::force_isa(isa);
      const double got = kernels::dot(a, b);
      EXPECT_NEAR(got, ref, 1e-13 * (1.0 + std::abs(ref))) << "n=" << n;
    }
  }
}

TEST(Kernels, SimdAxpyMatchesScalar) {
  IsaGuard guard;
  for (Isa isa : simd_isas()) {
    for (std::size_t n : kSizes) {
      const Vector x = mt::random_vector(n, 500 + n);
      const Vector y0 = mt::random_vector(n, 600 + n);
      const double alpha = 0.37;
      Vector ref = y0;
      kernels::force_isa(Isa::scalar);
      kernels::axpy(alpha, x, ref);
      Vector got = y0;
      kernels::force_isa(isa);
      kernels::axpy(alpha, x, got);
      for (std::size_t i = 0; i < n; ++i)
        EXPECT_NEAR(got[i], ref[i], 1e-15 * (1.0 + std::abs(ref[i]))) << "n=" << n << " i=" << i;
    }
  }
}

TEST(Kernels, SimdScalIsExact) {
  IsaGuard guard;
  for (Isa isa : simd_isas()) {
    for (std::size_t n : kSizes) {
      Vector ref = mt::random_vector(n, 700 + n);
      Vector got = ref;
      kernels::force_isa(Isa::scalar);
      kernels::scal(-1.75, ref);
      kernels::force_isa(isa);
      kernels::scal(-1.75, got);
      EXPECT_EQ(got, ref) << "n=" << n;  // one multiply per lane, bitwise identical
    }
  }
}

TEST(Kernels, SimdRotMatchesScalar) {
  IsaGuard guard;
  const double c = std::cos(0.7);
  const double s = std::sin(0.7);
  for (Isa isa : simd_isas()) {
    for (std::size_t n : kSizes) {
      Vector x_ref = mt::random_vector(n, 800 + n);
      Vector y_ref = mt::random_vector(n, 900 + n);
      Vector x_got = x_ref;
      Vector y_got = y_ref;
      kernels::force_isa(Isa::scalar);
      kernels::rot(x_ref, y_ref, c, s);
      kernels::force_isa(isa);
      kernels::rot(x_got, y_got, c, s);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(x_got[i], x_ref[i], 1e-15 * (1.0 + std::abs(x_ref[i])));
        EXPECT_NEAR(y_got[i], y_ref[i], 1e-15 * (1.0 + std::abs(y_ref[i])));
      }
    }
  }
}

TEST(Kernels, RotPreservesNorms) {
  IsaGuard guard;
  const double c = std::cos(1.1);
  const double s = std::sin(1.1);
  Vector x = mt::random_vector(33, 42);
  Vector y = mt::random_vector(33, 43);
  const double before = kernels::dot(x, x) + kernels::dot(y, y);
  kernels::rot(x, y, c, s);
  const double after = kernels::dot(x, x) + kernels::dot(y, y);
  EXPECT_NEAR(after, before, 1e-12 * before);
}

TEST(Kernels, SecularSumsHandValue) {
  IsaGuard guard;
  const Vector alpha{4.0, 1.0};
  const Vector w{16.0 / 17.0, 1.0 / 17.0};
  for (Isa isa : simd_isas()) {
    kernels::force_isa(isa);
    const auto s = kernels::secular_sums(alpha, w, 1.6);
    EXPECT_NEAR(s.inv_sum, 5.0 / 17.0, 1e-15);
    EXPECT_NEAR(1.0 + (-3.4) * s.inv_sum, 0.0, 1e-14);
  }
  kernels::force_isa(Isa::scalar);
  const auto s = kernels::secular_sums(alpha, w, 1.6);
  EXPECT_NEAR(s.inv_sum, 5.0 / 17.0, 1e-15);
}

TEST(Kernels, SimdSecularSumsMatchesScalar) {
  IsaGuard guard;
  for (Isa isa : simd_isas()) {
    for (std::size_t n : kSizes) {
      if (n == 0) continue;
      Vector alpha(n);
      for (std::size_t j = 0; j < n; ++j) alpha[j] = static_cast<double>(n - j) * 1.5;
      const Vector w = mt::random_vector(n, 1000 + n, 0.01, 1.0);
      const double beta = alpha[n - 1] - 0.8;
      kernels::force_isa(Isa::scalar);
      const auto ref = kernels::secular_sums(alpha, w, beta);
      kernels::force_isa(isa);
      const auto got = kernels::secular_sums(alpha, w, beta);
      EXPECT_NEAR(got.inv_sum, ref.inv_sum, 1e-13 * (1.0 + std::abs(ref.inv_sum)));
      EXPECT_NEAR(got.inv_sq_sum, ref.inv_sq_sum, 1e-13 * (1.0 + std::abs(ref.inv_sq_sum)));
    }
  }
}

TEST(Kernels, ForceIsaRejectsUnavailable) {
  IsaGuard guard;
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (kernels::isa_available(isa)) continue;
    EXPECT_THROW(kernels::force_isa(isa), Error);
  }
  EXPECT_NO_THROW(kernels::force_isa(Isa::scalar));
}

TEST(Kernels, HostDispatchPrefersSimdWhenAvailable) {
  IsaGuard guard;
  kernels::reset_isa();
#if defined(__x86_64__)
  if (kernels::isa_available(Isa::avx2)) EXPECT_EQ(kernels::active_isa(), Isa::avx2);
#endif
  EXPECT_TRUE(kernels::isa_available(kernels::active_isa()));
}
