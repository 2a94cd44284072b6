#include "mca/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"
#include "mca/errors.hpp"

namespace mca::kernels {

namespace {

// Scalar reference kernels. These define the semantics every SIMD variant is
// equivalence-tested against; keep them as plain loops.

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void rot_scalar(double* x, double* y, double c, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    x[i] = c * xi - s * y[i];
    y[i] = s * xi + c * y[i];
  }
}

SecularSums secular_sums_scalar(const double* alpha, const double* w, double beta,
                                std::size_t n) {
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = alpha[i] - beta;
    const double q = w[i] / d;
    s1 += q;
    s2 += q / d;
  }
  return {s1, s2};
}

constexpr Ops kScalarOps{dot_scalar, axpy_scalar, scal_scalar, rot_scalar, secular_sums_scalar};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Ops kAvx2Ops{detail::dot_avx2, detail::axpy_avx2, detail::scal_avx2, detail::rot_avx2,
                       detail::secular_sums_avx2};
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
constexpr Ops kNeonOps{detail::dot_neon, detail::axpy_neon, detail::scal_neon, detail::rot_neon,
                       detail::secular_sums_neon};
#endif

const Ops* ops_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return &kScalarOps;
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2:
      return &kAvx2Ops;
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
    case Isa::neon:
      return &kNeonOps;
#endif
    default:
      return nullptr;
  }
}

Isa detect_isa() noexcept {
  Isa best = Isa::scalar;
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) best = Isa::avx2;
#elif defined(__aarch64__) || defined(_M_ARM64)
  best = Isa::neon;  // NEON is baseline on aarch64
#endif
  if (const char* env = std::getenv("MCA_KERNEL_ISA")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(env, "avx2") == 0 && isa_available(Isa::avx2)) return Isa::avx2;
    if (std::strcmp(env, "neon") == 0 && isa_available(Isa::neon)) return Isa::neon;
    // "auto" or anything unusable falls through to detection
  }
  return best;
}

struct Dispatch {
  std::atomic<const Ops*> ops;
  std::atomic<Isa> isa;
  Dispatch() {
    const Isa chosen = detect_isa();
    isa.store(chosen, std::memory_order_relaxed);
    ops.store(ops_for(chosen), std::memory_order_relaxed);
  }
};

Dispatch& dispatch() noexcept {
  static Dispatch d;
  return d;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  if (isa == Isa::scalar) return true;
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::avx2) return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
  if (isa == Isa::neon) return true;
#endif
  return false;
}

Isa active_isa() noexcept { return dispatch().isa.load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa))
    raise(errc::invalid_argument,
          std::string("instruction set not available on this host: ") + isa_name(isa));
  dispatch().isa.store(isa, std::memory_order_relaxed);
  dispatch().ops.store(ops_for(isa), std::memory_order_relaxed);
}

void reset_isa() noexcept {
  const Isa chosen = detect_isa();
  dispatch().isa.store(chosen, std::memory_order_relaxed);
  dispatch().ops.store(ops_for(chosen), std::memory_order_relaxed);
}

const Ops& ops() noexcept { return *dispatch().ops.load(std::memory_order_relaxed); }

}  // namespace mca::kernels
