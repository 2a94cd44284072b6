#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>

namespace mca::kernels {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;

/// Instruction set the kernel entry points currently dispatch to. Resolved once,
/// on first use: best available unless the MCA_KERNEL_ISA environment variable
/// ("scalar", "avx2", "neon", "auto") narrows the choice.
Isa active_isa() noexcept;

/// Pin dispatch to a specific instruction set (test hook). Throws
/// Error(errc::invalid_argument) if the host does not support it.
/// Not safe to call concurrently with kernel invocations.
void force_isa(Isa isa);

/// Return to automatic selection.
void reset_isa() noexcept;

struct SecularSums {
  double inv_sum;     // sum_j w_j / (alpha_j - beta)
  double inv_sq_sum;  // sum_j w_j / (alpha_j - beta)^2
};

struct Ops {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scal)(double alpha, double* x, std::size_t n);
  // Plane rotation of a column pair: x <- c*x - s*y, y <- s*x + c*y.
  void (*rot)(double* x, double* y, double c, double s, std::size_t n);
  SecularSums (*secular_sums)(const double* alpha, const double* w, double beta, std::size_t n);
};

const Ops& ops() noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return ops().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  ops().axpy(alpha, x.data(), y.data(), x.size());
}

inline void scal(double alpha, std::span<double> x) { ops().scal(alpha, x.data(), x.size()); }

inline double nrm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

inline void rot(std::span<double> x, std::span<double> y, double c, double s) {
  assert(x.size() == y.size());
  ops().rot(x.data(), y.data(), c, s, x.size());
}

inline SecularSums secular_sums(std::span<const double> alpha, std::span<const double> w,
                                double beta) {
  assert(alpha.size() == w.size());
  return ops().secular_sums(alpha.data(), w.data(), beta, alpha.size());
}

}  // namespace mca::kernels
