#pragma once

#include "mca/kernels.hpp"

// Per-ISA kernel variants. Each translation unit is compiled with the matching
// target flags; declarations are guarded so only buildable variants are visible.

namespace mca::kernels::detail {

#if defined(__x86_64__) || defined(_M_X64)
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void scal_avx2(double alpha, double* x, std::size_t n);
void rot_avx2(double* x, double* y, double c, double s, std::size_t n);
SecularSums secular_sums_avx2(const double* alpha, const double* w, double beta, std::size_t n);
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
double dot_neon(const double* a, const double* b, std::size_t n);
void axpy_neon(double alpha, const double* x, double* y, std::size_t n);
void scal_neon(double alpha, double* x, std::size_t n);
void rot_neon(double* x, double* y, double c, double s, std::size_t n);
SecularSums secular_sums_neon(const double* alpha, const double* w, double beta, std::size_t n);
#endif

}  // namespace mca::kernels::detail
