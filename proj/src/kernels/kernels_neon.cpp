#include "kernels_impl.hpp"

#if defined(__aarch64__) || defined(_M_ARM64)

#include <arm_neon.h>

namespace mca::kernels::detail {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  if (i + 2 <= n) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    i += 2;
  }
  double sum = vaddvq_f64(acc0) + vaddvq_f64(acc1);
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal_neon(double alpha, double* x, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

void rot_neon(double* x, double* y, double c, double s, std::size_t n) {
  const float64x2_t vc = vdupq_n_f64(c);
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vy = vld1q_f64(y + i);
    vst1q_f64(x + i, vsubq_f64(vmulq_f64(vc, vx), vmulq_f64(vs, vy)));
    vst1q_f64(y + i, vaddq_f64(vmulq_f64(vs, vx), vmulq_f64(vc, vy)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    x[i] = c * xi - s * y[i];
    y[i] = s * xi + c * y[i];
  }
}

SecularSums secular_sums_neon(const double* alpha, const double* w, double beta, std::size_t n) {
  const float64x2_t vb = vdupq_n_f64(beta);
  float64x2_t s1 = vdupq_n_f64(0.0);
  float64x2_t s2 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(alpha + i), vb);
    const float64x2_t q = vdivq_f64(vld1q_f64(w + i), d);
    s1 = vaddq_f64(s1, q);
    s2 = vaddq_f64(s2, vdivq_f64(q, d));
  }
  double sum1 = vaddvq_f64(s1);
  double sum2 = vaddvq_f64(s2);
  for (; i < n; ++i) {
    const double d = alpha[i] - beta;
    const double q = w[i] / d;
    sum1 += q;
    sum2 += q / d;
  }
  return {sum1, sum2};
}

}  // namespace mca::kernels::detail

#endif  // aarch64
