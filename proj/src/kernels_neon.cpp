// NEON variants of the grid kernels (one complex<double> per 128-bit
// register). Baseline on aarch64, so no runtime feature probe is needed.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <complex>
#include <cstddef>

#include "qwp/kernels.hpp"

namespace qwp::kernels::neon {

namespace {

// [ar, ai] * [br, bi] -> [ar*br - ai*bi, ar*bi + ai*br]
inline float64x2_t complex_mul(float64x2_t va, float64x2_t vb) {
  const float64x2_t sign = {-1.0, 1.0};
  float64x2_t t = vmulq_laneq_f64(va, vb, 0);            // [ar*br, ai*br]
  float64x2_t swapped = vextq_f64(va, va, 1);            // [ai, ar]
  float64x2_t u = vmulq_laneq_f64(swapped, vb, 1);       // [ai*bi, ar*bi]
  return vfmaq_f64(t, u, sign);                          // t + u * [-1, 1]
}

}  // namespace

void complex_mul_inplace(std::complex<double>* a,
                         const std::complex<double>* b, std::size_t n) {
  double* ap = reinterpret_cast<double*>(a);
  const double* bp = reinterpret_cast<const double*>(b);
  for (std::size_t j = 0; j < n; ++j) {
    float64x2_t va = vld1q_f64(ap + 2 * j);
    float64x2_t vb = vld1q_f64(bp + 2 * j);
    vst1q_f64(ap + 2 * j, complex_mul(va, vb));
  }
}

void complex_mul_scale_inplace(std::complex<double>* a,
                               const std::complex<double>* b, double scale,
                               std::size_t n) {
  double* ap = reinterpret_cast<double*>(a);
  const double* bp = reinterpret_cast<const double*>(b);
  const float64x2_t vs = vdupq_n_f64(scale);
  for (std::size_t j = 0; j < n; ++j) {
    float64x2_t va = vld1q_f64(ap + 2 * j);
    float64x2_t vb = vld1q_f64(bp + 2 * j);
    vst1q_f64(ap + 2 * j, vmulq_f64(complex_mul(va, vb), vs));
  }
}

double abs2_sum(const std::complex<double>* a, std::size_t n) {
  const double* ap = reinterpret_cast<const double*>(a);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t j = 0; j < n; ++j) {
    float64x2_t va = vld1q_f64(ap + 2 * j);
    acc = vfmaq_f64(acc, va, va);
  }
  return vaddvq_f64(acc);
}

MomentSums weighted_abs2_sums(const std::complex<double>* a, const double* w,
                              std::size_t n) {
  const double* ap = reinterpret_cast<const double*>(a);
  MomentSums out;
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  float64x2_t acc2 = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    float64x2_t va0 = vld1q_f64(ap + 2 * j);
    float64x2_t va1 = vld1q_f64(ap + 2 * j + 2);
    float64x2_t m = vpaddq_f64(vmulq_f64(va0, va0), vmulq_f64(va1, va1));
    float64x2_t wv = vld1q_f64(w + j);
    float64x2_t mw = vmulq_f64(m, wv);
    acc0 = vaddq_f64(acc0, m);
    acc1 = vaddq_f64(acc1, mw);
    acc2 = vfmaq_f64(acc2, mw, wv);
  }
  out.s0 = vaddvq_f64(acc0);
  out.s1 = vaddvq_f64(acc1);
  out.s2 = vaddvq_f64(acc2);
  for (; j < n; ++j) {
    const double m = std::norm(a[j]);
    out.s0 += m;
    out.s1 += m * w[j];
    out.s2 += m * w[j] * w[j];
  }
  return out;
}

double weighted_im_conj_dot(const std::complex<double>* a,
                            const std::complex<double>* b, const double* w,
                            std::size_t n) {
  const double* ap = reinterpret_cast<const double*>(a);
  const double* bp = reinterpret_cast<const double*>(b);
  const float64x2_t sign = {1.0, -1.0};
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    float64x2_t va0 = vld1q_f64(ap + 2 * j);
    float64x2_t vb0 = vld1q_f64(bp + 2 * j);
    float64x2_t va1 = vld1q_f64(ap + 2 * j + 2);
    float64x2_t vb1 = vld1q_f64(bp + 2 * j + 2);
    // [ar*bi, ai*br] with alternating signs, pairwise-added -> Im(conj(a) b)
    float64x2_t p0 = vmulq_f64(vmulq_f64(va0, vextq_f64(vb0, vb0, 1)), sign);
    float64x2_t p1 = vmulq_f64(vmulq_f64(va1, vextq_f64(vb1, vb1, 1)), sign);
    float64x2_t im = vpaddq_f64(p0, p1);  // [Im0, Im1]
    acc = vfmaq_f64(acc, im, vld1q_f64(w + j));
  }
  double s = vaddvq_f64(acc);
  for (; j < n; ++j) {
    s += w[j] * (a[j].real() * b[j].imag() - a[j].imag() * b[j].real());
  }
  return s;
}

}  // namespace qwp::kernels::neon

#endif  // __aarch64__
