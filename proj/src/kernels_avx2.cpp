// AVX2 + FMA variants of the grid kernels. This translation unit is the
// only one built with -mavx2 -mfma; dispatch in kernels.cpp guarantees the
// functions run only on CPUs that report both features.

#if defined(__x86_64__)

#include <immintrin.h>

#include <complex>
#include <cstddef>

#include "qwp/kernels.hpp"

namespace qwp::kernels::avx2 {

namespace {

// [w0,w1,w2,w3] -> [w0,w2,w1,w3], the lane order produced by hadd/hsub on
// a pair of 2-complex registers.
inline __m256d interleave_weights(__m256d w) {
  return _mm256_permute4x64_pd(w, _MM_SHUFFLE(3, 1, 2, 0));
}

inline double horizontal_sum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Two complex products per register: re = ar*br - ai*bi, im = ar*bi + ai*br.
inline __m256d complex_mul(__m256d va, __m256d vb) {
  __m256d br = _mm256_movedup_pd(vb);
  __m256d bi = _mm256_permute_pd(vb, 0xF);
  __m256d va_swap = _mm256_permute_pd(va, 0x5);
  __m256d t = _mm256_mul_pd(va_swap, bi);
  return _mm256_fmaddsub_pd(va, br, t);
}

}  // namespace

void complex_mul_inplace(std::complex<double>* a,
                         const std::complex<double>* b, std::size_t n) {
  const double* bp = reinterpret_cast<const double*>(b);
  double* ap = reinterpret_cast<double*>(a);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    __m256d va = _mm256_loadu_pd(ap + 2 * j);
    __m256d vb = _mm256_loadu_pd(bp + 2 * j);
    _mm256_storeu_pd(ap + 2 * j, complex_mul(va, vb));
  }
  for (; j < n; ++j) a[j] *= b[j];
}

void complex_mul_scale_inplace(std::complex<double>* a,
                               const std::complex<double>* b, double scale,
                               std::size_t n) {
  const double* bp = reinterpret_cast<const double*>(b);
  double* ap = reinterpret_cast<double*>(a);
  const __m256d vs = _mm256_set1_pd(scale);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    __m256d va = _mm256_loadu_pd(ap + 2 * j);
    __m256d vb = _mm256_loadu_pd(bp + 2 * j);
    _mm256_storeu_pd(ap + 2 * j, _mm256_mul_pd(complex_mul(va, vb), vs));
  }
  for (; j < n; ++j) a[j] *= b[j] * scale;
}

double abs2_sum(const std::complex<double>* a, std::size_t n) {
  const double* ap = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    __m256d va = _mm256_loadu_pd(ap + 2 * j);
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  double s = horizontal_sum(acc);
  for (; j < n; ++j) s += std::norm(a[j]);
  return s;
}

MomentSums weighted_abs2_sums(const std::complex<double>* a, const double* w,
                              std::size_t n) {
  const double* ap = reinterpret_cast<const double*>(a);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d va0 = _mm256_loadu_pd(ap + 2 * j);
    __m256d va1 = _mm256_loadu_pd(ap + 2 * j + 4);
    __m256d m0 = _mm256_mul_pd(va0, va0);
    __m256d m1 = _mm256_mul_pd(va1, va1);
    // [|z0|^2, |z2|^2, |z1|^2, |z3|^2]
    __m256d h = _mm256_hadd_pd(m0, m1);
    __m256d wp = interleave_weights(_mm256_loadu_pd(w + j));
    __m256d hw = _mm256_mul_pd(h, wp);
    acc0 = _mm256_add_pd(acc0, h);
    acc1 = _mm256_add_pd(acc1, hw);
    acc2 = _mm256_fmadd_pd(hw, wp, acc2);
  }
  MomentSums out{horizontal_sum(acc0), horizontal_sum(acc1),
                 horizontal_sum(acc2)};
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
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d va0 = _mm256_loadu_pd(ap + 2 * j);
    __m256d vb0 = _mm256_loadu_pd(bp + 2 * j);
    __m256d va1 = _mm256_loadu_pd(ap + 2 * j + 4);
    __m256d vb1 = _mm256_loadu_pd(bp + 2 * j + 4);
    // [ar*bi, ai*br, ...] per complex pair
    __m256d p0 = _mm256_mul_pd(va0, _mm256_permute_pd(vb0, 0x5));
    __m256d p1 = _mm256_mul_pd(va1, _mm256_permute_pd(vb1, 0x5));
    // [Im0, Im2, Im1, Im3]
    __m256d d = _mm256_hsub_pd(p0, p1);
    __m256d wp = interleave_weights(_mm256_loadu_pd(w + j));
    acc = _mm256_fmadd_pd(d, wp, acc);
  }
  double s = horizontal_sum(acc);
  for (; j < n; ++j) {
    s += w[j] * (a[j].real() * b[j].imag() - a[j].imag() * b[j].real());
  }
  return s;
}

}  // namespace qwp::kernels::avx2

#endif  // __x86_64__
