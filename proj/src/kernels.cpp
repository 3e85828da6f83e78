#include "qwp/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace qwp::kernels {

// ---------------------------------------------------------------------------
// Scalar reference kernels. These define the semantics; the vector variants
// must agree with them up to floating-point reassociation.
// ---------------------------------------------------------------------------

namespace scalar {

void complex_mul_inplace(std::complex<double>* a,
                         const std::complex<double>* b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) a[j] *= b[j];
}

void complex_mul_scale_inplace(std::complex<double>* a,
                               const std::complex<double>* b, double scale,
                               std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) a[j] *= b[j] * scale;
}

double abs2_sum(const std::complex<double>* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += std::norm(a[j]);
  return s;
}

MomentSums weighted_abs2_sums(const std::complex<double>* a, const double* w,
                              std::size_t n) {
  MomentSums out;
  for (std::size_t j = 0; j < n; ++j) {
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
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    s += w[j] * (a[j].real() * b[j].imag() - a[j].imag() * b[j].real());
  }
  return s;
}

}  // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
void complex_mul_inplace(std::complex<double>*, const std::complex<double>*,
                         std::size_t);
void complex_mul_scale_inplace(std::complex<double>*,
                               const std::complex<double>*, double,
                               std::size_t);
double abs2_sum(const std::complex<double>*, std::size_t);
MomentSums weighted_abs2_sums(const std::complex<double>*, const double*,
                              std::size_t);
double weighted_im_conj_dot(const std::complex<double>*,
                            const std::complex<double>*, const double*,
                            std::size_t);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void complex_mul_inplace(std::complex<double>*, const std::complex<double>*,
                         std::size_t);
void complex_mul_scale_inplace(std::complex<double>*,
                               const std::complex<double>*, double,
                               std::size_t);
double abs2_sum(const std::complex<double>*, std::size_t);
MomentSums weighted_abs2_sums(const std::complex<double>*, const double*,
                              std::size_t);
double weighted_im_conj_dot(const std::complex<double>*,
                            const std::complex<double>*, const double*,
                            std::size_t);
}  // namespace neon
#endif

// ---------------------------------------------------------------------------
// Runtime dispatch.
// ---------------------------------------------------------------------------

namespace {

Backend detect_backend() {
  if (const char* env = std::getenv("QWP_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
#if defined(__x86_64__)
    if (std::strcmp(env, "avx2") == 0 && backend_available(Backend::Avx2)) {
      return Backend::Avx2;
    }
#endif
#if defined(__aarch64__)
    if (std::strcmp(env, "neon") == 0) return Backend::Neon;
#endif
  }
#if defined(__x86_64__)
  if (backend_available(Backend::Avx2)) return Backend::Avx2;
#endif
#if defined(__aarch64__)
  return Backend::Neon;
#endif
  return Backend::Scalar;
}

Backend& backend_slot() {
  static Backend current = detect_backend();
  return current;
}

}  // namespace

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(__x86_64__)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return backend_slot(); }

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

void force_backend(Backend b) {
  if (!backend_available(b)) return;
  backend_slot() = b;
}

void complex_mul_inplace(std::complex<double>* a,
                         const std::complex<double>* b, std::size_t n) {
  switch (active_backend()) {
#if defined(__x86_64__)
    case Backend::Avx2:
      return avx2::complex_mul_inplace(a, b, n);
#endif
#if defined(__aarch64__)
    case Backend::Neon:
      return neon::complex_mul_inplace(a, b, n);
#endif
    default:
      return scalar::complex_mul_inplace(a, b, n);
  }
}

void complex_mul_scale_inplace(std::complex<double>* a,
                               const std::complex<double>* b, double scale,
                               std::size_t n) {
  switch (active_backend()) {
#if defined(__x86_64__)
    case Backend::Avx2:
      return avx2::complex_mul_scale_inplace(a, b, scale, n);
#endif
#if defined(__aarch64__)
    case Backend::Neon:
      return neon::complex_mul_scale_inplace(a, b, scale, n);
#endif
    default:
      return scalar::complex_mul_scale_inplace(a, b, scale, n);
  }
}

double abs2_sum(const std::complex<double>* a, std::size_t n) {
  switch (active_backend()) {
#if defined(__x86_64__)
    case Backend::Avx2:
      return avx2::abs2_sum(a, n);
#endif
#if defined(__aarch64__)
    case Backend::Neon:
      return neon::abs2_sum(a, n);
#endif
    default:
      return scalar::abs2_sum(a, n);
  }
}

MomentSums weighted_abs2_sums(const std::complex<double>* a, const double* w,
                              std::size_t n) {
  switch (active_backend()) {
#if defined(__x86_64__)
    case Backend::Avx2:
      return avx2::weighted_abs2_sums(a, w, n);
#endif
#if defined(__aarch64__)
    case Backend::Neon:
      return neon::weighted_abs2_sums(a, w, n);
#endif
    default:
      return scalar::weighted_abs2_sums(a, w, n);
  }
}

double weighted_im_conj_dot(const std::complex<double>* a,
                            const std::complex<double>* b, const double* w,
                            std::size_t n) {
  switch (active_backend()) {
#if defined(__x86_64__)
    case Backend::Avx2:
      return avx2::weighted_im_conj_dot(a, b, w, n);
#endif
#if defined(__aarch64__)
    case Backend::Neon:
      return neon::weighted_im_conj_dot(a, b, w, n);
#endif
    default:
      return scalar::weighted_im_conj_dot(a, b, w, n);
  }
}

}  // namespace qwp::kernels
