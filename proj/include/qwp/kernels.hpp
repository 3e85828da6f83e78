#pragma once

#include <complex>
#include <cstddef>

namespace qwp::kernels {

/// Reductions of |a_j|^2 against powers of a weight array:
/// s0 = sum |a_j|^2, s1 = sum |a_j|^2 w_j, s2 = sum |a_j|^2 w_j^2.
struct MomentSums {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
};

enum class Backend { Scalar, Avx2, Neon };

/// Backend selected at startup from CPU features; QWP_SIMD=scalar|avx2|neon
/// overrides. force_backend() narrows it further (tests use this to check
/// scalar/vector equivalence).
Backend active_backend();
const char* backend_name(Backend b);
bool backend_available(Backend b);
void force_backend(Backend b);

/// a_j *= b_j (elementwise complex product).
void complex_mul_inplace(std::complex<double>* a,
                         const std::complex<double>* b, std::size_t n);

/// a_j *= b_j * scale. Folds an FFT normalization into a phase pass.
void complex_mul_scale_inplace(std::complex<double>* a,
                               const std::complex<double>* b, double scale,
                               std::size_t n);

/// sum |a_j|^2.
double abs2_sum(const std::complex<double>* a, std::size_t n);

/// Weighted |a|^2 reductions against w and w^2 in one pass.
MomentSums weighted_abs2_sums(const std::complex<double>* a, const double* w,
                              std::size_t n);

/// sum w_j * Im(conj(a_j) b_j). The mixed-moment reduction.
double weighted_im_conj_dot(const std::complex<double>* a,
                            const std::complex<double>* b, const double* w,
                            std::size_t n);

}  // namespace qwp::kernels
