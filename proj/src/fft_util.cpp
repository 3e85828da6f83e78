#include "fft_util.hpp"

#include <fftw3.h>

namespace qwp::detail {

namespace {
fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}
}  // namespace

InplaceFft::InplaceFft(std::complex<double>* data, std::size_t n) {
  // FFTW_ESTIMATE keeps plan creation deterministic and leaves the buffer
  // untouched.
  fwd_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(data), as_fftw(data),
                          FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(data), as_fftw(data),
                          FFTW_BACKWARD, FFTW_ESTIMATE);
}

InplaceFft::~InplaceFft() {
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void InplaceFft::forward() { fftw_execute(static_cast<fftw_plan>(fwd_)); }

void InplaceFft::backward() { fftw_execute(static_cast<fftw_plan>(bwd_)); }

void fft_forward(std::vector<std::complex<double>>& v) {
  InplaceFft plan(v.data(), v.size());
  plan.forward();
}

void fft_backward_normalized(std::vector<std::complex<double>>& v) {
  InplaceFft plan(v.data(), v.size());
  plan.backward();
  const double scale = 1.0 / static_cast<double>(v.size());
  for (auto& z : v) z *= scale;
}

}  // namespace qwp::detail
