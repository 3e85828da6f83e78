#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qwp::detail {

/// RAII pair of in-place 1-D FFTW plans bound to one buffer. Transforms
/// are unnormalized; the backward pass needs a 1/n scale from the caller.
class InplaceFft {
 public:
  InplaceFft(std::complex<double>* data, std::size_t n);
  ~InplaceFft();
  InplaceFft(const InplaceFft&) = delete;
  InplaceFft& operator=(const InplaceFft&) = delete;

  void forward();
  void backward();

 private:
  void* fwd_;
  void* bwd_;
};

/// One-shot forward transform (unnormalized).
void fft_forward(std::vector<std::complex<double>>& v);

/// One-shot backward transform, scaled by 1/n.
void fft_backward_normalized(std::vector<std::complex<double>>& v);

}  // namespace qwp::detail
