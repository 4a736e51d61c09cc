#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace specdiff {

// Complex DFT plan for a fixed length. Power-of-two lengths use an in-place
// radix-2 transform; any other length is reduced to one via Bluestein's
// chirp-z algorithm, so arbitrary sizes (510, 126, ...) are supported.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(std::complex<double>* data) const;
  // inverse DFT, scaled by 1/n
  void inverse(std::complex<double>* data) const;

 private:
  void pow2_transform(std::complex<double>* data, bool inverse) const;
  void bluestein(std::complex<double>* data) const;

  std::size_t n_ = 0;
  std::size_t m_ = 0;  // power-of-two working size (m_ == n_ when n_ is pow2)
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<double>> twiddle_;    // exp(-i*2*pi*k/m), k < m/2
  std::vector<std::complex<double>> chirp_;      // exp(-i*pi*k^2/n), k < n
  std::vector<std::complex<double>> chirp_fft_;  // FFT_m of the padded conjugate chirp
};

// one-sided bin count: fft_size/2 + 1 (integer division, odd sizes included)
inline std::size_t onesided_bins(std::size_t fft_size) { return fft_size / 2 + 1; }

// real-input DFT, one-sided output (plan.size() == x.size())
std::vector<std::complex<double>> rfft(const std::vector<double>& x, const Fft& plan);

// inverse of rfft; reconstructs plan.size() real samples from one-sided bins
std::vector<double> irfft(const std::vector<std::complex<double>>& bins, const Fft& plan);

}  // namespace specdiff
