#include "specdiff/fft.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace specdiff {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("Fft: size must be positive");
  m_ = is_pow2(n) ? n : next_pow2(2 * n - 1);

  bitrev_.resize(m_);
  std::size_t log2m = 0;
  while ((std::size_t{1} << log2m) < m_) ++log2m;
  for (std::size_t i = 0; i < m_; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < log2m; ++b) r |= ((i >> b) & 1u) << (log2m - 1 - b);
    bitrev_[i] = r;
  }
  twiddle_.resize(m_ / 2);
  for (std::size_t k = 0; k < m_ / 2; ++k) {
    double a = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(m_);
    twiddle_[k] = {std::cos(a), std::sin(a)};
  }

  if (m_ != n_) {
    // chirp c_k = exp(-i*pi*k^2/n); k^2 taken mod 2n keeps the angle exact
    chirp_.resize(n_);
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % two_n;
      double a = -kPi * static_cast<double>(k2) / static_cast<double>(n_);
      chirp_[k] = {std::cos(a), std::sin(a)};
    }
    std::vector<std::complex<double>> b(m_, {0.0, 0.0});
    b[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n_; ++k) {
      b[k] = std::conj(chirp_[k]);
      b[m_ - k] = b[k];
    }
    pow2_transform(b.data(), false);
    chirp_fft_ = std::move(b);
  }
}

void Fft::pow2_transform(std::complex<double>* data, bool inverse) const {
  const std::size_t m = m_;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = bitrev_[i];
    if (j > i) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t step = m / len;
    for (std::size_t start = 0; start < m; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> w = twiddle_[k * step];
        if (inverse) w = std::conj(w);
        std::complex<double> u = data[start + k];
        std::complex<double> v = data[start + k + half] * w;
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }
}

void Fft::bluestein(std::complex<double>* data) const {
  std::vector<std::complex<double>> a(m_, {0.0, 0.0});
  for (std::size_t k = 0; k < n_; ++k) a[k] = data[k] * chirp_[k];
  pow2_transform(a.data(), false);
  for (std::size_t k = 0; k < m_; ++k) a[k] *= chirp_fft_[k];
  pow2_transform(a.data(), true);
  const double scale = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < n_; ++k) data[k] = a[k] * scale * chirp_[k];
}

void Fft::forward(std::complex<double>* data) const {
  if (m_ == n_) {
    pow2_transform(data, false);
  } else {
    bluestein(data);
  }
}

void Fft::inverse(std::complex<double>* data) const {
  if (m_ == n_) {
    pow2_transform(data, true);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t k = 0; k < n_; ++k) data[k] *= scale;
  } else {
    // IDFT(x) = conj(DFT(conj(x))) / n
    for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(data[k]);
    bluestein(data);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(data[k]) * scale;
  }
}

std::vector<std::complex<double>> rfft(const std::vector<double>& x, const Fft& plan) {
  if (x.size() != plan.size()) throw std::invalid_argument("rfft: length does not match plan");
  std::vector<std::complex<double>> buf(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) buf[i] = {x[i], 0.0};
  plan.forward(buf.data());
  buf.resize(onesided_bins(plan.size()));
  return buf;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& bins, const Fft& plan) {
  const std::size_t n = plan.size();
  if (bins.size() != onesided_bins(n)) {
    throw std::invalid_argument("irfft: bin count does not match plan");
  }
  std::vector<std::complex<double>> full(n);
  const std::size_t last = bins.size() - 1;
  full[0] = {bins[0].real(), 0.0};
  for (std::size_t k = 1; k <= last; ++k) full[k] = bins[k];
  if (n % 2 == 0 && n > 1) full[last] = {bins[last].real(), 0.0};  // Nyquist is real
  for (std::size_t k = last + 1; k < n; ++k) full[k] = std::conj(full[n - k]);
  plan.inverse(full.data());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = full[i].real();
  return out;
}

}  // namespace specdiff
