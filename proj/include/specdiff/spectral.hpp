#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "specdiff/wav.hpp"

namespace specdiff {

enum class Window { hann, rect };

Window window_from_string(const std::string& name);
std::string to_string(Window w);

struct StftConfig {
  std::size_t fft_size = 510;
  std::size_t hop_size = 320;
  Window window = Window::hann;

  std::size_t bins() const { return fft_size / 2 + 1; }
  bool operator==(const StftConfig&) const = default;

  // throws ValidationError on bad geometry or a window that cannot be
  // inverted at this hop (numeric COLA check)
  void validate() const;
};

// analysis window of length fft_size (periodic forms, so hann sums cleanly)
std::vector<double> make_window(const StftConfig& cfg);

// smallest squared-window overlap-add value over the fully-covered interior;
// must be bounded away from zero for istft to exist
double cola_floor(const StftConfig& cfg);

enum class SpectrogramDomain : std::uint8_t { raw = 0, companded = 1 };

struct ComplexSpectrogram {
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::vector<std::complex<double>> data;  // row-major frames x bins
  SpectrogramDomain domain = SpectrogramDomain::raw;
  StftConfig config;

  std::complex<double>& at(std::size_t f, std::size_t b) { return data[f * bins + b]; }
  const std::complex<double>& at(std::size_t f, std::size_t b) const { return data[f * bins + b]; }
};

// Centered analysis: the input is reflection-padded by fft_size/2 on both
// ends, windowed frames are transformed with a general-length DFT and the
// one-sided spectrum kept. domain comes out raw.
ComplexSpectrogram stft(const Waveform& w, const StftConfig& cfg);

// Windowed overlap-add synthesis with squared-window-sum normalization.
// Rejects companded input and any needed sample with zero window sum.
Waveform istft(const ComplexSpectrogram& s, const StftConfig& cfg, std::size_t length,
               int sample_rate_hz);

struct CompandingConfig {
  double alpha = 0.5;
  double beta = 0.15;

  void validate() const;
  // magnitude above which companded amplitudes exceed 1: (1/beta)^(1/alpha)
  double unit_magnitude_limit() const;
};

// per-bin x -> beta * |x|^alpha * exp(i*angle(x)); zero maps to zero
ComplexSpectrogram compand(const ComplexSpectrogram& s, const CompandingConfig& c);

// exact inverse: x -> (|x|/beta)^(1/alpha) * exp(i*angle(x))
ComplexSpectrogram expand(const ComplexSpectrogram& s, const CompandingConfig& c);

// Binary spectrogram dump: 16-byte header (magic "SDSP", frames u32, bins
// u32, flags u32 with bit 0 = companded), then row-major interleaved
// real/imag doubles, all little-endian. Geometry is not stored.
void write_spectrogram(const std::filesystem::path& path, const ComplexSpectrogram& s);
ComplexSpectrogram read_spectrogram(const std::filesystem::path& path);

}  // namespace specdiff
