#include "specdiff/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "specdiff/errors.hpp"
#include "specdiff/fft.hpp"

namespace specdiff {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kColaEps = 1e-10;

// mirror index into [0, len) without repeating the edge sample
std::size_t reflect_index(std::ptrdiff_t i, std::size_t len) {
  if (len == 1) return 0;
  const std::ptrdiff_t period = 2 * (static_cast<std::ptrdiff_t>(len) - 1);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  if (m >= static_cast<std::ptrdiff_t>(len)) m = period - m;
  return static_cast<std::size_t>(m);
}

std::size_t frame_count(std::size_t padded_len, const StftConfig& cfg) {
  if (padded_len <= cfg.fft_size) return 1;
  return (padded_len - cfg.fft_size + cfg.hop_size - 1) / cfg.hop_size + 1;
}

}  // namespace

Window window_from_string(const std::string& name) {
  if (name == "hann") return Window::hann;
  if (name == "rect") return Window::rect;
  throw ValidationError("stft: unknown window '" + name + "'");
}

std::string to_string(Window w) { return w == Window::hann ? "hann" : "rect"; }

std::vector<double> make_window(const StftConfig& cfg) {
  std::vector<double> win(cfg.fft_size, 1.0);
  if (cfg.window == Window::hann) {
    for (std::size_t i = 0; i < cfg.fft_size; ++i) {
      win[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) /
                                     static_cast<double>(cfg.fft_size)));
    }
  }
  return win;
}

double cola_floor(const StftConfig& cfg) {
  // accumulate squared windows over enough frames to cover a full period,
  // then take the minimum over the fully-covered interior
  const std::size_t n = cfg.fft_size, hop = cfg.hop_size;
  const std::size_t nframes = 2 * (n / hop) + 8;
  const std::size_t len = (nframes - 1) * hop + n;
  std::vector<double> win = make_window(cfg);
  std::vector<double> acc(len, 0.0);
  for (std::size_t f = 0; f < nframes; ++f) {
    for (std::size_t i = 0; i < n; ++i) acc[f * hop + i] += win[i] * win[i];
  }
  double lo = acc[n];
  for (std::size_t i = n; i + n < len; ++i) lo = std::min(lo, acc[i]);
  return lo;
}

void StftConfig::validate() const {
  if (fft_size == 0) throw ValidationError("stft: fft_size must be positive");
  if (hop_size == 0) throw ValidationError("stft: hop_size must be positive");
  if (hop_size > fft_size) throw ValidationError("stft: hop_size must not exceed fft_size");
  if (cola_floor(*this) <= kColaEps) {
    throw ValidationError("stft: window/hop combination is not invertible (COLA check failed)");
  }
}

ComplexSpectrogram stft(const Waveform& w, const StftConfig& cfg) {
  cfg.validate();
  if (w.samples.empty()) throw ValidationError("stft: empty waveform");

  const std::size_t n = cfg.fft_size;
  const std::size_t pad = n / 2;
  const std::size_t len = w.samples.size();
  const std::size_t padded_len = len + 2 * pad;
  const std::size_t frames = frame_count(padded_len, cfg);
  const std::size_t span = (frames - 1) * cfg.hop_size + n;

  std::vector<double> padded(span, 0.0);
  for (std::size_t i = 0; i < padded_len; ++i) {
    padded[i] = w.samples[reflect_index(static_cast<std::ptrdiff_t>(i) -
                                            static_cast<std::ptrdiff_t>(pad),
                                        len)];
  }

  const std::vector<double> win = make_window(cfg);
  const Fft plan(n);
  ComplexSpectrogram out;
  out.frames = frames;
  out.bins = cfg.bins();
  out.data.resize(frames * out.bins);
  out.domain = SpectrogramDomain::raw;
  out.config = cfg;

  std::vector<std::complex<double>> buf(n);
  for (std::size_t f = 0; f < frames; ++f) {
    const double* src = padded.data() + f * cfg.hop_size;
    for (std::size_t i = 0; i < n; ++i) buf[i] = {src[i] * win[i], 0.0};
    plan.forward(buf.data());
    std::copy(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(out.bins),
              out.data.begin() + static_cast<std::ptrdiff_t>(f * out.bins));
  }
  return out;
}

Waveform istft(const ComplexSpectrogram& s, const StftConfig& cfg, std::size_t length,
               int sample_rate_hz) {
  cfg.validate();
  if (s.domain != SpectrogramDomain::raw) {
    throw ValidationError("istft: input is companded; expand it first");
  }
  if (s.bins != cfg.bins()) throw ValidationError("istft: bin count does not match config");
  if (s.frames == 0) throw ValidationError("istft: empty spectrogram");

  const std::size_t n = cfg.fft_size;
  const std::size_t pad = n / 2;
  const std::size_t span = (s.frames - 1) * cfg.hop_size + n;
  const std::vector<double> win = make_window(cfg);
  const Fft plan(n);

  std::vector<double> acc(span, 0.0), wsum(span, 0.0);
  std::vector<std::complex<double>> row(s.bins);
  for (std::size_t f = 0; f < s.frames; ++f) {
    std::copy(s.data.begin() + static_cast<std::ptrdiff_t>(f * s.bins),
              s.data.begin() + static_cast<std::ptrdiff_t>((f + 1) * s.bins), row.begin());
    std::vector<double> frame = irfft(row, plan);
    double* a = acc.data() + f * cfg.hop_size;
    double* ws = wsum.data() + f * cfg.hop_size;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] += frame[i] * win[i];
      ws[i] += win[i] * win[i];
    }
  }

  Waveform out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.assign(length, 0.0);
  const std::size_t avail = span > pad ? span - pad : 0;
  const std::size_t copy_len = std::min(length, avail);
  for (std::size_t i = 0; i < copy_len; ++i) {
    const double ws = wsum[pad + i];
    if (ws <= kColaEps) {
      throw ValidationError("istft: zero window sum at sample " + std::to_string(i));
    }
    out.samples[i] = acc[pad + i] / ws;
  }
  return out;
}

void CompandingConfig::validate() const {
  if (!(alpha > 0.0) || alpha > 1.0) throw ValidationError("companding: alpha must be in (0, 1]");
  if (!(beta > 0.0)) throw ValidationError("companding: beta must be positive");
}

double CompandingConfig::unit_magnitude_limit() const {
  return std::pow(1.0 / beta, 1.0 / alpha);
}

namespace {

ComplexSpectrogram map_magnitudes(const ComplexSpectrogram& s, SpectrogramDomain expect,
                                  SpectrogramDomain produce, double (*f)(double, double, double),
                                  const CompandingConfig& c, const char* op) {
  if (s.domain != expect) {
    throw ValidationError(std::string(op) + ": input spectrogram has the wrong domain tag");
  }
  ComplexSpectrogram out = s;
  out.domain = produce;
  for (auto& v : out.data) {
    const double mag = std::abs(v);
    if (mag == 0.0) {
      v = {0.0, 0.0};
      continue;
    }
    v *= f(mag, c.alpha, c.beta) / mag;
  }
  return out;
}

double compand_mag(double m, double a, double b) { return b * std::pow(m, a); }
double expand_mag(double m, double a, double b) { return std::pow(m / b, 1.0 / a); }

}  // namespace

ComplexSpectrogram compand(const ComplexSpectrogram& s, const CompandingConfig& c) {
  c.validate();
  return map_magnitudes(s, SpectrogramDomain::raw, SpectrogramDomain::companded, compand_mag, c,
                        "compand");
}

ComplexSpectrogram expand(const ComplexSpectrogram& s, const CompandingConfig& c) {
  c.validate();
  return map_magnitudes(s, SpectrogramDomain::companded, SpectrogramDomain::raw, expand_mag, c,
                        "expand");
}

namespace {
constexpr char kSpecMagic[4] = {'S', 'D', 'S', 'P'};

void put_u32(std::ofstream& f, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF),
                        static_cast<unsigned char>((v >> 16) & 0xFF),
                        static_cast<unsigned char>((v >> 24) & 0xFF)};
  f.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::ifstream& f) {
  unsigned char b[4];
  f.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}
}  // namespace

void write_spectrogram(const std::filesystem::path& path, const ComplexSpectrogram& s) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("spectrogram dump: cannot open for writing: " + path.string());
  f.write(kSpecMagic, 4);
  put_u32(f, static_cast<std::uint32_t>(s.frames));
  put_u32(f, static_cast<std::uint32_t>(s.bins));
  put_u32(f, s.domain == SpectrogramDomain::companded ? 1u : 0u);
  for (const auto& v : s.data) {
    const double re = v.real(), im = v.imag();
    f.write(reinterpret_cast<const char*>(&re), sizeof(double));
    f.write(reinterpret_cast<const char*>(&im), sizeof(double));
  }
  if (!f) throw ValidationError("spectrogram dump: write failed: " + path.string());
}

ComplexSpectrogram read_spectrogram(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("spectrogram dump: cannot open: " + path.string());
  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, kSpecMagic, 4) != 0) {
    throw ValidationError("spectrogram dump: bad magic: " + path.string());
  }
  ComplexSpectrogram s;
  s.frames = get_u32(f);
  s.bins = get_u32(f);
  const std::uint32_t flags = get_u32(f);
  s.domain = (flags & 1u) ? SpectrogramDomain::companded : SpectrogramDomain::raw;
  s.data.resize(s.frames * s.bins);
  for (auto& v : s.data) {
    double re = 0.0, im = 0.0;
    f.read(reinterpret_cast<char*>(&re), sizeof(double));
    f.read(reinterpret_cast<char*>(&im), sizeof(double));
    v = {re, im};
  }
  if (!f) throw ValidationError("spectrogram dump: truncated file: " + path.string());
  return s;
}

}  // namespace specdiff
