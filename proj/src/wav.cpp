#include "specdiff/wav.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "specdiff/errors.hpp"

namespace specdiff {

namespace {

std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

}  // namespace

Waveform read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("wav: cannot open file: " + path.string());
  std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(raw.data());
  const std::size_t size = raw.size();

  if (size < 12 || std::memcmp(p, "RIFF", 4) != 0 || std::memcmp(p + 8, "WAVE", 4) != 0) {
    throw ValidationError("wav: truncated or non-RIFF/WAVE header: " + path.string());
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  std::size_t data_off = 0, data_len = 0;
  bool have_data = false;

  std::size_t off = 12;
  while (off + 8 <= size) {
    const char* id = raw.data() + off;
    std::uint32_t chunk_len = le32(p + off + 4);
    std::size_t body = off + 8;
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (chunk_len < 16 || body + 16 > size) {
        throw ValidationError("wav: truncated fmt chunk: " + path.string());
      }
      format = le16(p + body);
      channels = le16(p + body + 2);
      sample_rate = le32(p + body + 4);
      bits = le16(p + body + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_off = body;
      data_len = chunk_len;
      have_data = true;
      if (body + chunk_len > size) {
        throw ValidationError("wav: data chunk length exceeds file size: " + path.string());
      }
    }
    off = body + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || !have_data) {
    throw ValidationError("wav: missing fmt or data chunk: " + path.string());
  }
  if (format != 1) {
    throw ValidationError("wav: only integer PCM (format 1) is supported: " + path.string());
  }
  if (channels != 1) {
    throw ValidationError("wav: only mono audio is supported (got " + std::to_string(channels) +
                          " channels): " + path.string());
  }
  if (bits != 16 && bits != 24) {
    throw ValidationError("wav: unsupported bit depth " + std::to_string(bits) + ": " +
                          path.string());
  }
  if (sample_rate == 0) throw ValidationError("wav: zero sample rate: " + path.string());
  const std::size_t bytes_per_sample = bits / 8;
  if (data_len % bytes_per_sample != 0) {
    throw ValidationError("wav: data chunk length is not a whole number of samples: " +
                          path.string());
  }
  const std::size_t n = data_len / bytes_per_sample;
  if (n == 0) throw ValidationError("wav: empty data chunk: " + path.string());

  Waveform w;
  w.sample_rate_hz = static_cast<int>(sample_rate);
  w.samples.resize(n);
  const double scale = 1.0 / static_cast<double>(1u << (bits - 1));
  const unsigned char* d = p + data_off;
  if (bits == 16) {
    for (std::size_t i = 0; i < n; ++i) {
      std::int16_t v = static_cast<std::int16_t>(d[2 * i] | (d[2 * i + 1] << 8));
      w.samples[i] = static_cast<double>(v) * scale;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      std::int32_t v = static_cast<std::int32_t>(
          (static_cast<std::uint32_t>(d[3 * i]) | (static_cast<std::uint32_t>(d[3 * i + 1]) << 8) |
           (static_cast<std::uint32_t>(d[3 * i + 2]) << 16))
          << 8);
      v >>= 8;  // sign-extend 24 -> 32
      w.samples[i] = static_cast<double>(v) * scale;
    }
  }
  return w;
}

void write_wav(const Waveform& w, const std::filesystem::path& path, int bit_depth) {
  if (bit_depth != 16 && bit_depth != 24) {
    throw ValidationError("wav: unsupported bit depth " + std::to_string(bit_depth));
  }
  if (w.sample_rate_hz <= 0) throw ValidationError("wav: sample rate must be positive");
  for (double s : w.samples) {
    if (!std::isfinite(s)) throw ValidationError("wav: non-finite sample");
  }

  const std::int64_t full = std::int64_t{1} << (bit_depth - 1);
  const std::int64_t lo = -full, hi = full - 1;
  const std::size_t bytes_per_sample = static_cast<std::size_t>(bit_depth) / 8;
  const std::uint32_t data_len = static_cast<std::uint32_t>(w.samples.size() * bytes_per_sample);

  std::string out;
  out.reserve(44 + data_len);
  out.append("RIFF");
  put32(out, 36 + data_len);
  out.append("WAVE");
  out.append("fmt ");
  put32(out, 16);
  put16(out, 1);  // integer PCM
  put16(out, 1);  // mono
  put32(out, static_cast<std::uint32_t>(w.sample_rate_hz));
  put32(out, static_cast<std::uint32_t>(w.sample_rate_hz) * bytes_per_sample);
  put16(out, static_cast<std::uint16_t>(bytes_per_sample));
  put16(out, static_cast<std::uint16_t>(bit_depth));
  out.append("data");
  put32(out, data_len);

  for (double s : w.samples) {
    std::int64_t v = std::llround(s * static_cast<double>(full));
    if (v < lo) v = lo;
    if (v > hi) v = hi;
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    if (bit_depth == 24) out.push_back(static_cast<char>((v >> 16) & 0xFF));
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("wav: cannot open for writing: " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw ValidationError("wav: write failed: " + path.string());
}

}  // namespace specdiff
