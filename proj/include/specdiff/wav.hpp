#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace specdiff {

// Mono audio in normalized float form. Integer PCM maps to [-1, 1) through
// division by 2^(bits-1).
struct Waveform {
  std::vector<double> samples;
  int sample_rate_hz = 0;

  std::size_t size() const { return samples.size(); }
};

// Reads a mono RIFF/WAVE file with 16- or 24-bit integer PCM.
// Rejects (with distinct messages): missing files, malformed/truncated
// headers, non-PCM or multichannel content, and data chunks whose declared
// length disagrees with the bytes actually present.
Waveform read_wav(const std::filesystem::path& path);

// Writes little-endian integer PCM. Samples are clamped to the representable
// range [-1, 1 - lsb] and rounded to the nearest code.
void write_wav(const Waveform& w, const std::filesystem::path& path, int bit_depth = 16);

}  // namespace specdiff
