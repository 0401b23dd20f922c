#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wordrec/errors.hpp"

namespace wordrec {

// Mono audio samples in [-1.0, 1.0] plus their sample rate.
struct Signal {
  std::vector<double> samples;
  int sample_rate_hz = 16000;
};

// Reads a RIFF/WAVE file holding 16-bit mono integer PCM. Samples are
// scaled by 1/32768 so the full int16 range maps into [-1.0, 1.0).
// Unknown chunks (LIST, INFO, ...) are skipped.
//
// Throws MissingFile, NotWav, UnsupportedFormat, TruncatedData.
Signal read_wav(const std::filesystem::path& path);

// Writes 16-bit mono PCM. Each sample s is encoded as round(s * 32767)
// clamped to [-32768, 32767].
//
// Throws EmptySignal, IoFailure.
void write_wav(const Signal& signal, const std::filesystem::path& path);

// One segment of a synthetic test utterance. A sine holds `freq_hz`
// for `duration_s`; a chirp sweeps linearly from `freq_hz` to
// `freq_end_hz`; silence ignores both frequencies.
struct ToneSegment {
  enum class Kind { Sine, Chirp, Silence };
  Kind kind = Kind::Sine;
  double freq_hz = 0.0;
  double freq_end_hz = 0.0;
  double duration_s = 0.0;
};

// Deterministic tone-sequence description; the same spec always
// synthesizes the same samples.
struct ToneSpec {
  std::vector<ToneSegment> segments;
  int sample_rate_hz = 16000;
  double amplitude = 0.5;
};

// Renders the segments back to back. Each segment starts at phase zero,
// so segment n of a sine spec is amplitude * sin(2*pi*f*n/fs).
//
// Throws InvalidSpec if any frequency reaches fs/2 (aliasing), any
// duration is non-positive, or the amplitude is outside [0, 1].
Signal synthesize(const ToneSpec& spec);

// Parses the CLI segment syntax: comma-separated
//   sine:<freq_hz>:<dur_s> | chirp:<f0_hz>:<f1_hz>:<dur_s> | silence:<dur_s>
// e.g. "sine:1000:0.5,silence:0.1,chirp:300:1200:0.4".
//
// Throws InvalidSpec on syntax errors.
ToneSpec parse_tone_spec(const std::string& text, int sample_rate_hz, double amplitude);

}  // namespace wordrec
