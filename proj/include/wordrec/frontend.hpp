#pragma once

#include <string>

#include "wordrec/audio_io.hpp"
#include "wordrec/matrix.hpp"

namespace wordrec {

// All constants of the feature-extraction pipeline. The fingerprint of
// a config is embedded in every feature file and template so that data
// produced under different settings can never be mixed silently.
struct FrontEndConfig {
  double preemphasis_a = 0.95;
  int frame_len = 256;   // N, samples per frame
  int frame_step = 100;  // M, hop between adjacent frames
  int fft_size = 256;    // power of two, >= frame_len
  int num_filters = 26;
  int num_ceps = 12;     // kept cepstra c1..c12 (c0 is replaced by energy)
  int sample_rate_hz = 16000;
  double log_floor = 1e-10;

  // Feature vector width: base cepstra + energy, deltas, double deltas.
  int feature_dim() const { return 3 * (num_ceps + 1); }

  // Throws InvalidConfig unless 0 <= a < 1, 2 <= step <= len,
  // fft_size is a power of two >= len, and num_ceps < num_filters.
  void validate() const;

  // Canonical textual form, e.g.
  //   a=0.95;N=256;M=100;fft=256;nfilt=26;nceps=12;fs=16000;eps=1e-10
  // Field order is fixed: string equality is config equality.
  std::string fingerprint() const;
};

// Number of frames produced for a signal of `signal_len` samples:
// signals shorter than one frame are zero-padded to frame_len, then
// T = floor((L - N) / M) + 1 and trailing partial frames are dropped.
std::size_t num_frames(std::size_t signal_len, const FrontEndConfig& cfg);

// First-order high-pass filter y[n] = x[n] - a * x[n-1], with the
// convention x[-1] = 0 so y[0] = x[0]. Output length equals input length.
// Throws EmptySignal.
Signal preemphasize(const Signal& signal, double a);

// Slices the signal into overlapping frames (one per row); frame t
// covers samples [t*M, t*M + N). Throws EmptySignal.
Matrix frame_signal(const Signal& signal, const FrontEndConfig& cfg);

// Hamming taper w(n) = 0.54 - 0.46 cos(2*pi*n / (N-1)), n = 0..N-1.
// Computed for the first half and mirrored, so w(n) == w(N-1-n) holds
// exactly.
std::vector<double> hamming_coefficients(std::size_t frame_len);

// Multiplies every frame elementwise by the Hamming taper.
Matrix hamming_window(const Matrix& frames);

}  // namespace wordrec
