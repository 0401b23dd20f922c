#pragma once

#include <complex>
#include <vector>

#include "wordrec/frontend.hpp"
#include "wordrec/matrix.hpp"

namespace wordrec {

// In-place iterative radix-2 FFT. `data.size()` must be a power of two.
// Throws BadFftSize.
void fft_radix2(std::vector<std::complex<double>>& data);

// Zero-pads each frame to fft_size, transforms it and keeps the squared
// magnitudes of bins 0..fft_size/2 (one row per frame).
// Throws BadFftSize if fft_size is not a power of two or < frame length.
Matrix fft_power(const Matrix& frames, int fft_size);

// Mel scale: 2595 * log10(1 + f/700). Strictly increasing, mel(0) = 0.
// Throws NegativeFrequency.
double hz_to_mel(double f_hz);

// Inverse of hz_to_mel: 700 * (10^(m/2595) - 1). Throws NegativeMel.
double mel_to_hz(double mel);

// Bank of triangular filters with centers equally spaced on the mel
// axis between 0 and fs/2. Each filter is unity at its center bin and
// falls linearly to zero at the centers of its two neighbours.
struct MelFilterBank {
  int num_filters = 0;
  int fft_size = 0;
  int sample_rate_hz = 0;
  Matrix weights;                // num_filters x (fft_size/2 + 1)
  std::vector<int> center_bins;  // apex bin per filter

  double center_hz(int filter) const {
    return center_bins[filter] * static_cast<double>(sample_rate_hz) / fft_size;
  }
};

// Places num_filters + 2 mel-equally-spaced edge points on FFT bins via
// bin = floor((fft_size+1) * f / fs). Throws TooManyFilters when two
// adjacent edges collapse onto the same bin (such a filter would be a
// constant-zero channel).
MelFilterBank build_filterbank(const FrontEndConfig& cfg);

// out[t][m] = ln(max(sum_k weights[m][k] * power[t][k], eps)).
// Throws DimensionMismatch.
Matrix apply_filterbank_log(const Matrix& power, const MelFilterBank& fb, double eps);

// Orthonormal DCT-II along the filter axis; keeps coefficients
// c1..c_num_ceps (c0 is dropped, log energy takes its place later).
// Throws DimensionMismatch unless num_ceps < num_filters = log_mel.cols().
Matrix dct_cepstra(const Matrix& log_mel, int num_ceps);

}  // namespace wordrec
