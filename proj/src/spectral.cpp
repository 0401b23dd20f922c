#include "wordrec/spectral.hpp"

#include <cmath>
#include <numbers>

#include "wordrec/errors.hpp"

namespace wordrec {

namespace {

bool is_power_of_two(std::size_t v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

void fft_radix2(std::vector<std::complex<double>>& data) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) throw BadFftSize("FFT length must be a power of two");
  if (n == 1) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  // decimation-in-time butterflies
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> w_len(std::cos(angle), std::sin(angle));
    for (std::size_t start = 0; start < n; start += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> even = data[start + k];
        const std::complex<double> odd = data[start + k + len / 2] * w;
        data[start + k] = even + odd;
        data[start + k + len / 2] = even - odd;
        w *= w_len;
      }
    }
  }
}

Matrix fft_power(const Matrix& frames, int fft_size) {
  if (fft_size <= 0 || !is_power_of_two(static_cast<std::size_t>(fft_size)))
    throw BadFftSize("fft size must be a power of two");
  if (static_cast<std::size_t>(fft_size) < frames.cols())
    throw BadFftSize("fft size is smaller than the frame length");

  const std::size_t bins = static_cast<std::size_t>(fft_size) / 2 + 1;
  Matrix power(frames.rows(), bins);
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(fft_size));
  for (std::size_t t = 0; t < frames.rows(); ++t) {
    for (std::size_t i = 0; i < buf.size(); ++i)
      buf[i] = i < frames.cols() ? std::complex<double>(frames(t, i), 0.0)
                                 : std::complex<double>(0.0, 0.0);
    fft_radix2(buf);
    for (std::size_t k = 0; k < bins; ++k) power(t, k) = std::norm(buf[k]);
  }
  return power;
}

double hz_to_mel(double f_hz) {
  if (f_hz < 0.0) throw NegativeFrequency("frequency must be non-negative");
  return 2595.0 * std::log10(1.0 + f_hz / 700.0);
}

double mel_to_hz(double mel) {
  if (mel < 0.0) throw NegativeMel("mel value must be non-negative");
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterBank build_filterbank(const FrontEndConfig& cfg) {
  cfg.validate();

  const int bins = cfg.fft_size / 2 + 1;
  const double fs = cfg.sample_rate_hz;
  const double mel_max = hz_to_mel(fs / 2.0);

  // num_filters + 2 edge points, equally spaced on the mel axis,
  // snapped onto FFT bins
  std::vector<int> edges(static_cast<std::size_t>(cfg.num_filters) + 2);
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const double mel = mel_max * static_cast<double>(j) / static_cast<double>(edges.size() - 1);
    const double hz = mel_to_hz(mel);
    edges[j] = static_cast<int>(std::floor((cfg.fft_size + 1) * hz / fs));
  }

  MelFilterBank fb;
  fb.num_filters = cfg.num_filters;
  fb.fft_size = cfg.fft_size;
  fb.sample_rate_hz = cfg.sample_rate_hz;
  fb.weights = Matrix(static_cast<std::size_t>(cfg.num_filters), static_cast<std::size_t>(bins));
  fb.center_bins.resize(static_cast<std::size_t>(cfg.num_filters));

  for (int m = 0; m < cfg.num_filters; ++m) {
    const int left = edges[static_cast<std::size_t>(m)];
    const int center = edges[static_cast<std::size_t>(m) + 1];
    const int right = edges[static_cast<std::size_t>(m) + 2];
    if (left >= center || center >= right)
      throw TooManyFilters("filter " + std::to_string(m + 1) +
                           " collapses onto a single FFT bin; use fewer filters or a larger FFT");
    fb.center_bins[static_cast<std::size_t>(m)] = center;
    for (int k = left + 1; k <= center; ++k)
      fb.weights(static_cast<std::size_t>(m), static_cast<std::size_t>(k)) =
          static_cast<double>(k - left) / static_cast<double>(center - left);
    for (int k = center + 1; k < right; ++k)
      fb.weights(static_cast<std::size_t>(m), static_cast<std::size_t>(k)) =
          static_cast<double>(right - k) / static_cast<double>(right - center);
  }
  return fb;
}

Matrix apply_filterbank_log(const Matrix& power, const MelFilterBank& fb, double eps) {
  if (power.cols() != fb.weights.cols())
    throw DimensionMismatch("power spectrum has " + std::to_string(power.cols()) +
                            " bins, filterbank expects " + std::to_string(fb.weights.cols()));

  Matrix out(power.rows(), fb.weights.rows());
  for (std::size_t t = 0; t < power.rows(); ++t) {
    for (std::size_t m = 0; m < fb.weights.rows(); ++m) {
      double acc = 0.0;
      for (std::size_t k = 0; k < power.cols(); ++k) acc += fb.weights(m, k) * power(t, k);
      out(t, m) = std::log(std::max(acc, eps));
    }
  }
  return out;
}

Matrix dct_cepstra(const Matrix& log_mel, int num_ceps) {
  const std::size_t filters = log_mel.cols();
  if (filters == 0 || num_ceps < 1 || static_cast<std::size_t>(num_ceps) >= filters)
    throw DimensionMismatch("need 1 <= num_ceps < number of filter channels");

  // orthonormal DCT-II basis rows k = 1..num_ceps (c0 dropped)
  const double scale = std::sqrt(2.0 / static_cast<double>(filters));
  Matrix basis(static_cast<std::size_t>(num_ceps), filters);
  for (std::size_t k = 1; k <= static_cast<std::size_t>(num_ceps); ++k)
    for (std::size_t j = 0; j < filters; ++j)
      basis(k - 1, j) = scale * std::cos(std::numbers::pi * static_cast<double>(k) *
                                         (2.0 * static_cast<double>(j) + 1.0) /
                                         (2.0 * static_cast<double>(filters)));

  Matrix out(log_mel.rows(), static_cast<std::size_t>(num_ceps));
  for (std::size_t t = 0; t < log_mel.rows(); ++t) {
    for (std::size_t k = 0; k < static_cast<std::size_t>(num_ceps); ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j < filters; ++j) acc += basis(k, j) * log_mel(t, j);
      out(t, k) = acc;
    }
  }
  return out;
}

}  // namespace wordrec
