#include "wordrec/frontend.hpp"

#include <cmath>
#include <numbers>

#include "wordrec/errors.hpp"
#include "wordrec/numeric_text.hpp"

namespace wordrec {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

void FrontEndConfig::validate() const {
  if (preemphasis_a < 0.0 || preemphasis_a >= 1.0)
    throw InvalidConfig("preemphasis coefficient must satisfy 0 <= a < 1");
  if (frame_len < 2) throw InvalidConfig("frame length must be at least 2 samples");
  if (frame_step < 1 || frame_step > frame_len)
    throw InvalidConfig("frame step must satisfy 1 <= step <= frame length");
  if (!is_power_of_two(fft_size) || fft_size < frame_len)
    throw InvalidConfig("fft size must be a power of two >= frame length");
  if (num_filters < 2) throw InvalidConfig("at least 2 mel filters are required");
  if (num_ceps < 1 || num_ceps >= num_filters)
    throw InvalidConfig("number of cepstra must satisfy 1 <= nceps < nfilt");
  if (sample_rate_hz < 1) throw InvalidConfig("sample rate must be positive");
  if (!(log_floor > 0.0)) throw InvalidConfig("log floor must be positive");
}

std::string FrontEndConfig::fingerprint() const {
  std::string fp;
  fp += "a=" + format_double(preemphasis_a);
  fp += ";N=" + std::to_string(frame_len);
  fp += ";M=" + std::to_string(frame_step);
  fp += ";fft=" + std::to_string(fft_size);
  fp += ";nfilt=" + std::to_string(num_filters);
  fp += ";nceps=" + std::to_string(num_ceps);
  fp += ";fs=" + std::to_string(sample_rate_hz);
  fp += ";eps=" + format_double(log_floor);
  return fp;
}

std::size_t num_frames(std::size_t signal_len, const FrontEndConfig& cfg) {
  const auto n = static_cast<std::size_t>(cfg.frame_len);
  const auto m = static_cast<std::size_t>(cfg.frame_step);
  const std::size_t padded = std::max(signal_len, n);
  return (padded - n) / m + 1;
}

Signal preemphasize(const Signal& signal, double a) {
  if (signal.samples.empty()) throw EmptySignal("cannot pre-emphasize an empty signal");
  Signal out;
  out.sample_rate_hz = signal.sample_rate_hz;
  out.samples.resize(signal.samples.size());
  out.samples[0] = signal.samples[0];  // x[-1] = 0
  for (std::size_t i = 1; i < signal.samples.size(); ++i)
    out.samples[i] = signal.samples[i] - a * signal.samples[i - 1];
  return out;
}

Matrix frame_signal(const Signal& signal, const FrontEndConfig& cfg) {
  if (signal.samples.empty()) throw EmptySignal("cannot frame an empty signal");
  const auto n = static_cast<std::size_t>(cfg.frame_len);
  const auto step = static_cast<std::size_t>(cfg.frame_step);
  const std::size_t frames = num_frames(signal.samples.size(), cfg);

  Matrix out(frames, n);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t start = t * step;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t src = start + i;
      // past the signal end only for the zero-padded single frame case
      out(t, i) = src < signal.samples.size() ? signal.samples[src] : 0.0;
    }
  }
  return out;
}

std::vector<double> hamming_coefficients(std::size_t frame_len) {
  if (frame_len < 2) throw InvalidConfig("Hamming window needs at least 2 samples");
  std::vector<double> w(frame_len);
  const double denom = static_cast<double>(frame_len - 1);
  for (std::size_t n = 0; n <= (frame_len - 1) / 2; ++n) {
    w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / denom);
    w[frame_len - 1 - n] = w[n];
  }
  return w;
}

Matrix hamming_window(const Matrix& frames) {
  const std::vector<double> w = hamming_coefficients(frames.cols());
  Matrix out(frames.rows(), frames.cols());
  for (std::size_t t = 0; t < frames.rows(); ++t)
    for (std::size_t i = 0; i < frames.cols(); ++i) out(t, i) = frames(t, i) * w[i];
  return out;
}

}  // namespace wordrec
