#include "wordrec/features.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "wordrec/errors.hpp"
#include "wordrec/numeric_text.hpp"
#include "wordrec/spectral.hpp"

namespace wordrec {

double raw_energy(std::span<const double> frame) {
  double acc = 0.0;
  for (double x : frame) acc += x * x;
  return acc;
}

double log_energy(std::span<const double> frame, double eps) {
  return std::log(std::max(raw_energy(frame), eps));
}

Matrix delta(const Matrix& stream) {
  Matrix out(stream.rows(), stream.cols());
  const std::size_t last = stream.rows() - 1;
  for (std::size_t t = 0; t < stream.rows(); ++t) {
    const std::size_t next = t < last ? t + 1 : last;  // c(T) := c(T-1)
    const std::size_t prev = t > 0 ? t - 1 : 0;        // c(-1) := c(0)
    for (std::size_t k = 0; k < stream.cols(); ++k)
      out(t, k) = (stream(next, k) - stream(prev, k)) / 2.0;
  }
  return out;
}

FeatureMatrix extract_features(const Signal& signal, const FrontEndConfig& cfg) {
  cfg.validate();
  if (signal.samples.empty()) throw EmptySignal("cannot extract features from an empty signal");
  if (signal.sample_rate_hz != cfg.sample_rate_hz)
    throw SampleRateMismatch("signal is " + std::to_string(signal.sample_rate_hz) +
                             " Hz, config expects " + std::to_string(cfg.sample_rate_hz) + " Hz");

  const Signal emphasized = preemphasize(signal, cfg.preemphasis_a);
  const Matrix frames = frame_signal(emphasized, cfg);

  // energy comes from the pre-emphasized, un-windowed frames
  std::vector<double> energies(frames.rows());
  for (std::size_t t = 0; t < frames.rows(); ++t)
    energies[t] = log_energy(frames.row(t), cfg.log_floor);

  const Matrix windowed = hamming_window(frames);
  const Matrix power = fft_power(windowed, cfg.fft_size);
  const MelFilterBank fb = build_filterbank(cfg);
  const Matrix log_mel = apply_filterbank_log(power, fb, cfg.log_floor);
  const Matrix cepstra = dct_cepstra(log_mel, cfg.num_ceps);

  const std::size_t base_dim = static_cast<std::size_t>(cfg.num_ceps) + 1;
  Matrix base(frames.rows(), base_dim);
  for (std::size_t t = 0; t < frames.rows(); ++t) {
    for (std::size_t k = 0; k < cepstra.cols(); ++k) base(t, k) = cepstra(t, k);
    base(t, base_dim - 1) = energies[t];
  }

  const Matrix d1 = delta(base);
  const Matrix d2 = delta(d1);

  Matrix stacked(frames.rows(), 3 * base_dim);
  for (std::size_t t = 0; t < frames.rows(); ++t) {
    for (std::size_t k = 0; k < base_dim; ++k) {
      stacked(t, k) = base(t, k);
      stacked(t, base_dim + k) = d1(t, k);
      stacked(t, 2 * base_dim + k) = d2(t, k);
    }
  }
  return FeatureMatrix{std::move(stacked), cfg.fingerprint()};
}

void write_features_csv(const Matrix& features, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  for (std::size_t t = 0; t < features.rows(); ++t) {
    for (std::size_t k = 0; k < features.cols(); ++k) {
      if (k) out << ',';
      out << format_double17(features(t, k));
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoFailure("short write to " + path.string());
}

Matrix read_features_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile("cannot open " + path.string());

  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      double v = 0.0;
      if (!parse_double(field, v) || !std::isfinite(v))
        throw CsvParseError(path.string() + ": bad numeric field '" + field + "'");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw CsvParseError(path.string() + ": ragged row with " + std::to_string(row.size()) +
                          " fields, expected " + std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvParseError(path.string() + ": no data rows");

  Matrix out(rows.size(), rows.front().size());
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t k = 0; k < rows[t].size(); ++k) out(t, k) = rows[t][k];
  return out;
}

}  // namespace wordrec
