#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "wordrec/frontend.hpp"
#include "wordrec/matrix.hpp"

namespace wordrec {

// T x D feature sequence. Column layout with defaults (D = 39):
//   0..11   c1..c12
//   12      log frame energy
//   13..25  delta of 0..12
//   26..38  delta of 13..25
struct FeatureMatrix {
  Matrix rows;
  std::string config_fingerprint;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;
};

// Sum of squared samples of one frame.
double raw_energy(std::span<const double> frame);

// ln(max(raw_energy(frame), eps)); the energy feature is taken on the
// pre-emphasized, un-windowed frame.
double log_energy(std::span<const double> frame, double eps);

// d(t) = (c(t+1) - c(t-1)) / 2 per column, with replicated edges
// c(-1) := c(0) and c(T) := c(T-1). Output shape equals input shape.
Matrix delta(const Matrix& stream);

// Runs the whole front end: pre-emphasis, framing, per-frame energy,
// Hamming window, FFT power spectrum, mel filterbank + log, DCT, then
// stacks {c1..c12, logE} with delta and double-delta columns.
// Throws SampleRateMismatch if the signal rate differs from the config.
FeatureMatrix extract_features(const Signal& signal, const FrontEndConfig& cfg);

// Feature CSV: one row per frame, comma-separated decimal fields with
// 17 significant digits (exact for binary64), '\n' line ends.
void write_features_csv(const Matrix& features, const std::filesystem::path& path);
Matrix read_features_csv(const std::filesystem::path& path);

}  // namespace wordrec
