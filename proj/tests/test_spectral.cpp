#include <doctest.h>

#include <cmath>
#include <random>

#include "wordrec/spectral.hpp"
#include "test_support.hpp"

using namespace wordrec;

namespace {

// full orthonormal DCT-II matrix, the oracle for dct_cepstra
Matrix orthonormal_dct_matrix(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double alpha = k == 0 ? std::sqrt(1.0 / static_cast<double>(n))
                                : std::sqrt(2.0 / static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j)
      m(k, j) = alpha * std::cos(M_PI * static_cast<double>(k) *
                                 (2.0 * static_cast<double>(j) + 1.0) /
                                 (2.0 * static_cast<double>(n)));
  }
  return m;
}

}  // namespace

TEST_CASE("fft_power of a constant frame is DC only") {
  const double c = 0.75;
  Matrix frames(1, 8, c);
  const Matrix p = fft_power(frames, 8);
  REQUIRE(p.cols() == 5);
  CHECK(p(0, 0) == doctest::Approx((8 * c) * (8 * c)).epsilon(1e-12));
  for (std::size_t k = 1; k <= 4; ++k) CHECK(p(0, k) <= 1e-20);
}

TEST_CASE("fft_power of a two-cycle cosine concentrates in bin 2") {
  Matrix frames(1, 8);
  for (std::size_t n = 0; n < 8; ++n)
    frames(0, n) = std::cos(2.0 * M_PI * 2.0 * static_cast<double>(n) / 8.0);
  const Matrix p = fft_power(frames, 8);
  CHECK(std::sqrt(p(0, 2)) == doctest::Approx(4.0).epsilon(1e-12));
  for (std::size_t k = 0; k <= 4; ++k)
    if (k != 2) CHECK(p(0, k) <= 1e-20);
}

TEST_CASE("fft matches the direct DFT oracle") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  for (std::size_t n : {8u, 16u, 32u, 64u}) {
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<std::complex<double>> x(n);
      for (auto& v : x) v = {dist(rng), dist(rng)};

      auto got = x;
      fft_radix2(got);
      const auto want = testsupport::dft(x);

      double scale = 0.0;
      for (const auto& w : want) scale = std::max(scale, std::abs(w));
      for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("fft satisfies Parseval's identity") {
  std::mt19937 rng(321);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  Matrix frames(20, 256);
  for (std::size_t t = 0; t < frames.rows(); ++t)
    for (std::size_t i = 0; i < frames.cols(); ++i) frames(t, i) = dist(rng);

  for (std::size_t t = 0; t < frames.rows(); ++t) {
    std::vector<std::complex<double>> x(256);
    for (std::size_t i = 0; i < 256; ++i) x[i] = frames(t, i);
    fft_radix2(x);
    double spectral = 0.0;
    for (const auto& v : x) spectral += std::norm(v);
    double time = 0.0;
    for (std::size_t i = 0; i < 256; ++i) time += frames(t, i) * frames(t, i);
    CHECK(spectral == doctest::Approx(256.0 * time).epsilon(1e-6));
  }
}

TEST_CASE("fft_power rejects bad sizes") {
  Matrix frames(1, 300);
  CHECK_THROWS_AS(fft_power(frames, 300), BadFftSize);
  CHECK_THROWS_AS(fft_power(frames, 256), BadFftSize);  // smaller than the frame
}

TEST_CASE("mel scale golden values") {
  CHECK(hz_to_mel(0.0) == 0.0);
  CHECK(hz_to_mel(700.0) == doctest::Approx(2595.0 * std::log10(2.0)).epsilon(1e-12));
  CHECK(hz_to_mel(700.0) == doctest::Approx(781.17).epsilon(1e-4));
  CHECK(std::abs(hz_to_mel(1000.0) - 1000.0) < 0.05);
  CHECK(mel_to_hz(0.0) == 0.0);
  CHECK_THROWS_AS(hz_to_mel(-1.0), NegativeFrequency);
  CHECK_THROWS_AS(mel_to_hz(-1.0), NegativeMel);
}

TEST_CASE("mel scale is monotone and invertible") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 8000.0);
  for (int i = 0; i < 200; ++i) {
    double f1 = dist(rng), f2 = dist(rng);
    if (f1 > f2) std::swap(f1, f2);
    if (f1 < f2) CHECK(hz_to_mel(f1) < hz_to_mel(f2));
  }
  for (double f : {50.0, 700.0, 4000.0, 8000.0})
    CHECK(mel_to_hz(hz_to_mel(f)) == doctest::Approx(f).epsilon(1e-9));
}

TEST_CASE("filterbank triangles peak at exactly 1") {
  FrontEndConfig cfg;
  const MelFilterBank fb = build_filterbank(cfg);
  REQUIRE(fb.weights.rows() == 26);
  REQUIRE(fb.weights.cols() == 129);

  for (std::size_t m = 0; m < 26; ++m) {
    double peak = 0.0;
    for (std::size_t k = 0; k < fb.weights.cols(); ++k) peak = std::max(peak, fb.weights(m, k));
    CHECK(peak == 1.0);
    CHECK(fb.weights(m, static_cast<std::size_t>(fb.center_bins[m])) == 1.0);
  }
}

TEST_CASE("filterbank triangles are zero outside their support") {
  FrontEndConfig cfg;
  const MelFilterBank fb = build_filterbank(cfg);

  for (std::size_t m = 0; m < fb.weights.rows(); ++m) {
    // find the support, then check the triangle shape around the center
    std::size_t first = fb.weights.cols(), last = 0;
    for (std::size_t k = 0; k < fb.weights.cols(); ++k) {
      if (fb.weights(m, k) > 0.0) {
        first = std::min(first, k);
        last = std::max(last, k);
      }
    }
    REQUIRE(first <= last);
    const auto center = static_cast<std::size_t>(fb.center_bins[m]);
    CHECK(first <= center);
    CHECK(center <= last);
    for (std::size_t k = first; k < center; ++k)
      CHECK(fb.weights(m, k) < fb.weights(m, k + 1));
    for (std::size_t k = center; k < last; ++k)
      CHECK(fb.weights(m, k) > fb.weights(m, k + 1));
  }
}

TEST_CASE("default filterbank has no degenerate filters and no holes") {
  FrontEndConfig cfg;
  const MelFilterBank fb = build_filterbank(cfg);

  // non-degenerate: every filter has at least its center bin active
  for (std::size_t m = 0; m < fb.weights.rows(); ++m) {
    int active = 0;
    for (std::size_t k = 0; k < fb.weights.cols(); ++k)
      if (fb.weights(m, k) > 0.0) ++active;
    CHECK(active >= 1);
  }

  // coverage: each bin strictly between the first and last centers is
  // seen by at least one filter
  const auto first_center = static_cast<std::size_t>(fb.center_bins.front());
  const auto last_center = static_cast<std::size_t>(fb.center_bins.back());
  for (std::size_t k = first_center + 1; k < last_center; ++k) {
    double column = 0.0;
    for (std::size_t m = 0; m < fb.weights.rows(); ++m) column += fb.weights(m, k);
    CHECK(column > 0.0);
  }
}

TEST_CASE("over-dense filterbank raises TooManyFilters") {
  FrontEndConfig cfg;
  cfg.fft_size = 256;
  cfg.num_filters = 120;  // 122 edges over 129 bins must collide
  cfg.num_ceps = 12;
  CHECK_THROWS_AS(build_filterbank(cfg), TooManyFilters);
}

TEST_CASE("apply_filterbank_log floors, shifts and sums correctly") {
  FrontEndConfig cfg;
  const MelFilterBank fb = build_filterbank(cfg);
  const std::size_t bins = fb.weights.cols();

  SUBCASE("all-zero power hits the floor") {
    const Matrix out = apply_filterbank_log(Matrix(3, bins, 0.0), fb, 1e-10);
    for (std::size_t t = 0; t < out.rows(); ++t)
      for (std::size_t m = 0; m < out.cols(); ++m) CHECK(out(t, m) == std::log(1e-10));
  }
  SUBCASE("scaling power shifts the log output") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dist(0.1, 2.0);
    Matrix power(2, bins);
    for (std::size_t t = 0; t < 2; ++t)
      for (std::size_t k = 0; k < bins; ++k) power(t, k) = dist(rng);
    Matrix scaled = power;
    for (std::size_t t = 0; t < 2; ++t)
      for (std::size_t k = 0; k < bins; ++k) scaled(t, k) *= 5.0;

    const Matrix a = apply_filterbank_log(power, fb, 1e-10);
    const Matrix b = apply_filterbank_log(scaled, fb, 1e-10);
    for (std::size_t t = 0; t < 2; ++t)
      for (std::size_t m = 0; m < a.cols(); ++m)
        CHECK(b(t, m) - a(t, m) == doctest::Approx(std::log(5.0)).epsilon(1e-12));
  }
  SUBCASE("flat spectrum reproduces the row sums") {
    const Matrix out = apply_filterbank_log(Matrix(1, bins, 1.0), fb, 1e-10);
    for (std::size_t m = 0; m < out.cols(); ++m) {
      double row_sum = 0.0;
      for (std::size_t k = 0; k < bins; ++k) row_sum += fb.weights(m, k);
      CHECK(out(0, m) == doctest::Approx(std::log(row_sum)).epsilon(1e-12));
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(apply_filterbank_log(Matrix(1, bins + 1, 0.0), fb, 1e-10),
                    DimensionMismatch);
  }
}

TEST_CASE("dct_cepstra zeroes out constant rows") {
  const Matrix out = dct_cepstra(Matrix(2, 26, 3.14), 12);
  REQUIRE(out.rows() == 2);
  REQUIRE(out.cols() == 12);
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t k = 0; k < 12; ++k) CHECK(out(t, k) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dct_cepstra recovers orthonormal basis vectors") {
  const Matrix basis = orthonormal_dct_matrix(26);
  for (std::size_t k = 1; k <= 12; ++k) {
    Matrix row(1, 26);
    for (std::size_t j = 0; j < 26; ++j) row(0, j) = basis(k, j);
    const Matrix out = dct_cepstra(row, 12);
    for (std::size_t i = 0; i < 12; ++i) {
      const double want = (i + 1 == k) ? 1.0 : 0.0;
      CHECK(out(0, i) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("dct_cepstra matches the oracle transform which round-trips") {
  std::mt19937 rng(2024);
  const Matrix row = testsupport::random_matrix(rng, 1, 26, -3.0, 3.0);
  const Matrix basis = orthonormal_dct_matrix(26);

  // oracle: full forward transform, then its transpose as the inverse
  std::vector<double> full(26, 0.0);
  for (std::size_t k = 0; k < 26; ++k)
    for (std::size_t j = 0; j < 26; ++j) full[k] += basis(k, j) * row(0, j);
  for (std::size_t j = 0; j < 26; ++j) {
    double back = 0.0;
    for (std::size_t k = 0; k < 26; ++k) back += basis(k, j) * full[k];
    CHECK(back == doctest::Approx(row(0, j)).epsilon(1e-9));
  }

  const Matrix kept = dct_cepstra(row, 12);
  for (std::size_t k = 0; k < 12; ++k)
    CHECK(kept(0, k) == doctest::Approx(full[k + 1]).epsilon(1e-12));
}

TEST_CASE("dct_cepstra rejects bad dimensions") {
  CHECK_THROWS_AS(dct_cepstra(Matrix(1, 12, 0.0), 12), DimensionMismatch);
  CHECK_THROWS_AS(dct_cepstra(Matrix(1, 12, 0.0), 20), DimensionMismatch);
}
