#include <doctest.h>

#include <cmath>
#include <random>

#include "wordrec/audio_io.hpp"
#include "test_support.hpp"

using namespace wordrec;
using testsupport::TempDir;
using testsupport::wav_bytes;

TEST_CASE("read_wav decodes 16-bit samples by 1/32768") {
  TempDir dir("wav_decode");
  const auto path = dir.file("three.wav");
  testsupport::write_file(path, wav_bytes({0, 16384, -32768}));

  const Signal s = read_wav(path);
  CHECK(s.sample_rate_hz == 16000);
  REQUIRE(s.samples.size() == 3);
  CHECK(s.samples[0] == 0.0);
  CHECK(s.samples[1] == 0.5);
  CHECK(s.samples[2] == -1.0);
}

TEST_CASE("read_wav rejects unsupported containers and formats") {
  TempDir dir("wav_reject");

  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_wav(dir.file("nope.wav")), MissingFile);
  }
  SUBCASE("bad magic") {
    testsupport::write_file(dir.file("x.wav"), "JUNKJUNKJUNKJUNK");
    CHECK_THROWS_AS(read_wav(dir.file("x.wav")), NotWav);
  }
  SUBCASE("two channels") {
    testsupport::write_file(dir.file("x.wav"), wav_bytes({0, 0}, 16000, /*channels=*/2));
    CHECK_THROWS_AS(read_wav(dir.file("x.wav")), UnsupportedFormat);
  }
  SUBCASE("8-bit samples") {
    testsupport::write_file(dir.file("x.wav"), wav_bytes({0}, 16000, 1, /*bits=*/8));
    CHECK_THROWS_AS(read_wav(dir.file("x.wav")), UnsupportedFormat);
  }
  SUBCASE("non-PCM format tag") {
    testsupport::write_file(dir.file("x.wav"), wav_bytes({0}, 16000, 1, 16, /*format_tag=*/3));
    CHECK_THROWS_AS(read_wav(dir.file("x.wav")), UnsupportedFormat);
  }
  SUBCASE("data chunk shorter than declared") {
    std::string bytes = wav_bytes({1, 2, 3, 4});
    bytes.resize(bytes.size() - 3);
    testsupport::write_file(dir.file("x.wav"), bytes);
    CHECK_THROWS_AS(read_wav(dir.file("x.wav")), TruncatedData);
  }
}

TEST_CASE("read_wav skips unknown RIFF chunks") {
  TempDir dir("wav_chunks");
  std::string list_chunk = "LIST";
  const std::string payload = "INFOsoftware?";  // odd length, exercises pad byte
  for (int i = 0; i < 4; ++i)
    list_chunk.push_back(static_cast<char>((payload.size() >> (8 * i)) & 0xff));
  list_chunk += payload;
  list_chunk.push_back('\0');  // pad

  const auto path = dir.file("listed.wav");
  testsupport::write_file(path, wav_bytes({100, -100}, 8000, 1, 16, 1, list_chunk));
  const Signal s = read_wav(path);
  CHECK(s.sample_rate_hz == 8000);
  REQUIRE(s.samples.size() == 2);
  CHECK(s.samples[0] == doctest::Approx(100.0 / 32768.0));
}

TEST_CASE("write_wav encodes round(s*32767) with clamping") {
  TempDir dir("wav_encode");

  auto data_of = [&](double sample) {
    const auto path = dir.file("one.wav");
    write_wav(Signal{{sample}, 16000}, path);
    const std::string bytes = testsupport::read_file(path);
    REQUIRE(bytes.size() == 46);
    const auto lo = static_cast<unsigned char>(bytes[44]);
    const auto hi = static_cast<unsigned char>(bytes[45]);
    return static_cast<std::int16_t>(lo | (hi << 8));
  };

  CHECK(data_of(0.0) == 0);
  CHECK(data_of(1.0) == 32767);
  CHECK(data_of(-1.0) == -32767);
  CHECK(data_of(2.0) == 32767);    // clamp
  CHECK(data_of(-2.0) == -32768);  // clamp

  // decoding the emitted file gives -32767/32768
  write_wav(Signal{{-1.0}, 16000}, dir.file("neg.wav"));
  const Signal back = read_wav(dir.file("neg.wav"));
  CHECK(back.samples[0] == -32767.0 / 32768.0);

  CHECK_THROWS_AS(write_wav(Signal{{}, 16000}, dir.file("empty.wav")), EmptySignal);
}

TEST_CASE("write then read is exact on the stable sample grid") {
  // Encoding is round(s*32767) while decoding divides by 32768, so the
  // identity holds exactly for samples v/32768 with |v| <= 16384 (above
  // that the two scale factors drift apart by a full step).
  TempDir dir("wav_roundtrip");
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> len(1, 400);
  std::uniform_int_distribution<int> value(-16384, 16384);

  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::int16_t> ints(static_cast<std::size_t>(len(rng)));
    for (auto& v : ints) v = static_cast<std::int16_t>(value(rng));

    const auto original = dir.file("orig.wav");
    testsupport::write_file(original, wav_bytes(ints));
    const Signal decoded = read_wav(original);

    const auto rewritten = dir.file("round.wav");
    write_wav(decoded, rewritten);

    const std::string a = testsupport::read_file(original);
    const std::string b = testsupport::read_file(rewritten);
    REQUIRE(a.size() >= 44);
    CHECK(a.substr(a.size() - ints.size() * 2) == b.substr(b.size() - ints.size() * 2));

    const Signal again = read_wav(rewritten);
    CHECK(again.samples == decoded.samples);
  }
}

TEST_CASE("synthesize renders closed-form sines") {
  ToneSpec spec;
  spec.segments = {{ToneSegment::Kind::Sine, 1000.0, 0.0, 0.01}};
  spec.sample_rate_hz = 16000;
  spec.amplitude = 0.5;

  const Signal s = synthesize(spec);
  REQUIRE(s.samples.size() == 160);
  for (std::size_t n = 0; n < 16; ++n) {
    const double expected = 0.5 * std::sin(2.0 * M_PI * 1000.0 * static_cast<double>(n) / 16000.0);
    CHECK(s.samples[n] == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(s.samples[4] == doctest::Approx(0.5).epsilon(1e-15));  // sin(pi/2)
}

TEST_CASE("synthesize edge cases") {
  ToneSpec spec;
  spec.sample_rate_hz = 16000;

  SUBCASE("zero amplitude gives silence") {
    spec.amplitude = 0.0;
    spec.segments = {{ToneSegment::Kind::Sine, 440.0, 0.0, 0.05}};
    for (double v : synthesize(spec).samples) CHECK(v == 0.0);
  }
  SUBCASE("aliasing frequency") {
    spec.segments = {{ToneSegment::Kind::Sine, 9000.0, 0.0, 0.05}};
    CHECK_THROWS_AS(synthesize(spec), InvalidSpec);
  }
  SUBCASE("chirp endpoint aliasing") {
    spec.segments = {{ToneSegment::Kind::Chirp, 400.0, 8000.0, 0.05}};
    CHECK_THROWS_AS(synthesize(spec), InvalidSpec);
  }
  SUBCASE("non-positive duration") {
    spec.segments = {{ToneSegment::Kind::Sine, 440.0, 0.0, 0.0}};
    CHECK_THROWS_AS(synthesize(spec), InvalidSpec);
  }
  SUBCASE("amplitude out of range") {
    spec.amplitude = 1.5;
    spec.segments = {{ToneSegment::Kind::Sine, 440.0, 0.0, 0.05}};
    CHECK_THROWS_AS(synthesize(spec), InvalidSpec);
  }
}

TEST_CASE("synthesis is deterministic") {
  const ToneSpec spec = parse_tone_spec("sine:700:0.1,silence:0.02,chirp:300:1200:0.1", 16000, 0.4);
  const Signal a = synthesize(spec);
  const Signal b = synthesize(spec);
  CHECK(a.samples == b.samples);
  CHECK(a.samples.size() == static_cast<std::size_t>((0.1 + 0.02 + 0.1) * 16000 + 0.5));
}

TEST_CASE("parse_tone_spec rejects malformed text") {
  CHECK_THROWS_AS(parse_tone_spec("", 16000, 0.5), InvalidSpec);
  CHECK_THROWS_AS(parse_tone_spec("square:100:0.1", 16000, 0.5), InvalidSpec);
  CHECK_THROWS_AS(parse_tone_spec("sine:100", 16000, 0.5), InvalidSpec);
  CHECK_THROWS_AS(parse_tone_spec("sine:abc:0.1", 16000, 0.5), InvalidSpec);
  CHECK_THROWS_AS(parse_tone_spec("chirp:100:0.1", 16000, 0.5), InvalidSpec);
}
