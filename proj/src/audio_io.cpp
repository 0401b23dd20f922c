#include "wordrec/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <sstream>

#include "wordrec/numeric_text.hpp"

namespace wordrec {

namespace {

constexpr double kDecodeScale = 1.0 / 32768.0;
constexpr double kEncodeScale = 32767.0;

std::uint32_t read_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32le(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16le(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

}  // namespace

Signal read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("cannot open " + path.string());

  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t size = bytes.size();

  if (size < 12 || bytes.compare(0, 4, "RIFF") != 0 || bytes.compare(8, 4, "WAVE") != 0)
    throw NotWav(path.string() + ": not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t format_tag = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  std::size_t data_offset = 0;
  std::uint32_t data_size = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= size) {
    const std::string id = bytes.substr(pos, 4);
    const std::uint32_t chunk_size = read_u32le(p + pos + 4);
    pos += 8;
    if (id == "fmt ") {
      if (pos + 16 > size) throw NotWav(path.string() + ": truncated fmt chunk");
      format_tag = read_u16le(p + pos);
      channels = read_u16le(p + pos + 2);
      sample_rate = read_u32le(p + pos + 4);
      bits = read_u16le(p + pos + 14);
      have_fmt = true;
    } else if (id == "data") {
      data_offset = pos;
      data_size = chunk_size;
      have_data = true;
    }
    // chunks are word-aligned; odd sizes carry one pad byte
    pos += chunk_size + (chunk_size & 1);
  }

  if (!have_fmt) throw NotWav(path.string() + ": missing fmt chunk");
  if (!have_data) throw NotWav(path.string() + ": missing data chunk");
  if (format_tag != 1)
    throw UnsupportedFormat(path.string() + ": format tag " + std::to_string(format_tag) +
                            ", only integer PCM is supported");
  if (channels != 1)
    throw UnsupportedFormat(path.string() + ": " + std::to_string(channels) +
                            " channels, only mono is supported");
  if (bits != 16)
    throw UnsupportedFormat(path.string() + ": " + std::to_string(bits) +
                            " bits/sample, only 16 is supported");
  if (data_offset + data_size > size)
    throw TruncatedData(path.string() + ": data chunk declares " + std::to_string(data_size) +
                        " bytes but the file ends early");

  Signal signal;
  signal.sample_rate_hz = static_cast<int>(sample_rate);
  const std::size_t n = data_size / 2;
  signal.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = read_u16le(p + data_offset + 2 * i);
    signal.samples[i] = static_cast<std::int16_t>(u) * kDecodeScale;
  }
  return signal;
}

void write_wav(const Signal& signal, const std::filesystem::path& path) {
  if (signal.samples.empty()) throw EmptySignal("refusing to write an empty WAV file");

  std::string data;
  data.reserve(signal.samples.size() * 2);
  for (double s : signal.samples) {
    long v = std::lround(s * kEncodeScale);
    v = std::clamp(v, -32768L, 32767L);
    put_u16le(data, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }

  const std::uint32_t data_size = static_cast<std::uint32_t>(data.size());
  const std::uint32_t rate = static_cast<std::uint32_t>(signal.sample_rate_hz);

  std::string out;
  out.reserve(44 + data.size());
  out += "RIFF";
  put_u32le(out, 36 + data_size);
  out += "WAVE";
  out += "fmt ";
  put_u32le(out, 16);
  put_u16le(out, 1);   // integer PCM
  put_u16le(out, 1);   // mono
  put_u32le(out, rate);
  put_u32le(out, rate * 2);  // byte rate
  put_u16le(out, 2);   // block align
  put_u16le(out, 16);  // bits per sample
  out += "data";
  put_u32le(out, data_size);
  out += data;

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoFailure("cannot open " + path.string() + " for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  f.flush();
  if (!f) throw IoFailure("short write to " + path.string());
}

Signal synthesize(const ToneSpec& spec) {
  if (spec.sample_rate_hz <= 0) throw InvalidSpec("sample rate must be positive");
  if (spec.amplitude < 0.0 || spec.amplitude > 1.0)
    throw InvalidSpec("amplitude must lie in [0, 1]");
  if (spec.segments.empty()) throw InvalidSpec("tone spec has no segments");

  const double fs = spec.sample_rate_hz;
  const double nyquist = fs / 2.0;
  for (const auto& seg : spec.segments) {
    if (!(seg.duration_s > 0.0)) throw InvalidSpec("segment duration must be positive");
    if (seg.kind == ToneSegment::Kind::Silence) continue;
    const double fmax =
        seg.kind == ToneSegment::Kind::Chirp ? std::max(seg.freq_hz, seg.freq_end_hz) : seg.freq_hz;
    const double fmin =
        seg.kind == ToneSegment::Kind::Chirp ? std::min(seg.freq_hz, seg.freq_end_hz) : seg.freq_hz;
    if (fmin < 0.0) throw InvalidSpec("segment frequency must be non-negative");
    if (fmax >= nyquist)
      throw InvalidSpec("segment frequency " + format_double(fmax) + " Hz aliases at " +
                        format_double(fs) + " Hz sampling");
  }

  Signal signal;
  signal.sample_rate_hz = spec.sample_rate_hz;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (const auto& seg : spec.segments) {
    const auto n_samples = static_cast<std::size_t>(std::llround(seg.duration_s * fs));
    for (std::size_t n = 0; n < n_samples; ++n) {
      const double t = static_cast<double>(n) / fs;
      double value = 0.0;
      switch (seg.kind) {
        case ToneSegment::Kind::Silence:
          break;
        case ToneSegment::Kind::Sine:
          value = spec.amplitude * std::sin(two_pi * seg.freq_hz * t);
          break;
        case ToneSegment::Kind::Chirp: {
          const double sweep = (seg.freq_end_hz - seg.freq_hz) / seg.duration_s;
          value = spec.amplitude * std::sin(two_pi * (seg.freq_hz * t + 0.5 * sweep * t * t));
          break;
        }
      }
      signal.samples.push_back(value);
    }
  }
  if (signal.samples.empty()) throw InvalidSpec("tone spec renders to zero samples");
  return signal;
}

ToneSpec parse_tone_spec(const std::string& text, int sample_rate_hz, double amplitude) {
  ToneSpec spec;
  spec.sample_rate_hz = sample_rate_hz;
  spec.amplitude = amplitude;

  std::stringstream segments(text);
  std::string item;
  while (std::getline(segments, item, ',')) {
    std::vector<std::string> parts;
    std::stringstream fields(item);
    std::string field;
    while (std::getline(fields, field, ':')) parts.push_back(field);
    if (parts.empty()) throw InvalidSpec("empty segment in tone spec");

    ToneSegment seg;
    auto need = [&](std::size_t n) {
      if (parts.size() != n + 1)
        throw InvalidSpec("segment '" + item + "': expected " + std::to_string(n) + " fields");
    };
    auto num = [&](std::size_t i) {
      double v = 0.0;
      if (!parse_double(parts[i], v))
        throw InvalidSpec("segment '" + item + "': bad number '" + parts[i] + "'");
      return v;
    };
    if (parts[0] == "sine") {
      need(2);
      seg.kind = ToneSegment::Kind::Sine;
      seg.freq_hz = num(1);
      seg.duration_s = num(2);
    } else if (parts[0] == "chirp") {
      need(3);
      seg.kind = ToneSegment::Kind::Chirp;
      seg.freq_hz = num(1);
      seg.freq_end_hz = num(2);
      seg.duration_s = num(3);
    } else if (parts[0] == "silence") {
      need(1);
      seg.kind = ToneSegment::Kind::Silence;
      seg.duration_s = num(1);
    } else {
      throw InvalidSpec("unknown segment kind '" + parts[0] + "'");
    }
    spec.segments.push_back(seg);
  }
  if (spec.segments.empty()) throw InvalidSpec("tone spec has no segments");
  return spec;
}

}  // namespace wordrec
