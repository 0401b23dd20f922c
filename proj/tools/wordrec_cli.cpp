// Command-line front end: feature extraction, template enrollment,
// isolated-word recognition and plot-data export.
//
// Exit codes: 0 success, 2 usage error, 3 input/format/io error,
// 4 empty template store.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wordrec/audio_io.hpp"
#include "wordrec/dtw.hpp"
#include "wordrec/features.hpp"
#include "wordrec/numeric_text.hpp"
#include "wordrec/template_store.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitEmptyStore = 4;

struct CliOptions {
  wordrec::FrontEndConfig frontend;
  std::optional<int> band;
  std::optional<int> max_run;
  bool raw_distance = false;
};

void add_frontend_flags(CLI::App* cmd, wordrec::FrontEndConfig& cfg) {
  cmd->add_option("--frame-len", cfg.frame_len, "Samples per frame (N)")
      ->capture_default_str();
  cmd->add_option("--frame-step", cfg.frame_step, "Hop between frames (M)")
      ->capture_default_str();
  cmd->add_option("--preemph", cfg.preemphasis_a, "Pre-emphasis coefficient")
      ->capture_default_str();
  cmd->add_option("--nfilt", cfg.num_filters, "Number of mel filters")->capture_default_str();
  cmd->add_option("--nceps", cfg.num_ceps, "Kept cepstral coefficients")->capture_default_str();
  cmd->add_option("--fft-size", cfg.fft_size, "FFT length (power of two)")
      ->capture_default_str();
  cmd->add_option("--rate", cfg.sample_rate_hz, "Expected sample rate (Hz)")
      ->capture_default_str();
}

void add_dtw_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--band", opt.band, "Sakoe-Chiba band radius r (cells from the diagonal)");
  cmd->add_option("--max-run", opt.max_run,
                  "Slope constraint: max consecutive same-axis steps");
}

wordrec::DtwConfig dtw_config(const CliOptions& opt) {
  wordrec::DtwConfig cfg;
  cfg.band_radius = opt.band;
  cfg.max_run = opt.max_run;
  cfg.normalize = !opt.raw_distance;
  return cfg;
}

int run_extract(const std::string& wav, const std::string& out, const CliOptions& opt) {
  const wordrec::Signal signal = wordrec::read_wav(wav);
  const wordrec::FeatureMatrix features = wordrec::extract_features(signal, opt.frontend);
  wordrec::write_features_csv(features.rows, out);
  std::cout << "frames=" << features.rows.rows() << " dims=" << features.rows.cols() << "\n";
  return kExitOk;
}

int run_enroll(const std::string& label, const std::vector<std::string>& wavs,
               const std::string& store_dir, const CliOptions& opt) {
  wordrec::Store store = std::filesystem::is_directory(store_dir)
                             ? wordrec::Store::load(store_dir)
                             : wordrec::Store::open(store_dir);
  for (const auto& wav : wavs) {
    const wordrec::Signal signal = wordrec::read_wav(wav);
    wordrec::Template tpl;
    tpl.label = label;
    tpl.features = wordrec::extract_features(signal, opt.frontend);
    const auto file = wordrec::save_template(store, tpl);
    std::cout << file.string() << "\n";
  }
  return kExitOk;
}

int run_recognize(const std::string& wav, const std::string& store_dir, int top,
                  const CliOptions& opt) {
  const wordrec::Store store = wordrec::Store::load(store_dir);
  const wordrec::Signal signal = wordrec::read_wav(wav);
  const wordrec::FeatureMatrix query = wordrec::extract_features(signal, opt.frontend);
  const auto ranking = wordrec::recognize(store, query, dtw_config(opt));
  const std::size_t limit =
      top > 0 ? std::min<std::size_t>(ranking.size(), static_cast<std::size_t>(top))
              : ranking.size();
  for (std::size_t i = 0; i < limit; ++i)
    std::cout << ranking[i].label << "\t" << wordrec::format_double(ranking[i].distance) << "\n";
  return kExitOk;
}

int run_compare(const std::string& csv_a, const std::string& csv_b, const CliOptions& opt) {
  const wordrec::Matrix a = wordrec::read_features_csv(csv_a);
  const wordrec::Matrix b = wordrec::read_features_csv(csv_b);
  const wordrec::WarpResult r = wordrec::dtw_align(a, b, dtw_config(opt));
  std::cout << "distance=" << wordrec::format_double(r.distance)
            << " normalized=" << wordrec::format_double(r.normalized_distance)
            << " path_len=" << r.path.size() << "\n";
  return kExitOk;
}

int run_synth(const std::string& spec_text, const std::string& out, int rate, double amplitude) {
  const wordrec::ToneSpec spec = wordrec::parse_tone_spec(spec_text, rate, amplitude);
  wordrec::write_wav(wordrec::synthesize(spec), out);
  std::cout << out << "\n";
  return kExitOk;
}

int run_export_plot(const std::string& kind, const std::vector<std::string>& inputs,
                    const std::string& out, const CliOptions& opt) {
  auto need_inputs = [&](std::size_t n) {
    if (inputs.size() != n)
      throw CLI::ValidationError("export-plot " + kind + " needs " + std::to_string(n) +
                                 " input file(s)");
  };
  if (kind == "signal") {
    need_inputs(1);
    const wordrec::Signal signal = wordrec::read_wav(inputs[0]);
    wordrec::Matrix column(signal.samples.size(), 1);
    for (std::size_t i = 0; i < signal.samples.size(); ++i) column(i, 0) = signal.samples[i];
    wordrec::write_features_csv(column, out);
  } else if (kind == "mfcc") {
    need_inputs(1);
    const wordrec::Signal signal = wordrec::read_wav(inputs[0]);
    wordrec::write_features_csv(wordrec::extract_features(signal, opt.frontend).rows, out);
  } else if (kind == "costmatrix") {
    need_inputs(2);
    const wordrec::Matrix a = wordrec::read_features_csv(inputs[0]);
    const wordrec::Matrix b = wordrec::read_features_csv(inputs[1]);
    wordrec::write_cost_matrix_csv(wordrec::dtw_cost_matrix(a, b, dtw_config(opt)), out);
  } else if (kind == "path") {
    need_inputs(2);
    const wordrec::Matrix a = wordrec::read_features_csv(inputs[0]);
    const wordrec::Matrix b = wordrec::read_features_csv(inputs[1]);
    wordrec::write_path_csv(wordrec::dtw_align(a, b, dtw_config(opt)).path, out);
  } else {
    throw CLI::ValidationError("unknown plot kind '" + kind +
                               "' (expected signal, mfcc, costmatrix or path)");
  }
  std::cout << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isolated-word recognition: MFCC front end + DTW template matching"};
  app.require_subcommand(1);

  CliOptions opt;

  std::string wav, out, label, store_dir, spec_text, kind, csv_a, csv_b;
  std::vector<std::string> wavs, inputs;
  int top = 0;
  int synth_rate = 16000;
  double synth_amplitude = 0.5;

  auto* extract = app.add_subcommand("extract", "Extract a feature CSV from a WAV file");
  extract->add_option("wav", wav, "Input WAV file")->required();
  extract->add_option("--out", out, "Output feature CSV")->required();
  add_frontend_flags(extract, opt.frontend);

  auto* enroll = app.add_subcommand("enroll", "Add template utterances for a word");
  enroll->add_option("label", label, "Word label")->required();
  enroll->add_option("wavs", wavs, "One WAV file per utterance")->required();
  enroll->add_option("--store", store_dir, "Template store directory")->required();
  add_frontend_flags(enroll, opt.frontend);

  auto* recognize = app.add_subcommand("recognize", "Rank stored words against an utterance");
  recognize->add_option("wav", wav, "Input WAV file")->required();
  recognize->add_option("--store", store_dir, "Template store directory")->required();
  recognize->add_option("--top", top, "Print only the best k labels");
  recognize->add_flag("--raw-distance", opt.raw_distance,
                      "Rank by raw accumulated distance instead of distance/(n+m)");
  add_dtw_flags(recognize, opt);
  add_frontend_flags(recognize, opt.frontend);

  auto* compare = app.add_subcommand("compare", "DTW-align two feature CSV files");
  compare->add_option("a", csv_a, "First feature CSV")->required();
  compare->add_option("b", csv_b, "Second feature CSV")->required();
  add_dtw_flags(compare, opt);

  auto* synth = app.add_subcommand("synth", "Render a deterministic tone-sequence WAV");
  synth->add_option("--spec", spec_text,
                    "Segments: sine:<hz>:<s> | chirp:<hz>:<hz>:<s> | silence:<s>, comma-separated")
      ->required();
  synth->add_option("--out", out, "Output WAV file")->required();
  synth->add_option("--rate", synth_rate, "Sample rate in Hz")->capture_default_str();
  synth->add_option("--amplitude", synth_amplitude, "Peak amplitude in [0,1]")
      ->capture_default_str();

  auto* plot = app.add_subcommand("export-plot", "Write CSV data behind the usual plots");
  plot->add_option("kind", kind, "signal | mfcc | costmatrix | path")->required();
  plot->add_option("inputs", inputs, "WAV (signal, mfcc) or feature CSVs (costmatrix, path)")
      ->required();
  plot->add_option("--out", out, "Output CSV")->required();
  add_dtw_flags(plot, opt);
  add_frontend_flags(plot, opt.frontend);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (extract->parsed()) return run_extract(wav, out, opt);
    if (enroll->parsed()) {
      if (!wordrec::valid_label(label)) {
        std::cerr << "invalid label '" << label
                  << "': no whitespace or path separators allowed\n";
        return kExitUsage;
      }
      return run_enroll(label, wavs, store_dir, opt);
    }
    if (recognize->parsed()) return run_recognize(wav, store_dir, top, opt);
    if (compare->parsed()) return run_compare(csv_a, csv_b, opt);
    if (synth->parsed()) return run_synth(spec_text, out, synth_rate, synth_amplitude);
    if (plot->parsed()) return run_export_plot(kind, inputs, out, opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const wordrec::NoTemplates& e) {
    std::cerr << e.what() << "\n";
    return kExitEmptyStore;
  } catch (const wordrec::InvalidLabel& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const wordrec::InvalidConfig& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const wordrec::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
