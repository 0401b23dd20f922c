#include "wordrec/template_store.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "wordrec/errors.hpp"
#include "wordrec/numeric_text.hpp"

namespace wordrec {

namespace {

constexpr std::string_view kMagic = "MFCCTPL 1";

[[noreturn]] void corrupt(const std::filesystem::path& file, const std::string& why) {
  throw CorruptTemplate(file.string() + ": " + why);
}

Template parse_template_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) corrupt(file, "cannot open");

  std::string line;
  if (!std::getline(in, line) || line != kMagic) corrupt(file, "bad magic");

  if (!std::getline(in, line) || line.rfind("label ", 0) != 0) corrupt(file, "missing label line");
  Template tpl;
  tpl.label = line.substr(6);
  if (!valid_label(tpl.label)) corrupt(file, "invalid label '" + tpl.label + "'");

  if (!std::getline(in, line) || line.rfind("fingerprint ", 0) != 0)
    corrupt(file, "missing fingerprint line");
  tpl.features.config_fingerprint = line.substr(12);
  if (tpl.features.config_fingerprint.empty()) corrupt(file, "empty fingerprint");

  if (!std::getline(in, line) || line.rfind("shape ", 0) != 0) corrupt(file, "missing shape line");
  int t_rows = 0, t_cols = 0;
  {
    std::stringstream fields(line.substr(6));
    std::string a, b, rest;
    if (!(fields >> a >> b) || (fields >> rest) || !parse_int(a, t_rows) ||
        !parse_int(b, t_cols) || t_rows < 1 || t_cols < 1)
      corrupt(file, "bad shape line '" + line + "'");
  }

  Matrix rows(static_cast<std::size_t>(t_rows), static_cast<std::size_t>(t_cols));
  for (int r = 0; r < t_rows; ++r) {
    if (!std::getline(in, line)) corrupt(file, "truncated at data row " + std::to_string(r + 1));
    std::stringstream fields(line);
    std::string field;
    int c = 0;
    while (fields >> field) {
      if (c >= t_cols) corrupt(file, "too many fields in data row " + std::to_string(r + 1));
      double v = 0.0;
      if (!parse_double(field, v)) corrupt(file, "bad number '" + field + "'");
      if (!std::isfinite(v)) corrupt(file, "non-finite value in data row " + std::to_string(r + 1));
      rows(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = v;
      ++c;
    }
    if (c != t_cols)
      corrupt(file, "data row " + std::to_string(r + 1) + " has " + std::to_string(c) +
                        " fields, expected " + std::to_string(t_cols));
  }
  while (std::getline(in, line))
    if (!line.empty()) corrupt(file, "trailing data after the declared rows");

  tpl.features.rows = std::move(rows);
  return tpl;
}

void write_template_file(const std::filesystem::path& file, const Template& tpl) {
  std::ofstream out(file, std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + file.string() + " for writing");
  out << kMagic << '\n';
  out << "label " << tpl.label << '\n';
  out << "fingerprint " << tpl.features.config_fingerprint << '\n';
  out << "shape " << tpl.features.rows.rows() << ' ' << tpl.features.rows.cols() << '\n';
  for (std::size_t r = 0; r < tpl.features.rows.rows(); ++r) {
    for (std::size_t c = 0; c < tpl.features.rows.cols(); ++c) {
      if (c) out << ' ';
      out << format_double17(tpl.features.rows(r, c));
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoFailure("short write to " + file.string());
}

// index k from a "<label>.<k>.tpl" filename
int index_from_filename(const std::filesystem::path& file) {
  const std::string stem = file.stem().string();  // "<label>.<k>"
  const auto dot = stem.rfind('.');
  int k = 0;
  if (dot == std::string::npos || !parse_int(stem.substr(dot + 1), k) || k < 1)
    corrupt(file, "filename is not of the form <label>.<k>.tpl");
  return k;
}

}  // namespace

bool valid_label(const std::string& label) {
  if (label.empty()) return false;
  for (char ch : label) {
    if (ch == '/' || ch == '\\' || std::isspace(static_cast<unsigned char>(ch)) || ch == '\0')
      return false;
  }
  return true;
}

Store Store::open(const std::filesystem::path& directory) {
  Store store;
  store.directory_ = directory;
  return store;
}

Store Store::load(const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory))
    throw MissingFile("store directory " + directory.string() + " does not exist");

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory))
    if (entry.is_regular_file() && entry.path().extension() == ".tpl")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  Store store;
  store.directory_ = directory;
  std::set<std::pair<std::string, int>> seen;
  for (const auto& file : files) {
    Template tpl = parse_template_file(file);
    tpl.index = index_from_filename(file);
    if (!seen.emplace(tpl.label, tpl.index).second)
      corrupt(file, "duplicate template " + tpl.label + "." + std::to_string(tpl.index));
    if (store.fingerprint_.empty()) {
      store.fingerprint_ = tpl.features.config_fingerprint;
    } else if (store.fingerprint_ != tpl.features.config_fingerprint) {
      throw MixedFingerprints(file.string() + ": fingerprint '" +
                              tpl.features.config_fingerprint + "' differs from the store's '" +
                              store.fingerprint_ + "'");
    }
    store.by_label_[tpl.label].push_back(std::move(tpl));
  }
  for (auto& [label, tpls] : store.by_label_)
    std::sort(tpls.begin(), tpls.end(),
              [](const Template& a, const Template& b) { return a.index < b.index; });
  return store;
}

std::size_t Store::size() const {
  std::size_t n = 0;
  for (const auto& [label, tpls] : by_label_) n += tpls.size();
  return n;
}

std::filesystem::path Store::save(const Template& tpl) {
  if (!valid_label(tpl.label)) throw InvalidLabel("invalid template label '" + tpl.label + "'");
  if (tpl.features.rows.rows() == 0 || tpl.features.rows.cols() == 0)
    throw EmptySequence("refusing to save an empty template");
  if (tpl.features.config_fingerprint.empty())
    throw FingerprintMismatch("template has no config fingerprint");
  if (!fingerprint_.empty() && tpl.features.config_fingerprint != fingerprint_)
    throw FingerprintMismatch("template fingerprint '" + tpl.features.config_fingerprint +
                              "' does not match the store's '" + fingerprint_ + "'");

  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) throw IoFailure("cannot create store directory " + directory_.string());

  std::set<int> used;
  for (const auto& existing : by_label_[tpl.label]) used.insert(existing.index);
  int k = 1;
  while (used.count(k)) ++k;

  Template stored = tpl;
  stored.index = k;
  const auto file = directory_ / (tpl.label + "." + std::to_string(k) + ".tpl");
  write_template_file(file, stored);

  if (fingerprint_.empty()) fingerprint_ = stored.features.config_fingerprint;
  auto& tpls = by_label_[tpl.label];
  tpls.push_back(std::move(stored));
  std::sort(tpls.begin(), tpls.end(),
            [](const Template& a, const Template& b) { return a.index < b.index; });
  return file;
}

std::filesystem::path save_template(Store& store, const Template& tpl) { return store.save(tpl); }

std::vector<LabelDistance> recognize(const Store& store, const FeatureMatrix& query,
                                     const DtwConfig& cfg, RecognizeStats* stats) {
  if (store.empty()) throw NoTemplates("store at " + store.directory().string() + " is empty");
  if (query.config_fingerprint != store.fingerprint())
    throw FingerprintMismatch("query fingerprint '" + query.config_fingerprint +
                              "' does not match the store's '" + store.fingerprint() + "'");

  std::vector<LabelDistance> ranking;
  ranking.reserve(store.templates().size());
  for (const auto& [label, tpls] : store.templates()) {
    double best = std::numeric_limits<double>::infinity();
    for (const Template& tpl : tpls) {
      const WarpResult r = dtw_align(query.rows, tpl.features.rows, cfg);
      if (stats) {
        stats->cells_visited += r.cells_visited;
        ++stats->comparisons;
      }
      best = std::min(best, cfg.normalize ? r.normalized_distance : r.distance);
    }
    ranking.push_back({label, best});
  }
  // map iteration is lexicographic, stable sort keeps that order on ties
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const LabelDistance& a, const LabelDistance& b) {
                     return a.distance < b.distance;
                   });
  return ranking;
}

}  // namespace wordrec
