#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wordrec/dtw.hpp"
#include "wordrec/features.hpp"

namespace wordrec {

// One enrolled utterance. `index` is the k in the on-disk name
// <label>.<k>.tpl; labels contain no whitespace or path separators.
struct Template {
  std::string label;
  int index = 0;
  FeatureMatrix features;
};

bool valid_label(const std::string& label);

// Directory of .tpl files, loaded eagerly. All templates in one store
// share a single config fingerprint.
class Store {
public:
  // Parses every *.tpl in the directory. Throws CorruptTemplate (names
  // the offending file) and MixedFingerprints.
  static Store load(const std::filesystem::path& directory);

  // Opens a store directory without requiring existing templates
  // (enrollment into a fresh directory).
  static Store open(const std::filesystem::path& directory);

  const std::filesystem::path& directory() const { return directory_; }
  bool empty() const { return by_label_.empty(); }
  std::size_t size() const;

  // Fingerprint shared by the loaded templates; empty for an empty store.
  const std::string& fingerprint() const { return fingerprint_; }

  // Labels in lexicographic order.
  const std::map<std::string, std::vector<Template>>& templates() const { return by_label_; }

  // Writes <label>.<k>.tpl with k = the smallest unused index for that
  // label, and adds the template to the in-memory store. Returns the
  // path written. Throws FingerprintMismatch if the template was
  // produced under a different config than the store contents, and
  // IoFailure on write errors.
  std::filesystem::path save(const Template& tpl);

private:
  std::filesystem::path directory_;
  std::string fingerprint_;
  std::map<std::string, std::vector<Template>> by_label_;
};

std::filesystem::path save_template(Store& store, const Template& tpl);

struct LabelDistance {
  std::string label;
  double distance = 0.0;
};

struct RecognizeStats {
  std::size_t cells_visited = 0;  // summed over all template alignments
  std::size_t comparisons = 0;
};

// Aligns the query against every template; per label keeps the minimum
// distance over that label's utterances (normalized or raw per
// cfg.normalize). Labels are returned best first, ties broken
// lexicographically. Throws NoTemplates and FingerprintMismatch.
std::vector<LabelDistance> recognize(const Store& store, const FeatureMatrix& query,
                                     const DtwConfig& cfg = {},
                                     RecognizeStats* stats = nullptr);

}  // namespace wordrec
