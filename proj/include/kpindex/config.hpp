#pragma once

#include <cstddef>
#include <istream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "kpindex/graph.hpp"
#include "kpindex/ranking.hpp"
#include "kpindex/text.hpp"

namespace kpindex {

/// Every tunable of the extraction pipeline and the commands built on it.
struct Config {
  std::size_t max_len = kDefaultMaxLen;
  std::size_t window = kDefaultWindow;
  std::size_t k_neighbors = kDefaultNeighbors;
  double min_sim = kDefaultMinSim;
  double lambda_domain = 1.0;
  double beta = kDefaultBeta;
  std::size_t absent_quota = 10;
  double damping = 0.85;
  double tol = 1e-6;
  std::size_t max_iter = 100;
  double gamma_absent = 0.8;
  std::size_t top_n = 10;
  std::string stopwords_path;  // empty: built-in English list

  /// Recognised keys, in echo order.
  static const std::vector<std::string>& keys();

  /// Parses `value` into the field named `key`. Throws UsageError for an
  /// unknown key or an unparsable value. Does not range-check.
  void set(const std::string& key, const std::string& value);

  /// Throws UsageError if any field is outside its range.
  void validate() const;

  /// `key = value` lines; `#` starts a comment; values may be double-quoted.
  static Config parse(std::istream& in);
  static Config from_file(const std::string& path);

  RankParams rank_params() const;
  ExpansionParams expansion_params() const;
  StopwordSet load_stopwords() const;

  /// Same config with neighbor enrichment switched off.
  Config without_expansion() const;

  nlohmann::ordered_json to_json() const;

  friend bool operator==(const Config&, const Config&) = default;
};

}  // namespace kpindex
