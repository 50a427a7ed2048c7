#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "kpindex/corpus.hpp"
#include "kpindex/ranking.hpp"
#include "kpindex/similarity.hpp"

namespace kpindex {

enum class GoldScope { kAll, kPresent, kAbsent };
inline constexpr std::array<GoldScope, 3> kGoldScopes = {
    GoldScope::kAll, GoldScope::kPresent, GoldScope::kAbsent};
const char* to_string(GoldScope scope);

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Normalizes each phrase, drops empties and later duplicates.
std::vector<std::string> normalize_predictions(std::span<const std::string> phrases);

struct GoldSplit {
  std::set<std::string> present;
  std::set<std::string> absent;

  std::set<std::string> all() const;
};

/// A normalized gold key is present iff its stems occur contiguously in the
/// document's stem stream without crossing a sentence break.
GoldSplit split_present_absent(std::span<const std::string> gold,
                               const Document& doc);

/// P = hits / min(k, |predicted|) (0 for no predictions), R = hits / |gold|.
/// `predicted` must already be normalized and deduplicated.
PRF f_at_k(std::span<const std::string> predicted, const std::set<std::string>& gold,
           std::size_t k);

/// A model maps a document to a ranked list of phrases (any surface form).
using ExtractionModel = std::function<std::vector<std::string>(std::size_t doc_index)>;

inline constexpr std::array<std::size_t, 2> kCutoffs = {5, 10};

struct DocumentEvaluation {
  std::string id;
  std::array<std::size_t, 3> gold_sizes{};  // by scope
  // [scope][cutoff index]
  std::array<std::array<PRF, kCutoffs.size()>, 3> scores{};
};

struct EvaluationReport {
  std::string model;
  nlohmann::ordered_json config;
  std::vector<DocumentEvaluation> documents;  // gold-annotated docs only
  std::vector<std::string> excluded;          // docs with no gold
  std::array<std::array<PRF, kCutoffs.size()>, 3> macro{};
  std::array<std::size_t, 3> scored_documents{};  // docs with non-empty scope gold
  std::size_t gold_total = 0;
  std::size_t gold_absent = 0;

  double absent_fraction() const {
    return gold_total == 0 ? 0.0
                           : static_cast<double>(gold_absent) /
                                 static_cast<double>(gold_total);
  }

  nlohmann::ordered_json to_json() const;
  /// Flat rows: doc id, scope, k, P, R, F1.
  void write_csv(std::ostream& out) const;
};

/// Runs `model` on every gold-annotated document (in parallel) and scores it
/// against the ALL, PRESENT and ABSENT gold sets. Throws DataError when no
/// document carries gold keyphrases.
EvaluationReport evaluate_corpus(const Corpus& corpus, const ExtractionModel& model,
                                 const std::string& model_name,
                                 nlohmann::ordered_json config_echo = {});

/// Gold statistics only (no model run).
struct GoldStatistics {
  std::size_t documents = 0;
  std::size_t gold_total = 0;
  std::size_t gold_absent = 0;
  double absent_fraction() const {
    return gold_total == 0 ? 0.0
                           : static_cast<double>(gold_absent) /
                                 static_cast<double>(gold_total);
  }
};
GoldStatistics gold_statistics(const Corpus& corpus);

/// Candidates ranked by sum over their stems of tf(stem) * idf(stem).
std::vector<RankedKeyphrase> tfidf_baseline(const Document& doc,
                                            const CandidateSet& candidates,
                                            const IdfTable& idf,
                                            const StopwordSet& stopwords,
                                            std::size_t top_n);
std::vector<RankedKeyphrase> tfidf_baseline(const Document& doc, const Corpus& corpus,
                                            std::size_t top_n,
                                            std::size_t max_len = kDefaultMaxLen);

}  // namespace kpindex
