#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "kpindex/config.hpp"
#include "kpindex/corpus.hpp"
#include "kpindex/evaluation.hpp"
#include "kpindex/index.hpp"

namespace kpindex {

/// Writes a `{"config": ...}` header line, then one
/// `{"id", "keyphrases": [{"phrase", "score", "origin"}]}` line per document
/// in id order. With a non-empty `dot_dir`, each document's enriched graph is
/// written to `<dot_dir>/<id>.dot`.
void run_extract(const Corpus& corpus, const Config& config, std::ostream& out,
                 const std::string& dot_dir = "");

/// `{"config": ...}` header, then `{"id", "neighbors": [{"id", "sim"}]}` lines.
void run_neighbors(const Corpus& corpus, const Config& config, std::ostream& out);

/// Index over TEXT plus, per document, the PRESENT keyphrases within the top_n
/// of the final ranking and every ABSENT keyphrase the ranking kept (at most
/// absent_quota of them).
InvertedIndex run_index(const Corpus& corpus, const Config& config);

/// Valid names: full, no-expansion, tfidf. Throws UsageError otherwise.
EvaluationReport run_evaluate(const Corpus& corpus, const Config& config,
                              const std::string& model);

const std::vector<std::string>& evaluation_models();

/// `{"query", "hits": [{"id", "score"}]}` as one JSON line.
void write_search_results(const std::string& query, const std::vector<SearchHit>& hits,
                          std::ostream& out);

}  // namespace kpindex
