#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "kpindex/config.hpp"
#include "kpindex/corpus.hpp"
#include "kpindex/graph.hpp"
#include "kpindex/ranking.hpp"
#include "kpindex/similarity.hpp"

namespace kpindex {

using Ranking = std::vector<RankedKeyphrase>;

/// Ranks a document on its own co-occurrence graph (no neighbor evidence).
Ranking rank_single_document(const Document& doc, const CandidateSet& candidates,
                             const Config& config);

/// Keyphrase extraction over a fixed corpus:
/// candidates -> neighbors -> document graph -> expand -> bridge -> PageRank
/// -> ranking. Candidates and neighbor sets are computed once, up front.
class KeyphraseExtractor {
 public:
  KeyphraseExtractor(const Corpus& corpus, Config config);

  const Corpus& corpus() const { return *corpus_; }
  const Config& config() const { return config_; }

  const CandidateSet& candidates(std::size_t index) const {
    return candidates_[index];
  }
  /// Empty sets when k_neighbors == 0.
  const NeighborSet& neighbors(std::size_t index) const {
    return neighbors_[index];
  }

  /// The enriched multigraph fed to PageRank.
  SemMultiGraph build_graph(std::size_t index) const;

  /// Final ranking truncated to top_n.
  Ranking extract(std::size_t index) const;
  Ranking extract(const std::string& doc_id) const;

  /// Ranking without truncation (every positively scored node).
  Ranking extract_unbounded(std::size_t index) const;

  /// extract() for every document, in corpus order, in parallel.
  std::vector<Ranking> extract_all() const;

 private:
  Ranking rank(std::size_t index, std::size_t top_n) const;

  const Corpus* corpus_;
  Config config_;
  std::vector<CandidateSet> candidates_;
  std::vector<NeighborSet> neighbors_;
};

/// One-shot convenience wrapper around KeyphraseExtractor.
Ranking extract_pipeline(const std::string& doc_id, const Corpus& corpus,
                         const Config& config);

}  // namespace kpindex
