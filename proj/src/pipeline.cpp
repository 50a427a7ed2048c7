#include "kpindex/pipeline.hpp"

#include <limits>

#include "kpindex/error.hpp"
#include "kpindex/parallel.hpp"

namespace kpindex {

Ranking rank_single_document(const Document& doc, const CandidateSet& candidates,
                             const Config& config) {
  const SemMultiGraph g = build_document_graph(doc, candidates, config.window);
  if (g.empty()) return {};
  const RankParams p = config.rank_params();
  return rank_keyphrases(g, pagerank(g, p), p);
}

KeyphraseExtractor::KeyphraseExtractor(const Corpus& corpus, Config config)
    : corpus_(&corpus), config_(std::move(config)) {
  config_.validate();
  candidates_ = extract_all_candidates(corpus, config_.max_len);
  if (config_.k_neighbors > 0 && corpus.size() > 1) {
    const TfidfSimilarity provider(corpus);
    neighbors_ = all_neighbors(provider, config_.k_neighbors, config_.min_sim);
  } else {
    neighbors_.resize(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      neighbors_[i].source = corpus[i].id;
      neighbors_[i].k = config_.k_neighbors;
      neighbors_[i].min_sim = config_.min_sim;
    }
  }
}

SemMultiGraph KeyphraseExtractor::build_graph(std::size_t index) const {
  const Document& doc = (*corpus_)[index];
  SemMultiGraph g = build_document_graph(doc, candidates_[index], config_.window);

  std::vector<NeighborEvidence> evidence;
  for (const auto& nb : neighbors_[index].neighbors) {
    const std::size_t j = *corpus_->index_of(nb.id);
    evidence.push_back({nb.id, nb.sim, &candidates_[j]});
  }
  g = expand_graph(std::move(g), evidence, config_.expansion_params());
  return bridge_components(std::move(g), config_.beta);
}

Ranking KeyphraseExtractor::rank(std::size_t index, std::size_t top_n) const {
  const SemMultiGraph g = build_graph(index);
  if (g.empty()) return {};
  RankParams p = config_.rank_params();
  p.top_n = top_n;
  return rank_keyphrases(g, pagerank(g, p), p);
}

Ranking KeyphraseExtractor::extract(std::size_t index) const {
  return rank(index, config_.top_n);
}

Ranking KeyphraseExtractor::extract(const std::string& doc_id) const {
  auto idx = corpus_->index_of(doc_id);
  if (!idx) throw DataError("unknown document id " + doc_id);
  return extract(*idx);
}

Ranking KeyphraseExtractor::extract_unbounded(std::size_t index) const {
  return rank(index, std::numeric_limits<std::size_t>::max());
}

std::vector<Ranking> KeyphraseExtractor::extract_all() const {
  std::vector<Ranking> out(corpus_->size());
  parallel::for_each_index(corpus_->size(),
                           [&](std::size_t i) { out[i] = extract(i); });
  return out;
}

Ranking extract_pipeline(const std::string& doc_id, const Corpus& corpus,
                         const Config& config) {
  return KeyphraseExtractor(corpus, config).extract(doc_id);
}

}  // namespace kpindex
