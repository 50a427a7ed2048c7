#pragma once

// Test-only fixtures and oracles. Nothing here calls into the code paths it
// is used to check.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kpindex/corpus.hpp"
#include "kpindex/graph.hpp"

namespace kpindex::testing {

struct RawDoc {
  std::string id;
  std::string title;
  std::string abstract;
  std::optional<std::vector<std::string>> gold;
};

Corpus make_corpus(const std::vector<RawDoc>& docs);
std::string to_jsonl(const std::vector<RawDoc>& docs);

/// Two planted topics. Within a topic, documents sit on a ring and each
/// adjacent pair shares `link_words` words of its own. Each document has
/// `present_gold` gold phrases in its own text and `absent_gold` gold phrases
/// that appear only in the text of its two ring neighbors.
///
/// Documents alternate between long abstracts (every own phrase repeated
/// `long_repeats` times) and short ones (own phrases once, title phrases only
/// in the title). A neighbor repeats a document's absent phrases
/// `long_inject_repeats` or `short_inject_repeats` times accordingly.
struct SyntheticOptions {
  std::size_t docs_per_topic = 20;
  std::size_t present_gold = 7;
  std::size_t absent_gold = 3;
  std::size_t link_words = 100;
  std::size_t long_repeats = 5;
  std::size_t long_inject_repeats = 2;
  std::size_t short_inject_repeats = 4;
  std::uint32_t seed = 20240611;
};

struct SyntheticCorpus {
  std::vector<RawDoc> docs;
  // doc id -> its absent (injected) gold phrases
  std::map<std::string, std::vector<std::string>> injected;
  // doc id -> topic label ("a" or "b")
  std::map<std::string, std::string> topic;
};

SyntheticCorpus synthetic_corpus(const SyntheticOptions& opts = {});

/// Three gold-annotated documents plus one without gold, and fixed model
/// output for each, small enough to score by hand.
std::vector<RawDoc> hand_scored_docs();
std::map<std::string, std::vector<std::string>> hand_scored_predictions();

/// Target "a" plus one neighbor "b" whose text pairs the novel phrase
/// "semantic index" with phrases of "a".
std::vector<RawDoc> semantic_index_docs();

/// Random undirected graph with distinct-key nodes and DOCUMENT/DOMAIN edges.
SemMultiGraph random_graph(std::mt19937& rng, std::size_t max_nodes,
                           double edge_prob, bool with_domain);

/// Stationary scores by solving (I - d M) x = (1 - d)/N directly with
/// Gaussian elimination, then rescaling to sum 1.
std::map<std::string, double> pagerank_linear_solve(const SemMultiGraph& g,
                                                    double damping);

/// Components via boolean transitive closure (Floyd-Warshall style).
std::set<std::set<std::string>> closure_components(const SemMultiGraph& g);

/// Exhaustive tf-idf cosine over every pair, computed from scratch.
struct BruteNeighbor {
  std::string id;
  double sim;
};
std::map<std::string, std::vector<BruteNeighbor>> brute_force_neighbors(
    const Corpus& corpus, std::size_t k, double min_sim);

}  // namespace kpindex::testing
