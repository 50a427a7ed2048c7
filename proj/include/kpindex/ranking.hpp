#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "kpindex/graph.hpp"

namespace kpindex {

struct RankParams {
  double damping = 0.85;
  double tol = 1e-6;
  std::size_t max_iter = 100;
  double gamma_absent = 0.8;
  std::size_t top_n = 10;

  /// Throws UsageError if a field is out of range.
  void validate() const;
};

using ScoreMap = std::map<std::string, double>;

struct PageRankResult {
  ScoreMap scores;               // normalized to sum to 1
  std::vector<double> residuals;  // L1 change after each iteration
  bool converged = false;
};

/// Weighted PageRank over the combined (DOCUMENT + DOMAIN) weights:
///
///   S(u) <- (1 - d) / |V| + d * sum_{v ~ u} w(u, v) / W(v) * S(v)
///
/// starting from the uniform vector. Isolated nodes only receive the
/// teleport term, so the fixed point is rescaled to sum to 1 at the end.
/// Throws std::invalid_argument("empty graph") on a graph without nodes.
PageRankResult pagerank_iterate(const SemMultiGraph& g, const RankParams& p);

inline ScoreMap pagerank(const SemMultiGraph& g, const RankParams& p) {
  return pagerank_iterate(g, p).scores;
}

struct RankedKeyphrase {
  std::string key;
  std::string surface;
  double score = 0.0;
  Origin origin = Origin::kPresent;
  std::vector<std::string> sources;

  friend bool operator==(const RankedKeyphrase&, const RankedKeyphrase&) = default;
};

/// Applies gamma_absent to ABSENT nodes, drops non-positive scores, sorts by
/// score (ties by key) and keeps the first top_n.
std::vector<RankedKeyphrase> rank_keyphrases(const SemMultiGraph& g,
                                             const ScoreMap& scores,
                                             const RankParams& p);

}  // namespace kpindex
