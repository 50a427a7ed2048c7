#include "kpindex/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "kpindex/error.hpp"

namespace kpindex {

void RankParams::validate() const {
  if (!(damping > 0.0 && damping < 1.0)) {
    throw UsageError("damping must lie in (0, 1)");
  }
  if (!(tol > 0.0)) throw UsageError("tol must be positive");
  if (max_iter < 1) throw UsageError("max_iter must be at least 1");
  if (!(gamma_absent >= 0.0)) throw UsageError("gamma_absent must be >= 0");
  if (top_n < 1) throw UsageError("top_n must be at least 1");
}

PageRankResult pagerank_iterate(const SemMultiGraph& g, const RankParams& p) {
  if (g.empty()) throw std::invalid_argument("empty graph");

  const std::size_t n = g.node_count();
  std::vector<const std::string*> keys;
  std::unordered_map<std::string, std::size_t> index;
  keys.reserve(n);
  for (const auto& [key, info] : g.nodes()) {
    index.emplace(key, keys.size());
    keys.push_back(&key);
  }

  // Both layers of a pair collapse into one undirected weight.
  std::map<std::pair<std::size_t, std::size_t>, double> pair_weight;
  for (const auto& [ek, e] : g.edges()) {
    pair_weight[{index.at(e.u), index.at(e.v)}] += e.weight;
  }
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  std::vector<double> strength(n, 0.0);
  for (const auto& [uv, w] : pair_weight) {
    adj[uv.first].emplace_back(uv.second, w);
    adj[uv.second].emplace_back(uv.first, w);
    strength[uv.first] += w;
    strength[uv.second] += w;
  }

  PageRankResult result;
  const double teleport = (1.0 - p.damping) / static_cast<double>(n);
  std::vector<double> score(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < p.max_iter; ++iter) {
    for (std::size_t u = 0; u < n; ++u) {
      double flow = 0.0;
      for (const auto& [v, w] : adj[u]) flow += w / strength[v] * score[v];
      next[u] = teleport + p.damping * flow;
    }
    double residual = 0.0;
    for (std::size_t u = 0; u < n; ++u) residual += std::fabs(next[u] - score[u]);
    score.swap(next);
    result.residuals.push_back(residual);
    if (residual <= p.tol) {
      result.converged = true;
      break;
    }
  }

  double total = 0.0;
  for (double s : score) total += s;
  for (std::size_t u = 0; u < n; ++u) {
    result.scores.emplace(*keys[u], score[u] / total);
  }
  return result;
}

std::vector<RankedKeyphrase> rank_keyphrases(const SemMultiGraph& g,
                                             const ScoreMap& scores,
                                             const RankParams& p) {
  std::vector<RankedKeyphrase> out;
  for (const auto& [key, info] : g.nodes()) {
    auto it = scores.find(key);
    if (it == scores.end()) continue;
    const double factor = info.origin == Origin::kAbsent ? p.gamma_absent : 1.0;
    const double s = factor * it->second;
    if (!(s > 0.0)) continue;
    out.push_back({key, info.surface, s, info.origin,
                   {info.source_docs.begin(), info.source_docs.end()}});
  }
  std::sort(out.begin(), out.end(),
            [](const RankedKeyphrase& a, const RankedKeyphrase& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.key < b.key;
            });
  if (out.size() > p.top_n) out.resize(p.top_n);
  return out;
}

}  // namespace kpindex
