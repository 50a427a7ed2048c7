#include "kpindex/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace kpindex {

const char* to_string(Origin origin) {
  return origin == Origin::kPresent ? "PRESENT" : "ABSENT";
}

const char* to_string(Layer layer) {
  return layer == Layer::kDocument ? "DOCUMENT" : "DOMAIN";
}

bool SemMultiGraph::add_node(const std::string& key, NodeInfo info) {
  return nodes_.emplace(key, std::move(info)).second;
}

void SemMultiGraph::add_weight(const std::string& a, const std::string& b,
                               Layer layer, double weight,
                               const std::set<std::string>& provenance) {
  if (a == b) throw std::invalid_argument("self-loop on " + a);
  if (!(weight > 0.0)) throw std::invalid_argument("non-positive edge weight");
  if (!has_node(a) || !has_node(b)) {
    throw std::invalid_argument("edge endpoint missing: " + a + " / " + b);
  }
  const auto& [u, v] = std::minmax(a, b);
  auto [it, inserted] = edges_.try_emplace(EdgeKey{u, v, layer});
  MultiEdge& e = it->second;
  if (inserted) {
    e.u = u;
    e.v = v;
    e.layer = layer;
  }
  e.weight += weight;
  e.provenance.insert(provenance.begin(), provenance.end());
}

const MultiEdge* SemMultiGraph::edge(const std::string& a, const std::string& b,
                                     Layer layer) const {
  const auto& [u, v] = std::minmax(a, b);
  auto it = edges_.find(EdgeKey{u, v, layer});
  return it == edges_.end() ? nullptr : &it->second;
}

double SemMultiGraph::combined_weight(const std::string& a,
                                      const std::string& b) const {
  double w = 0.0;
  if (const auto* e = edge(a, b, Layer::kDocument)) w += e->weight;
  if (const auto* e = edge(a, b, Layer::kDomain)) w += e->weight;
  return w;
}

std::size_t SemMultiGraph::edge_count(Layer layer) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(),
                    [&](const auto& kv) { return kv.second.layer == layer; }));
}

PairCounts count_cooccurrences(const CandidateSet& candidates,
                               std::size_t window) {
  struct Occ {
    std::size_t start;
    const std::string* key;
  };
  std::vector<Occ> occs;
  for (const auto& [key, cand] : candidates) {
    for (const auto& o : cand.occurrences) occs.push_back({o.start, &key});
  }
  std::sort(occs.begin(), occs.end(), [](const Occ& a, const Occ& b) {
    if (a.start != b.start) return a.start < b.start;
    return *a.key < *b.key;
  });

  PairCounts counts;
  for (std::size_t i = 0; i < occs.size(); ++i) {
    for (std::size_t j = i + 1;
         j < occs.size() && occs[j].start - occs[i].start <= window; ++j) {
      if (*occs[i].key == *occs[j].key) continue;
      const auto& [u, v] = std::minmax(*occs[i].key, *occs[j].key);
      ++counts[{u, v}];
    }
  }
  return counts;
}

SemMultiGraph build_document_graph(const Document& doc,
                                   const CandidateSet& candidates,
                                   std::size_t window) {
  SemMultiGraph g(doc.id);
  for (const auto& [key, cand] : candidates) {
    g.add_node(key, NodeInfo{Origin::kPresent, {doc.id}, cand.best_surface()});
  }
  const std::set<std::string> provenance{doc.id};
  for (const auto& [pair, count] : count_cooccurrences(candidates, window)) {
    g.add_weight(pair.first, pair.second, Layer::kDocument,
                 static_cast<double>(count), provenance);
  }
  return g;
}

std::size_t cooccurrence_in(const CandidateSet& neighbor,
                            const std::string& key_a, const std::string& key_b,
                            std::size_t window) {
  if (key_a == key_b) return 0;
  auto ia = neighbor.find(key_a);
  auto ib = neighbor.find(key_b);
  if (ia == neighbor.end() || ib == neighbor.end()) return 0;
  std::size_t count = 0;
  for (const auto& oa : ia->second.occurrences) {
    for (const auto& ob : ib->second.occurrences) {
      const std::size_t d =
          oa.start > ob.start ? oa.start - ob.start : ob.start - oa.start;
      if (d <= window) ++count;
    }
  }
  return count;
}

std::size_t cooccurrence_in(const Document& neighbor, const std::string& key_a,
                            const std::string& key_b, std::size_t window,
                            const StopwordSet& stopwords) {
  auto words = [](const std::string& key) {
    return static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
  };
  const std::size_t max_len = std::max(words(key_a), words(key_b));
  return cooccurrence_in(extract_candidates(neighbor, max_len, stopwords),
                         key_a, key_b, window);
}

namespace {

using Adjacency =
    std::unordered_map<std::string, std::vector<std::pair<std::string, std::size_t>>>;

Adjacency to_adjacency(const PairCounts& counts) {
  Adjacency adj;
  for (const auto& [pair, c] : counts) {
    adj[pair.first].emplace_back(pair.second, c);
    adj[pair.second].emplace_back(pair.first, c);
  }
  return adj;
}

struct AbsentCandidate {
  std::string key;
  double score = 0.0;
  std::set<std::string> sources;
  std::map<std::string, std::size_t> surface_counts;
};

std::string most_frequent_surface(const std::map<std::string, std::size_t>& counts) {
  const std::string* best = nullptr;
  std::size_t best_count = 0;
  // map order makes the first maximum the lexicographically smallest
  for (const auto& [surface, c] : counts) {
    if (c > best_count) {
      best = &surface;
      best_count = c;
    }
  }
  return best ? *best : std::string();
}

}  // namespace

SemMultiGraph expand_graph(SemMultiGraph g,
                           std::span<const NeighborEvidence> neighbors,
                           const ExpansionParams& params) {
  if (params.lambda_domain == 0.0 || neighbors.empty()) return g;

  std::vector<PairCounts> pair_counts;
  std::vector<Adjacency> adjacency;
  pair_counts.reserve(neighbors.size());
  for (const auto& nb : neighbors) {
    pair_counts.push_back(count_cooccurrences(*nb.candidates, params.window));
    adjacency.push_back(to_adjacency(pair_counts.back()));
  }

  // Strengthen pairs of existing nodes that co-occur in the neighbors.
  std::set<std::string> base_keys;
  for (const auto& [key, info] : g.nodes()) base_keys.insert(key);
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    const auto& nb = neighbors[i];
    for (const auto& [pair, c] : pair_counts[i]) {
      if (!base_keys.count(pair.first) || !base_keys.count(pair.second)) continue;
      const double w = params.lambda_domain * nb.sim * static_cast<double>(c);
      if (w > 0.0) g.add_weight(pair.first, pair.second, Layer::kDomain, w, {nb.id});
    }
  }

  if (params.absent_quota == 0) return g;

  // Score neighbor-only candidates by similarity-weighted frequency.
  std::map<std::string, AbsentCandidate> pool;
  for (const auto& nb : neighbors) {
    for (const auto& [key, cand] : *nb.candidates) {
      if (base_keys.count(key)) continue;
      AbsentCandidate& ac = pool[key];
      ac.key = key;
      ac.score += nb.sim * static_cast<double>(cand.occurrences.size());
      ac.sources.insert(nb.id);
      for (const auto& s : cand.surfaces) ++ac.surface_counts[s];
    }
  }
  std::vector<const AbsentCandidate*> ranked;
  for (const auto& [key, ac] : pool) {
    if (ac.score > 0.0) ranked.push_back(&ac);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const AbsentCandidate* a, const AbsentCandidate* b) {
                     return a->score > b->score;
                   });

  std::size_t admitted = 0;
  for (const AbsentCandidate* ac : ranked) {
    if (admitted == params.absent_quota) break;

    // partner key -> (weight, contributing neighbor ids), in neighbor order
    std::map<std::string, std::pair<double, std::set<std::string>>> links;
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      auto it = adjacency[i].find(ac->key);
      if (it == adjacency[i].end()) continue;
      for (const auto& [partner, c] : it->second) {
        if (!g.has_node(partner)) continue;
        const double w =
            params.lambda_domain * neighbors[i].sim * static_cast<double>(c);
        if (w <= 0.0) continue;
        auto& link = links[partner];
        link.first += w;
        link.second.insert(neighbors[i].id);
      }
    }
    if (links.empty()) continue;

    g.add_node(ac->key, NodeInfo{Origin::kAbsent, ac->sources,
                                 most_frequent_surface(ac->surface_counts)});
    for (const auto& [partner, link] : links) {
      g.add_weight(ac->key, partner, Layer::kDomain, link.first, link.second);
    }
    ++admitted;
  }
  return g;
}

SemMultiGraph expand_graph(SemMultiGraph g, const NeighborSet& neighbors,
                           const Corpus& corpus, std::size_t max_len,
                           const ExpansionParams& params) {
  std::vector<CandidateSet> cand_sets;
  cand_sets.reserve(neighbors.neighbors.size());
  for (const auto& nb : neighbors.neighbors) {
    cand_sets.push_back(
        extract_candidates(corpus.at(nb.id), max_len, corpus.stopwords()));
  }
  std::vector<NeighborEvidence> evidence;
  for (std::size_t i = 0; i < cand_sets.size(); ++i) {
    evidence.push_back(
        {neighbors.neighbors[i].id, neighbors.neighbors[i].sim, &cand_sets[i]});
  }
  return expand_graph(std::move(g), evidence, params);
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // keep the smaller index as root so roots follow key order
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

Components components_over(const SemMultiGraph& g, bool document_only) {
  std::vector<std::string> keys;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& [key, info] : g.nodes()) {
    index.emplace(key, keys.size());
    keys.push_back(key);
  }
  DisjointSets ds(keys.size());
  for (const auto& [ek, e] : g.edges()) {
    if (document_only && e.layer != Layer::kDocument) continue;
    ds.unite(index.at(e.u), index.at(e.v));
  }
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    groups[ds.find(i)].push_back(keys[i]);
  }
  Components out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace

Components weakly_connected_components(const SemMultiGraph& g) {
  return components_over(g, false);
}

Components document_layer_components(const SemMultiGraph& g) {
  return components_over(g, true);
}

SemMultiGraph bridge_components(SemMultiGraph g, double beta) {
  if (beta == 1.0) return g;
  std::unordered_map<std::string, std::size_t> component;
  const auto comps = document_layer_components(g);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (const auto& key : comps[c]) component.emplace(key, c);
  }
  for (auto& [ek, e] : g.edges()) {
    if (e.layer == Layer::kDomain && component.at(e.u) != component.at(e.v)) {
      e.weight *= beta;
    }
  }
  return g;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void write_dot(std::ostream& out, const SemMultiGraph& g) {
  out << "graph " << dot_quote(g.target()) << " {\n";
  for (const auto& [key, info] : g.nodes()) {
    out << "  " << dot_quote(key) << " [origin=" << to_string(info.origin)
        << ", label=" << dot_quote(info.surface + " (" + to_string(info.origin) + ")")
        << "];\n";
  }
  for (const auto& [ek, e] : g.edges()) {
    const std::string label =
        std::string(to_string(e.layer)) + ":" + std::to_string(e.weight);
    out << "  " << dot_quote(e.u) << " -- " << dot_quote(e.v)
        << " [layer=" << to_string(e.layer) << ", weight=" << e.weight
        << ", label=" << dot_quote(label) << "];\n";
  }
  out << "}\n";
}

}  // namespace kpindex
