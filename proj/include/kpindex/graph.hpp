#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "kpindex/corpus.hpp"
#include "kpindex/similarity.hpp"

namespace kpindex {

enum class Origin { kPresent, kAbsent };
enum class Layer { kDocument, kDomain };

const char* to_string(Origin origin);
const char* to_string(Layer layer);

struct NodeInfo {
  Origin origin = Origin::kPresent;
  std::set<std::string> source_docs;
  std::string surface;  // display form

  friend bool operator==(const NodeInfo&, const NodeInfo&) = default;
};

/// Undirected edge between two distinct keys; `u < v` always.
struct MultiEdge {
  std::string u;
  std::string v;
  Layer layer = Layer::kDocument;
  double weight = 0.0;
  std::set<std::string> provenance;

  friend bool operator==(const MultiEdge&, const MultiEdge&) = default;
};

/// Candidate multigraph with a DOCUMENT and a DOMAIN edge layer. Each
/// unordered pair carries at most one edge per layer.
class SemMultiGraph {
 public:
  using EdgeKey = std::tuple<std::string, std::string, Layer>;

  SemMultiGraph() = default;
  explicit SemMultiGraph(std::string target) : target_(std::move(target)) {}

  const std::string& target() const { return target_; }

  /// Returns false (and leaves the graph unchanged) if the key exists.
  bool add_node(const std::string& key, NodeInfo info);
  bool has_node(const std::string& key) const { return nodes_.count(key) > 0; }
  const NodeInfo& node(const std::string& key) const { return nodes_.at(key); }

  /// Adds `weight` to the (a, b, layer) edge, creating it if needed.
  /// Requires a != b, both nodes present and weight > 0.
  void add_weight(const std::string& a, const std::string& b, Layer layer,
                  double weight, const std::set<std::string>& provenance);

  const MultiEdge* edge(const std::string& a, const std::string& b,
                        Layer layer) const;
  /// Sum of both layers' weights for the pair (0 when unconnected).
  double combined_weight(const std::string& a, const std::string& b) const;

  const std::map<std::string, NodeInfo>& nodes() const { return nodes_; }
  const std::map<EdgeKey, MultiEdge>& edges() const { return edges_; }
  std::map<EdgeKey, MultiEdge>& edges() { return edges_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t edge_count(Layer layer) const;
  bool empty() const { return nodes_.empty(); }

  friend bool operator==(const SemMultiGraph&, const SemMultiGraph&) = default;

 private:
  std::string target_;
  std::map<std::string, NodeInfo> nodes_;
  std::map<EdgeKey, MultiEdge> edges_;
};

inline constexpr std::size_t kDefaultWindow = 10;

using PairCounts = std::map<std::pair<std::string, std::string>, std::size_t>;

/// Occurrence pairs of distinct candidates whose start offsets differ by at
/// most `window`, keyed by the ordered key pair.
PairCounts count_cooccurrences(const CandidateSet& candidates,
                               std::size_t window);

/// One PRESENT node per candidate, DOCUMENT edges weighted by co-occurrence.
SemMultiGraph build_document_graph(const Document& doc,
                                   const CandidateSet& candidates,
                                   std::size_t window);

std::size_t cooccurrence_in(const CandidateSet& neighbor,
                            const std::string& key_a, const std::string& key_b,
                            std::size_t window);
std::size_t cooccurrence_in(const Document& neighbor, const std::string& key_a,
                            const std::string& key_b, std::size_t window,
                            const StopwordSet& stopwords);

struct ExpansionParams {
  std::size_t window = kDefaultWindow;
  double lambda_domain = 1.0;
  std::size_t absent_quota = 10;
};

/// A neighbor document as seen by the expansion step.
struct NeighborEvidence {
  std::string id;
  double sim = 0.0;
  const CandidateSet* candidates = nullptr;
};

/// Adds DOMAIN edges attested by the neighbors between existing nodes, then
/// admits up to `absent_quota` neighbor-only candidates as ABSENT nodes.
/// Candidates are tried by descending sum of sim * frequency; one is admitted
/// only if it gains at least one DOMAIN edge to a node already in the graph.
SemMultiGraph expand_graph(SemMultiGraph g,
                           std::span<const NeighborEvidence> neighbors,
                           const ExpansionParams& params);

SemMultiGraph expand_graph(SemMultiGraph g, const NeighborSet& neighbors,
                           const Corpus& corpus, std::size_t max_len,
                           const ExpansionParams& params);

using Components = std::vector<std::vector<std::string>>;

/// Components over both layers, members sorted, components ordered by their
/// smallest member.
Components weakly_connected_components(const SemMultiGraph& g);

/// Components of the DOCUMENT layer alone.
Components document_layer_components(const SemMultiGraph& g);

inline constexpr double kDefaultBeta = 2.0;

/// Multiplies by `beta` every DOMAIN edge that joins two different
/// DOCUMENT-layer components.
SemMultiGraph bridge_components(SemMultiGraph g, double beta);

/// Graphviz dump, nodes tagged with origin, edges with layer:weight.
void write_dot(std::ostream& out, const SemMultiGraph& g);

}  // namespace kpindex
