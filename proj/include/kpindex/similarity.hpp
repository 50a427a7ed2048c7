#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kpindex/corpus.hpp"

namespace kpindex {

using IdfTable = std::map<std::string, double>;

/// idf(t) = ln(1 + N / df(t)) over non-stopword stems.
IdfTable compute_idf(const Corpus& corpus);

/// Sparse tf-idf vector, entries sorted by stem, no zero weights.
struct DocVector {
  std::vector<std::pair<std::string, double>> weights;
  double norm = 0.0;

  bool empty() const { return weights.empty(); }
};

/// Builds a vector from raw weights (drops zeros, sorts, computes the norm).
/// Weights are not normalized.
DocVector make_vector(std::map<std::string, double> weights);

/// count(t) * idf(t), then L2-normalized.
DocVector vectorize(const Document& doc, const IdfTable& idf,
                    const StopwordSet& stopwords);

/// dot(a, b) / (|a| |b|), clamped to [0, 1]; 0 when either norm is 0.
/// The dot product walks both vectors in stem order, so the result is
/// bit-identical for cosine(a, b) and cosine(b, a).
double cosine(const DocVector& a, const DocVector& b);

struct Neighbor {
  std::string id;
  double sim = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct NeighborSet {
  std::string source;
  std::vector<Neighbor> neighbors;  // sim descending, then id ascending
  std::size_t k = 0;
  double min_sim = 0.0;

  friend bool operator==(const NeighborSet&, const NeighborSet&) = default;
};

/// Pairwise document similarity over a fixed corpus. Alternative
/// representations (embedding centroids, etc.) plug in here.
class SimilarityProvider {
 public:
  virtual ~SimilarityProvider() = default;
  virtual std::size_t size() const = 0;
  virtual const std::string& id(std::size_t i) const = 0;
  virtual double similarity(std::size_t a, std::size_t b) const = 0;
};

class TfidfSimilarity final : public SimilarityProvider {
 public:
  explicit TfidfSimilarity(const Corpus& corpus);

  std::size_t size() const override { return vectors_.size(); }
  const std::string& id(std::size_t i) const override { return ids_[i]; }
  /// Same value as cosine(vector(a), vector(b)), merged on term ids.
  double similarity(std::size_t a, std::size_t b) const override;

  const IdfTable& idf() const { return idf_; }
  const DocVector& vector(std::size_t i) const { return vectors_[i]; }

 private:
  IdfTable idf_;
  std::vector<std::string> ids_;
  std::vector<DocVector> vectors_;
  // vectors_ re-keyed by the rank of each stem in idf_
  std::vector<std::vector<std::pair<std::uint32_t, double>>> coded_;
};

inline constexpr std::size_t kDefaultNeighbors = 5;
inline constexpr double kDefaultMinSim = 0.1;

/// Neighbors of document `index` under `provider`.
NeighborSet find_neighbors(const SimilarityProvider& provider,
                           std::size_t index, std::size_t k, double min_sim);

/// Convenience overload building a tf-idf provider; throws DataError for an
/// unknown id.
NeighborSet find_neighbors(const std::string& doc_id, const Corpus& corpus,
                           std::size_t k, double min_sim);

/// Neighbor sets for every document, one OpenMP task per source document.
std::vector<NeighborSet> all_neighbors(const SimilarityProvider& provider,
                                       std::size_t k, double min_sim);

/// Reference version of all_neighbors: fills the full similarity matrix
/// serially, then fully sorts each row. Kept for tests and benchmarks.
std::vector<NeighborSet> all_neighbors_serial(const SimilarityProvider& provider,
                                              std::size_t k, double min_sim);

}  // namespace kpindex
