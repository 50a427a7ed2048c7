#include "kpindex/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string_view>

#include "kpindex/error.hpp"
#include "kpindex/parallel.hpp"

namespace kpindex {
namespace {

template <class Fn>
void for_each_indexable_stem(const Document& doc, const StopwordSet& stopwords,
                             Fn&& fn) {
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (is_sentence_break(doc.tokens[i])) continue;
    if (stopwords.contains(doc.tokens[i], doc.stems[i])) continue;
    fn(doc.stems[i]);
  }
}

bool ranks_before(const Neighbor& a, const Neighbor& b) {
  if (a.sim != b.sim) return a.sim > b.sim;
  return a.id < b.id;
}

}  // namespace

IdfTable compute_idf(const Corpus& corpus) {
  std::map<std::string, std::size_t> df;
  for (const auto& doc : corpus.documents()) {
    std::set<std::string> seen;
    for_each_indexable_stem(doc, corpus.stopwords(),
                            [&](const std::string& s) { seen.insert(s); });
    for (const auto& s : seen) ++df[s];
  }
  IdfTable idf;
  const auto n = static_cast<double>(corpus.size());
  for (const auto& [term, count] : df) {
    idf.emplace(term, std::log(1.0 + n / static_cast<double>(count)));
  }
  return idf;
}

DocVector make_vector(std::map<std::string, double> weights) {
  DocVector v;
  double sq = 0.0;
  for (auto& [term, w] : weights) {
    if (w == 0.0) continue;
    sq += w * w;
    v.weights.emplace_back(term, w);
  }
  v.norm = std::sqrt(sq);
  return v;
}

DocVector vectorize(const Document& doc, const IdfTable& idf,
                    const StopwordSet& stopwords) {
  std::map<std::string, double> counts;
  for_each_indexable_stem(doc, stopwords,
                          [&](const std::string& s) { counts[s] += 1.0; });

  double sq = 0.0;
  for (auto& [term, w] : counts) {
    auto it = idf.find(term);
    w = it == idf.end() ? 0.0 : w * it->second;
    sq += w * w;
  }
  if (sq > 0.0) {
    const double norm = std::sqrt(sq);
    for (auto& [term, w] : counts) w /= norm;
  }
  return make_vector(std::move(counts));
}

double cosine(const DocVector& a, const DocVector& b) {
  if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
  double dot = 0.0;
  auto ia = a.weights.begin();
  auto ib = b.weights.begin();
  while (ia != a.weights.end() && ib != b.weights.end()) {
    const int c = ia->first.compare(ib->first);
    if (c < 0) {
      ++ia;
    } else if (c > 0) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  const double sim = dot / (a.norm * b.norm);
  return std::clamp(sim, 0.0, 1.0);
}

TfidfSimilarity::TfidfSimilarity(const Corpus& corpus)
    : idf_(compute_idf(corpus)) {
  ids_.reserve(corpus.size());
  for (const auto& doc : corpus.documents()) ids_.push_back(doc.id);
  vectors_.resize(corpus.size());
  parallel::for_each_index(corpus.size(), [&](std::size_t i) {
    vectors_[i] = vectorize(corpus[i], idf_, corpus.stopwords());
  });

  std::map<std::string_view, std::uint32_t> code;
  for (const auto& [term, w] : idf_) {
    code.emplace(term, static_cast<std::uint32_t>(code.size()));
  }
  coded_.resize(vectors_.size());
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    coded_[i].reserve(vectors_[i].weights.size());
    for (const auto& [term, w] : vectors_[i].weights) {
      coded_[i].emplace_back(code.at(term), w);
    }
  }
}

double TfidfSimilarity::similarity(std::size_t a, std::size_t b) const {
  const double na = vectors_[a].norm;
  const double nb = vectors_[b].norm;
  if (na == 0.0 || nb == 0.0) return 0.0;
  const auto& va = coded_[a];
  const auto& vb = coded_[b];
  double dot = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < va.size() && j < vb.size()) {
    if (va[i].first < vb[j].first) {
      ++i;
    } else if (va[i].first > vb[j].first) {
      ++j;
    } else {
      dot += va[i].second * vb[j].second;
      ++i;
      ++j;
    }
  }
  return std::clamp(dot / (na * nb), 0.0, 1.0);
}

NeighborSet find_neighbors(const SimilarityProvider& provider,
                           std::size_t index, std::size_t k, double min_sim) {
  NeighborSet out;
  out.source = provider.id(index);
  out.k = k;
  out.min_sim = min_sim;
  if (k == 0) return out;

  std::vector<Neighbor> pool;
  for (std::size_t j = 0; j < provider.size(); ++j) {
    if (j == index) continue;
    const double sim = provider.similarity(index, j);
    if (sim < min_sim) continue;
    pool.push_back({provider.id(j), sim});
  }
  const std::size_t keep = std::min(k, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + static_cast<long>(keep),
                    pool.end(), ranks_before);
  pool.resize(keep);
  out.neighbors = std::move(pool);
  return out;
}

NeighborSet find_neighbors(const std::string& doc_id, const Corpus& corpus,
                           std::size_t k, double min_sim) {
  auto idx = corpus.index_of(doc_id);
  if (!idx) throw DataError("unknown document id " + doc_id);
  TfidfSimilarity provider(corpus);
  return find_neighbors(provider, *idx, k, min_sim);
}

std::vector<NeighborSet> all_neighbors(const SimilarityProvider& provider,
                                       std::size_t k, double min_sim) {
  std::vector<NeighborSet> out(provider.size());
  parallel::for_each_index(provider.size(), [&](std::size_t i) {
    out[i] = find_neighbors(provider, i, k, min_sim);
  });
  return out;
}

std::vector<NeighborSet> all_neighbors_serial(const SimilarityProvider& provider,
                                              std::size_t k, double min_sim) {
  const std::size_t n = provider.size();
  std::vector<double> matrix(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = provider.similarity(i, j);
      matrix[i * n + j] = s;
      matrix[j * n + i] = s;
    }
  }

  std::vector<NeighborSet> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    NeighborSet& ns = out[i];
    ns.source = provider.id(i);
    ns.k = k;
    ns.min_sim = min_sim;
    std::vector<Neighbor> row;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) row.push_back({provider.id(j), matrix[i * n + j]});
    }
    std::sort(row.begin(), row.end(), ranks_before);
    for (const auto& nb : row) {
      if (ns.neighbors.size() >= k) break;
      if (nb.sim >= min_sim) ns.neighbors.push_back(nb);
    }
  }
  return out;
}

}  // namespace kpindex
