#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "kpindex/text.hpp"

namespace kpindex::testing {

Corpus make_corpus(const std::vector<RawDoc>& docs) {
  std::vector<Document> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(make_document(d.id, d.title, d.abstract, d.gold));
  return Corpus(std::move(out));
}

std::string to_jsonl(const std::vector<RawDoc>& docs) {
  std::ostringstream out;
  for (const auto& d : docs) {
    nlohmann::ordered_json rec;
    rec["id"] = d.id;
    rec["title"] = d.title;
    rec["abstract"] = d.abstract;
    if (d.gold) rec["keyphrases"] = *d.gold;
    out << rec.dump() << '\n';
  }
  return out.str();
}

namespace {

std::size_t pick(std::mt19937& rng, std::size_t n) { return rng() % n; }

// Pronounceable nonsense words, unique by stem and never stopwords.
class WordMaker {
 public:
  explicit WordMaker(std::mt19937& rng) : rng_(rng) {}

  std::string next() {
    static const std::string consonants = "bdfgklmnprstvz";
    static const std::string vowels = "aiou";
    static const std::string finals = "aou";
    static const auto stopwords = StopwordSet::english();
    for (;;) {
      std::string w;
      for (int s = 0; s < 3; ++s) {
        w.push_back(consonants[pick(rng_, consonants.size())]);
        const std::string& v = s == 2 ? finals : vowels;
        w.push_back(v[pick(rng_, v.size())]);
      }
      const std::string st = stem(w);
      if (stopwords.contains(w, st) || !used_.insert(st).second) continue;
      return w;
    }
  }

  std::string phrase(std::size_t words) {
    std::string out;
    for (std::size_t i = 0; i < words; ++i) out += (i ? " " : "") + next();
    return out;
  }

 private:
  std::mt19937& rng_;
  std::set<std::string> used_;
};

const std::vector<std::string>& glue_words() {
  static const std::vector<std::string> glue = {"the", "of",   "and", "we",  "for",
                                                "in",  "with", "is",  "this", "a",
                                                "to",  "on",   "our", "by",  "from"};
  return glue;
}

template <class T>
void shuffle(std::mt19937& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[pick(rng, i)]);
}

// Each unit is preceded by a glue word; each inner vector is one sentence.
std::string render(std::mt19937& rng, const std::vector<std::vector<std::string>>& sentences) {
  const auto& glue = glue_words();
  std::string text;
  for (const auto& sentence : sentences) {
    for (const auto& unit : sentence) {
      if (!text.empty()) text += ' ';
      text += glue[pick(rng, glue.size())] + ' ' + unit;
    }
    text += '.';
  }
  return text;
}

}  // namespace

SyntheticCorpus synthetic_corpus(const SyntheticOptions& opts) {
  std::mt19937 rng(opts.seed);
  WordMaker words(rng);
  const std::size_t n = opts.docs_per_topic;
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("docs_per_topic must be even and >= 4");

  SyntheticCorpus out;
  for (const std::string topic : {"a", "b"}) {
    std::vector<std::string> topic_words;
    for (int i = 0; i < 12; ++i) topic_words.push_back(words.next());
    // links[i] is shared by documents i and i + 1.
    std::vector<std::vector<std::string>> links(n);
    std::vector<std::vector<std::string>> present(n);
    std::vector<std::vector<std::string>> absent(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t w = 0; w < opts.link_words; ++w) links[i].push_back(words.next());
      for (std::size_t p = 0; p < opts.present_gold; ++p) {
        present[i].push_back(words.phrase(p % 3 == 2 ? 1 : 2));
      }
      for (std::size_t p = 0; p < opts.absent_gold; ++p) absent[i].push_back(words.phrase(2));
    }
    auto is_long = [](std::size_t i) { return i % 2 == 0; };

    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t prev = (i + n - 1) % n;
      const std::size_t next = (i + 1) % n;

      std::vector<std::string> loose;
      for (std::size_t p = 0; p < present[i].size(); ++p) {
        // Short abstracts do not restate the two title phrases.
        const std::size_t repeats = is_long(i) ? opts.long_repeats : (p < 2 ? 0 : 1);
        loose.insert(loose.end(), repeats, present[i][p]);
      }
      for (int t = 0; t < 4; ++t) loose.push_back(topic_words[pick(rng, topic_words.size())]);
      for (std::size_t l : {prev, i}) loose.insert(loose.end(), links[l].begin(), links[l].end());
      shuffle(rng, loose);

      std::vector<std::vector<std::string>> sentences;
      for (std::size_t k = 0; k < loose.size(); k += 3) {
        sentences.emplace_back(loose.begin() + k, loose.begin() + std::min(loose.size(), k + 3));
      }
      // A neighbor's absent phrases appear together, next to words the pair shares.
      for (auto [src, shared] : {std::pair{prev, &links[prev]}, std::pair{next, &links[i]}}) {
        const std::size_t repeats =
            is_long(src) ? opts.long_inject_repeats : opts.short_inject_repeats;
        for (std::size_t r = 0; r < repeats; ++r) {
          std::vector<std::string> sentence = absent[src];
          for (int w = 0; w < 2; ++w) sentence.push_back((*shared)[pick(rng, shared->size())]);
          shuffle(rng, sentence);
          sentences.push_back(std::move(sentence));
        }
      }
      shuffle(rng, sentences);

      RawDoc doc;
      doc.id = topic + (i < 10 ? "0" : "") + std::to_string(i);
      doc.title = present[i][0] + " and " + present[i][1];
      doc.abstract = render(rng, sentences);
      std::vector<std::string> gold = present[i];
      gold.insert(gold.end(), absent[i].begin(), absent[i].end());
      doc.gold = gold;
      out.injected[doc.id] = absent[i];
      out.topic[doc.id] = topic;
      out.docs.push_back(std::move(doc));
    }
  }
  return out;
}

std::vector<RawDoc> hand_scored_docs() {
  return {
      {"d1", "Graph ranking",
       "Graph-based ranking models rank keyphrase candidates in scientific documents.",
       std::vector<std::string>{"graph ranking", "keyphrase candidates", "semantic similarity"}},
      {"d2", "Neural networks for text", "We train neural networks on abstracts.",
       std::vector<std::string>{"neural networks", "deep learning"}},
      {"d3", "Search engines", "Information retrieval systems index documents.",
       std::vector<std::string>{"information retrieval"}},
      {"d4", "Unlabelled", "Nothing to score here.", std::nullopt},
  };
}

std::map<std::string, std::vector<std::string>> hand_scored_predictions() {
  return {
      {"d1",
       {"graph ranking", "scientific documents", "semantic similarity", "ranking models",
        "keyphrase candidate", "noise"}},
      {"d2", {"deep learning"}},
      {"d3", {}},
      {"d4", {"anything"}},
  };
}

std::vector<RawDoc> semantic_index_docs() {
  return {
      {"a", "Graph ranking", "Graph ranking for digital libraries.",
       std::vector<std::string>{"graph ranking", "semantic index"}},
      {"b", "Semantic index construction",
       "A semantic index complements graph ranking in digital libraries. "
       "The semantic index supports graph ranking.",
       std::vector<std::string>{"semantic index"}},
  };
}

SemMultiGraph random_graph(std::mt19937& rng, std::size_t max_nodes, double edge_prob,
                           bool with_domain) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = 1 + pick(rng, max_nodes);
  SemMultiGraph g("random");
  std::vector<std::string> keys;
  for (std::size_t i = 0; i < n; ++i) {
    keys.push_back("n" + std::to_string(i));
    NodeInfo info;
    info.origin = with_domain && unit(rng) < 0.3 ? Origin::kAbsent : Origin::kPresent;
    info.surface = keys.back();
    g.add_node(keys.back(), info);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (unit(rng) < edge_prob) {
        g.add_weight(keys[i], keys[j], Layer::kDocument, 1.0 + pick(rng, 5), {});
      }
      if (with_domain && unit(rng) < edge_prob / 2) {
        g.add_weight(keys[i], keys[j], Layer::kDomain, 0.05 + unit(rng), {"nb"});
      }
    }
  }
  return g;
}

std::map<std::string, double> pagerank_linear_solve(const SemMultiGraph& g, double damping) {
  std::vector<std::string> keys;
  for (const auto& [k, info] : g.nodes()) keys.push_back(k);
  const std::size_t n = keys.size();
  auto index = [&](const std::string& k) {
    return static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), k) - keys.begin());
  };

  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (const auto& [key, e] : g.edges()) {
    const std::size_t a = index(e.u);
    const std::size_t b = index(e.v);
    w[a][b] += e.weight;
    w[b][a] += e.weight;
  }
  std::vector<double> strength(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = 0; u < n; ++u) strength[v] += w[u][v];
  }

  // Augmented system A x = c with A = I - d M.
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    a[u][u] = 1.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (strength[v] > 0.0) a[u][v] -= damping * w[u][v] / strength[v];
    }
    a[u][n] = (1.0 - damping) / static_cast<double>(n);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < n; ++i) out[keys[i]] = x[i] / total;
  return out;
}

std::set<std::set<std::string>> closure_components(const SemMultiGraph& g) {
  std::vector<std::string> keys;
  for (const auto& [k, info] : g.nodes()) keys.push_back(k);
  const std::size_t n = keys.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (const auto& [key, e] : g.edges()) {
    const auto a = std::find(keys.begin(), keys.end(), e.u) - keys.begin();
    const auto b = std::find(keys.begin(), keys.end(), e.v) - keys.begin();
    reach[a][b] = reach[b][a] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::set<std::set<std::string>> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::string> comp;
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j]) comp.insert(keys[j]);
    }
    out.insert(comp);
  }
  return out;
}

std::map<std::string, std::vector<BruteNeighbor>> brute_force_neighbors(const Corpus& corpus,
                                                                         std::size_t k,
                                                                         double min_sim) {
  const auto& docs = corpus.documents();
  std::vector<std::map<std::string, double>> tf(docs.size());
  std::map<std::string, double> df;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (std::size_t i = 0; i < docs[d].tokens.size(); ++i) {
      const auto& tok = docs[d].tokens[i];
      const auto& st = docs[d].stems[i];
      if (tok == "." || corpus.stopwords().contains(tok, st)) continue;
      tf[d][st] += 1.0;
    }
    for (const auto& [term, c] : tf[d]) df[term] += 1.0;
  }
  const double n = static_cast<double>(docs.size());
  for (auto& vec : tf) {
    for (auto& [term, w] : vec) w *= std::log(1.0 + n / df[term]);
  }
  auto norm = [](const std::map<std::string, double>& v) {
    double s = 0.0;
    for (const auto& [t, w] : v) s += w * w;
    return std::sqrt(s);
  };

  std::map<std::string, std::vector<BruteNeighbor>> out;
  for (std::size_t a = 0; a < docs.size(); ++a) {
    std::vector<BruteNeighbor> row;
    for (std::size_t b = 0; b < docs.size(); ++b) {
      if (a == b) continue;
      double dot = 0.0;
      for (const auto& [term, w] : tf[a]) {
        auto it = tf[b].find(term);
        if (it != tf[b].end()) dot += w * it->second;
      }
      const double denom = norm(tf[a]) * norm(tf[b]);
      const double sim = denom == 0.0 ? 0.0 : std::min(1.0, dot / denom);
      if (sim >= min_sim) row.push_back({docs[b].id, sim});
    }
    std::sort(row.begin(), row.end(), [](const BruteNeighbor& x, const BruteNeighbor& y) {
      if (x.sim != y.sim) return x.sim > y.sim;
      return x.id < y.id;
    });
    if (row.size() > k) row.resize(k);
    out[docs[a].id] = row;
  }
  return out;
}

}  // namespace kpindex::testing
