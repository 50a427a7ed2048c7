#include "kpindex/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_set>

#include "kpindex/error.hpp"
#include "kpindex/parallel.hpp"

namespace kpindex {

const char* to_string(GoldScope scope) {
  switch (scope) {
    case GoldScope::kAll:
      return "ALL";
    case GoldScope::kPresent:
      return "PRESENT";
    case GoldScope::kAbsent:
      return "ABSENT";
  }
  return "?";
}

std::vector<std::string> normalize_predictions(std::span<const std::string> phrases) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& phrase : phrases) {
    std::string key = normalize_phrase(phrase);
    if (key.empty() || !seen.insert(key).second) continue;
    out.push_back(std::move(key));
  }
  return out;
}

std::set<std::string> GoldSplit::all() const {
  std::set<std::string> out = present;
  out.insert(absent.begin(), absent.end());
  return out;
}

namespace {

std::vector<std::string> split_words(const std::string& key) {
  std::vector<std::string> words;
  std::istringstream in(key);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

bool occurs_in(const std::vector<std::string>& needle,
               const std::vector<std::string>& stems) {
  if (needle.empty() || needle.size() > stems.size()) return false;
  for (std::size_t start = 0; start + needle.size() <= stems.size(); ++start) {
    bool match = true;
    for (std::size_t i = 0; i < needle.size(); ++i) {
      const auto& s = stems[start + i];
      if (is_sentence_break(s) || s != needle[i]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

GoldSplit split_present_absent(std::span<const std::string> gold,
                               const Document& doc) {
  GoldSplit split;
  for (const auto& phrase : gold) {
    std::string key = normalize_phrase(phrase);
    if (key.empty()) continue;
    if (occurs_in(split_words(key), doc.stems)) {
      split.present.insert(std::move(key));
    } else {
      split.absent.insert(std::move(key));
    }
  }
  return split;
}

PRF f_at_k(std::span<const std::string> predicted, const std::set<std::string>& gold,
           std::size_t k) {
  PRF out;
  if (gold.empty()) return out;
  const std::size_t top = std::min(k, predicted.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < top; ++i) {
    if (gold.count(predicted[i])) ++hits;
  }
  if (top > 0) out.precision = static_cast<double>(hits) / static_cast<double>(top);
  out.recall = static_cast<double>(hits) / static_cast<double>(gold.size());
  if (out.precision + out.recall > 0.0) {
    out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  }
  return out;
}

EvaluationReport evaluate_corpus(const Corpus& corpus, const ExtractionModel& model,
                                 const std::string& model_name,
                                 nlohmann::ordered_json config_echo) {
  std::vector<std::size_t> annotated;
  EvaluationReport report;
  report.model = model_name;
  report.config = std::move(config_echo);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& gold = corpus[i].gold;
    if (gold && !normalize_predictions(*gold).empty()) {
      annotated.push_back(i);
    } else {
      report.excluded.push_back(corpus[i].id);
    }
  }
  if (annotated.empty()) throw DataError("no gold-annotated documents");

  report.documents.resize(annotated.size());
  parallel::for_each_index(annotated.size(), [&](std::size_t a) {
    const Document& doc = corpus[annotated[a]];
    const GoldSplit split = split_present_absent(*doc.gold, doc);
    const std::array<std::set<std::string>, 3> scoped = {split.all(), split.present,
                                                         split.absent};
    const auto raw = model(annotated[a]);
    const auto predicted = normalize_predictions(raw);

    DocumentEvaluation& ev = report.documents[a];
    ev.id = doc.id;
    for (std::size_t s = 0; s < scoped.size(); ++s) {
      ev.gold_sizes[s] = scoped[s].size();
      for (std::size_t c = 0; c < kCutoffs.size(); ++c) {
        ev.scores[s][c] = f_at_k(predicted, scoped[s], kCutoffs[c]);
      }
    }
  });

  for (const auto& ev : report.documents) {
    report.gold_total += ev.gold_sizes[0];
    report.gold_absent += ev.gold_sizes[2];
    for (std::size_t s = 0; s < 3; ++s) {
      if (ev.gold_sizes[s] == 0) continue;
      ++report.scored_documents[s];
      for (std::size_t c = 0; c < kCutoffs.size(); ++c) {
        report.macro[s][c].precision += ev.scores[s][c].precision;
        report.macro[s][c].recall += ev.scores[s][c].recall;
        report.macro[s][c].f1 += ev.scores[s][c].f1;
      }
    }
  }
  for (std::size_t s = 0; s < 3; ++s) {
    if (report.scored_documents[s] == 0) continue;
    const auto n = static_cast<double>(report.scored_documents[s]);
    for (auto& prf : report.macro[s]) {
      prf.precision /= n;
      prf.recall /= n;
      prf.f1 /= n;
    }
  }
  return report;
}

nlohmann::ordered_json EvaluationReport::to_json() const {
  using json = nlohmann::ordered_json;
  auto prf_json = [](const PRF& p) {
    return json{{"P", p.precision}, {"R", p.recall}, {"F1", p.f1}};
  };
  json j;
  j["model"] = model;
  j["config"] = config;
  j["protocol"] = {
      {"matching", "stemmed exact match after normalization"},
      {"precision_denominator", "min(k, |predicted|)"},
      {"averaging", "macro over documents with non-empty gold in scope"},
      {"cutoffs", json(std::vector<std::size_t>(kCutoffs.begin(), kCutoffs.end()))}};
  j["corpus"] = {{"documents_scored", documents.size()},
                 {"documents_excluded", excluded},
                 {"gold_keyphrases", gold_total},
                 {"gold_absent", gold_absent},
                 {"absent_fraction", absent_fraction()}};
  json macro_json;
  for (std::size_t s = 0; s < 3; ++s) {
    json scope;
    scope["documents"] = scored_documents[s];
    for (std::size_t c = 0; c < kCutoffs.size(); ++c) {
      scope["@" + std::to_string(kCutoffs[c])] = prf_json(macro[s][c]);
    }
    macro_json[to_string(kGoldScopes[s])] = scope;
  }
  j["macro"] = macro_json;
  json docs = json::array();
  for (const auto& ev : documents) {
    json d;
    d["id"] = ev.id;
    for (std::size_t s = 0; s < 3; ++s) {
      json scope;
      scope["gold"] = ev.gold_sizes[s];
      for (std::size_t c = 0; c < kCutoffs.size(); ++c) {
        scope["@" + std::to_string(kCutoffs[c])] = prf_json(ev.scores[s][c]);
      }
      d[to_string(kGoldScopes[s])] = scope;
    }
    docs.push_back(std::move(d));
  }
  j["documents"] = std::move(docs);
  return j;
}

void EvaluationReport::write_csv(std::ostream& out) const {
  out << "# model=" << model << " config=" << config.dump() << "\n";
  out << "doc_id,scope,k,P,R,F1\n";
  for (const auto& ev : documents) {
    for (std::size_t s = 0; s < 3; ++s) {
      if (ev.gold_sizes[s] == 0) continue;
      for (std::size_t c = 0; c < kCutoffs.size(); ++c) {
        const PRF& p = ev.scores[s][c];
        out << ev.id << ',' << to_string(kGoldScopes[s]) << ',' << kCutoffs[c] << ','
            << format_real(p.precision) << ',' << format_real(p.recall) << ','
            << format_real(p.f1) << '\n';
      }
    }
  }
}

GoldStatistics gold_statistics(const Corpus& corpus) {
  GoldStatistics st;
  for (const auto& doc : corpus.documents()) {
    if (!doc.gold) continue;
    const GoldSplit split = split_present_absent(*doc.gold, doc);
    const std::size_t total = split.present.size() + split.absent.size();
    if (total == 0) continue;
    ++st.documents;
    st.gold_total += total;
    st.gold_absent += split.absent.size();
  }
  return st;
}

std::vector<RankedKeyphrase> tfidf_baseline(const Document& doc,
                                            const CandidateSet& candidates,
                                            const IdfTable& idf,
                                            const StopwordSet& stopwords,
                                            std::size_t top_n) {
  std::map<std::string, double> tf;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (is_sentence_break(doc.tokens[i])) continue;
    if (stopwords.contains(doc.tokens[i], doc.stems[i])) continue;
    tf[doc.stems[i]] += 1.0;
  }

  std::vector<RankedKeyphrase> out;
  for (const auto& [key, cand] : candidates) {
    double score = 0.0;
    for (const auto& s : split_words(key)) {
      auto it = idf.find(s);
      auto jt = tf.find(s);
      if (it != idf.end() && jt != tf.end()) score += jt->second * it->second;
    }
    out.push_back({key, cand.best_surface(), score, Origin::kPresent, {doc.id}});
  }
  std::sort(out.begin(), out.end(), [](const RankedKeyphrase& a, const RankedKeyphrase& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.key < b.key;
  });
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

std::vector<RankedKeyphrase> tfidf_baseline(const Document& doc, const Corpus& corpus,
                                            std::size_t top_n, std::size_t max_len) {
  return tfidf_baseline(doc, extract_candidates(doc, max_len, corpus.stopwords()),
                        compute_idf(corpus), corpus.stopwords(), top_n);
}

}  // namespace kpindex
