#include "kpindex/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>

#include "kpindex/error.hpp"
#include "kpindex/parallel.hpp"

namespace kpindex {

Document document_from_tokens(std::string id, std::vector<std::string> tokens) {
  Document doc;
  doc.id = std::move(id);
  doc.tokens = std::move(tokens);
  doc.stems.reserve(doc.tokens.size());
  for (const auto& tok : doc.tokens) {
    doc.stems.push_back(is_sentence_break(tok) ? tok : stem(tok));
  }
  return doc;
}

Document make_document(std::string id, std::string title, std::string abstract,
                       std::optional<std::vector<std::string>> gold) {
  auto tokens = tokenize(title);
  if (!tokens.empty() && !is_sentence_break(tokens.back())) {
    tokens.emplace_back(kSentenceBreak);
  }
  for (auto& tok : tokenize(abstract)) tokens.push_back(std::move(tok));

  Document doc = document_from_tokens(std::move(id), std::move(tokens));
  doc.title = std::move(title);
  doc.abstract = std::move(abstract);
  doc.gold = std::move(gold);
  return doc;
}

std::string Candidate::best_surface() const {
  // surfaces are stored in occurrence order, so the first index reached with
  // the maximal count is the earliest one.
  std::map<std::string, std::pair<std::size_t, std::size_t>> stats;
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    auto [it, inserted] = stats.try_emplace(surfaces[i], 0, i);
    ++it->second.first;
  }
  const std::string* best = nullptr;
  std::size_t best_count = 0;
  std::size_t best_first = 0;
  for (const auto& [surface, st] : stats) {
    if (best == nullptr || st.first > best_count ||
        (st.first == best_count && st.second < best_first)) {
      best = &surface;
      best_count = st.first;
      best_first = st.second;
    }
  }
  return best ? *best : std::string();
}

CandidateSet extract_candidates(const Document& doc, std::size_t max_len,
                                const StopwordSet& stopwords) {
  CandidateSet out;
  const std::size_t n = doc.tokens.size();
  std::vector<bool> usable(n);
  for (std::size_t i = 0; i < n; ++i) {
    usable[i] = !is_sentence_break(doc.tokens[i]) &&
                !stopwords.contains(doc.tokens[i], doc.stems[i]);
  }

  for (std::size_t start = 0; start < n; ++start) {
    std::string key;
    std::string surface;
    for (std::size_t len = 1; len <= max_len && start + len <= n; ++len) {
      const std::size_t pos = start + len - 1;
      if (!usable[pos]) break;
      if (len > 1) {
        key.push_back(' ');
        surface.push_back(' ');
      }
      key += doc.stems[pos];
      surface += doc.tokens[pos];

      auto [it, inserted] = out.try_emplace(key);
      Candidate& cand = it->second;
      if (inserted) {
        cand.key = key;
        cand.length = len;
      }
      cand.surfaces.push_back(surface);
      cand.occurrences.push_back({start, len});
    }
  }
  return out;
}

Corpus::Corpus(std::vector<Document> documents, StopwordSet stopwords)
    : docs_(std::move(documents)), stopwords_(std::move(stopwords)) {
  std::sort(docs_.begin(), docs_.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    if (!by_id_.emplace(docs_[i].id, i).second) {
      throw DataError("duplicate id " + docs_[i].id);
    }
  }
}

const Document& Corpus::at(const std::string& id) const {
  auto idx = index_of(id);
  if (!idx) throw DataError("unknown document id " + id);
  return docs_[*idx];
}

std::optional<std::size_t> Corpus::index_of(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::string required_string(const nlohmann::json& rec, const char* field,
                            std::size_t line_no) {
  auto it = rec.find(field);
  if (it == rec.end()) {
    throw DataError("line " + std::to_string(line_no) + ": missing field \"" +
                    field + "\"");
  }
  if (!it->is_string()) {
    throw DataError("line " + std::to_string(line_no) + ": field \"" + field +
                    "\" is not a string");
  }
  return it->get<std::string>();
}

}  // namespace

Corpus parse_corpus(std::istream& in, StopwordSet stopwords) {
  std::vector<Document> docs;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;

    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError("line " + std::to_string(line_no) + ": invalid JSON (" +
                      e.what() + ")");
    }
    if (!rec.is_object()) {
      throw DataError("line " + std::to_string(line_no) +
                      ": record is not a JSON object");
    }
    auto id = required_string(rec, "id", line_no);
    auto title = required_string(rec, "title", line_no);
    auto abstract = required_string(rec, "abstract", line_no);

    std::optional<std::vector<std::string>> gold;
    if (auto it = rec.find("keyphrases"); it != rec.end() && !it->is_null()) {
      if (!it->is_array()) {
        throw DataError("line " + std::to_string(line_no) +
                        ": \"keyphrases\" is not an array");
      }
      std::vector<std::string> kps;
      for (const auto& kp : *it) {
        if (!kp.is_string()) {
          throw DataError("line " + std::to_string(line_no) +
                          ": keyphrase is not a string");
        }
        kps.push_back(kp.get<std::string>());
      }
      gold = std::move(kps);
    }

    if (!seen.emplace(id, line_no).second) throw DataError("duplicate id " + id);
    docs.push_back(make_document(std::move(id), std::move(title),
                                 std::move(abstract), std::move(gold)));
  }
  return Corpus(std::move(docs), std::move(stopwords));
}

Corpus load_corpus(const std::string& path, StopwordSet stopwords) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path);
  return parse_corpus(in, std::move(stopwords));
}

std::vector<CandidateSet> extract_all_candidates(const Corpus& corpus,
                                                 std::size_t max_len) {
  std::vector<CandidateSet> out(corpus.size());
  parallel::for_each_index(corpus.size(), [&](std::size_t i) {
    out[i] = extract_candidates(corpus[i], max_len, corpus.stopwords());
  });
  return out;
}

}  // namespace kpindex
