#include "kpindex/index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "kpindex/error.hpp"

namespace kpindex {

const char* to_string(Field field) {
  switch (field) {
    case Field::kText:
      return "TEXT";
    case Field::kKpPresent:
      return "KP_PRESENT";
    case Field::kKpAbsent:
      return "KP_ABSENT";
  }
  return "?";
}

double field_weight(Field field) {
  return field == Field::kText ? 1.0 : 1.5;
}

InvertedIndex::InvertedIndex(std::vector<std::string> doc_ids)
    : doc_ids_(std::move(doc_ids)) {
  std::sort(doc_ids_.begin(), doc_ids_.end());
  if (std::adjacent_find(doc_ids_.begin(), doc_ids_.end()) != doc_ids_.end()) {
    throw DataError("duplicate document id in index");
  }
  doc_lengths_.assign(doc_ids_.size(), 0.0);
}

std::uint32_t InvertedIndex::doc_index(const std::string& id) const {
  auto it = std::lower_bound(doc_ids_.begin(), doc_ids_.end(), id);
  if (it == doc_ids_.end() || *it != id) throw DataError("unknown document id " + id);
  return static_cast<std::uint32_t>(it - doc_ids_.begin());
}

void InvertedIndex::add(const std::string& stem, std::uint32_t doc, Field field,
                        double weight) {
  if (doc >= doc_ids_.size()) throw DataError("posting for unknown document");
  if (!(weight > 0.0)) return;
  auto& list = postings_[stem];
  // callers usually add documents in order, so search from the back
  for (auto it = list.rbegin(); it != list.rend(); ++it) {
    if (it->doc == doc && it->field == field) {
      it->weight += weight;
      return;
    }
  }
  list.push_back({doc, field, weight});
}

void InvertedIndex::finalize() {
  doc_lengths_.assign(doc_ids_.size(), 0.0);
  for (auto& [stem, list] : postings_) {
    std::sort(list.begin(), list.end(), [](const Posting& a, const Posting& b) {
      if (a.doc != b.doc) return a.doc < b.doc;
      return a.field < b.field;
    });
    for (const auto& p : list) doc_lengths_[p.doc] += field_weight(p.field) * p.weight;
  }
  double total = 0.0;
  for (double len : doc_lengths_) total += len;
  avg_length_ = doc_ids_.empty() ? 0.0 : total / static_cast<double>(doc_ids_.size());
}

std::vector<SearchHit> InvertedIndex::search(const std::string& query,
                                             std::size_t top_n) const {
  const StopwordSet stop(std::unordered_set<std::string>(stopwords.begin(), stopwords.end()));
  std::set<std::string> terms;
  for (const auto& tok : tokenize(query)) {
    if (is_sentence_break(tok)) continue;
    const std::string s = stem(tok);
    if (!stop.contains(tok, s)) terms.insert(s);
  }

  const auto n_docs = static_cast<double>(doc_ids_.size());
  std::vector<double> scores(doc_ids_.size(), 0.0);
  for (const auto& term : terms) {
    auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const auto& list = it->second;

    // postings are sorted by doc, so per-doc fields are contiguous
    std::vector<std::pair<std::uint32_t, double>> per_doc;
    for (const auto& p : list) {
      const double w = field_weight(p.field) * p.weight;
      if (!per_doc.empty() && per_doc.back().first == p.doc) {
        per_doc.back().second += w;
      } else {
        per_doc.emplace_back(p.doc, w);
      }
    }
    const auto df = static_cast<double>(per_doc.size());
    const double idf = std::log(1.0 + (n_docs - df + 0.5) / (df + 0.5));
    for (const auto& [doc, tf] : per_doc) {
      const double norm =
          avg_length_ > 0.0 ? doc_lengths_[doc] / avg_length_ : 1.0;
      scores[doc] +=
          idf * tf * (kBm25K1 + 1.0) / (tf + kBm25K1 * (1.0 - kBm25B + kBm25B * norm));
    }
  }

  std::vector<SearchHit> hits;
  for (std::size_t d = 0; d < scores.size(); ++d) {
    if (scores[d] > 0.0) hits.push_back({doc_ids_[d], scores[d]});
  }
  std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  if (hits.size() > top_n) hits.resize(top_n);
  return hits;
}

namespace {

constexpr char kMagic[8] = {'K', 'P', 'I', 'N', 'D', 'E', 'X', '\x1a'};

constexpr std::uint32_t fourcc(const char (&s)[5]) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(s[0])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[3])) << 24;
}

constexpr std::uint32_t kTagConf = fourcc("CONF");
constexpr std::uint32_t kTagStop = fourcc("STOP");
constexpr std::uint32_t kTagDocs = fourcc("DOCS");
constexpr std::uint32_t kTagPost = fourcc("POST");
constexpr std::uint32_t kTagEnd = fourcc("END ");

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_ += s;
  }
  void raw(const std::string& s) { buf_ += s; }
  const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  bool at_end() const { return pos_ == data_.size(); }

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_++])) << (8 * i);
    }
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_++])) << (8 * i);
    }
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint32_t n = u32();
    return std::string(bytes(n));
  }
  std::string_view bytes(std::size_t n) {
    need(n);
    auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw DataError("corrupt index: truncated data");
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

void write_section(Writer& out, std::uint32_t tag, const Writer& payload) {
  out.u32(tag);
  out.u64(payload.bytes().size());
  out.raw(payload.bytes());
}

}  // namespace

void InvertedIndex::save(std::ostream& out) const {
  Writer w;
  w.raw(std::string(kMagic, sizeof kMagic));
  w.u8(kFormatVersion);

  Writer conf;
  conf.raw(config_echo);
  write_section(w, kTagConf, conf);

  Writer stop;
  stop.u32(static_cast<std::uint32_t>(stopwords.size()));
  for (const auto& s : stopwords) stop.str(s);
  write_section(w, kTagStop, stop);

  Writer docs;
  docs.u32(static_cast<std::uint32_t>(doc_ids_.size()));
  for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
    docs.str(doc_ids_[i]);
    docs.f64(doc_lengths_[i]);
  }
  write_section(w, kTagDocs, docs);

  Writer post;
  post.u32(static_cast<std::uint32_t>(postings_.size()));
  for (const auto& [stem, list] : postings_) {
    post.str(stem);
    post.u32(static_cast<std::uint32_t>(list.size()));
    for (const auto& p : list) {
      post.u32(p.doc);
      post.u8(static_cast<std::uint8_t>(p.field));
      post.f64(p.weight);
    }
  }
  write_section(w, kTagPost, post);
  write_section(w, kTagEnd, Writer{});

  out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
  if (!out) throw DataError("failed to write index");
}

void InvertedIndex::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write index file " + path);
  save(out);
}

InvertedIndex InvertedIndex::load(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();
  Reader r(data);

  if (data.size() < sizeof kMagic || std::memcmp(data.data(), kMagic, sizeof kMagic) != 0) {
    throw DataError("not an index file: bad magic header");
  }
  r.bytes(sizeof kMagic);
  const std::uint8_t version = r.u8();
  if (version != kFormatVersion) {
    throw DataError("unsupported index format version " + std::to_string(version));
  }

  InvertedIndex idx;
  bool have_docs = false;
  bool have_post = false;
  bool have_end = false;
  while (!r.at_end()) {
    const std::uint32_t tag = r.u32();
    const std::uint64_t len = r.u64();
    Reader sec(r.bytes(len));
    if (tag == kTagEnd) {
      have_end = true;
      break;
    }
    if (tag == kTagConf) {
      idx.config_echo = std::string(sec.bytes(len));
    } else if (tag == kTagStop) {
      const std::uint32_t n = sec.u32();
      for (std::uint32_t i = 0; i < n; ++i) idx.stopwords.push_back(sec.str());
    } else if (tag == kTagDocs) {
      const std::uint32_t n = sec.u32();
      for (std::uint32_t i = 0; i < n; ++i) {
        idx.doc_ids_.push_back(sec.str());
        idx.doc_lengths_.push_back(sec.f64());
      }
      if (!std::is_sorted(idx.doc_ids_.begin(), idx.doc_ids_.end()) ||
          std::adjacent_find(idx.doc_ids_.begin(), idx.doc_ids_.end()) !=
              idx.doc_ids_.end()) {
        throw DataError("corrupt index: document table not sorted/unique");
      }
      have_docs = true;
    } else if (tag == kTagPost) {
      if (!have_docs) throw DataError("corrupt index: postings before document table");
      const std::uint32_t terms = sec.u32();
      for (std::uint32_t t = 0; t < terms; ++t) {
        std::string stem = sec.str();
        const std::uint32_t n = sec.u32();
        std::vector<Posting> list;
        list.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) {
          Posting p;
          p.doc = sec.u32();
          const std::uint8_t field = sec.u8();
          p.weight = sec.f64();
          if (p.doc >= idx.doc_ids_.size()) {
            throw DataError("corrupt index: posting references unknown document");
          }
          if (field > static_cast<std::uint8_t>(Field::kKpAbsent)) {
            throw DataError("corrupt index: unknown field code " + std::to_string(field));
          }
          if (!(p.weight > 0.0) || !std::isfinite(p.weight)) {
            throw DataError("corrupt index: non-positive posting weight");
          }
          p.field = static_cast<Field>(field);
          if (!list.empty() && std::tie(list.back().doc, list.back().field) >=
                                   std::tie(p.doc, p.field)) {
            throw DataError("corrupt index: postings for \"" + stem + "\" out of order");
          }
          list.push_back(p);
        }
        idx.postings_.emplace(std::move(stem), std::move(list));
      }
      have_post = true;
    }
    // unknown sections are skipped
  }
  if (!have_end) throw DataError("corrupt index: truncated data (missing END section)");
  if (!have_docs || !have_post) throw DataError("corrupt index: missing required section");

  double total = 0.0;
  for (double len : idx.doc_lengths_) total += len;
  idx.avg_length_ =
      idx.doc_ids_.empty() ? 0.0 : total / static_cast<double>(idx.doc_ids_.size());
  return idx;
}

InvertedIndex InvertedIndex::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open index file " + path);
  return load(in);
}

InvertedIndex build_index(const Corpus& corpus,
                          const std::vector<std::vector<RankedKeyphrase>>& keyphrases) {
  std::vector<std::string> ids;
  ids.reserve(corpus.size());
  for (const auto& doc : corpus.documents()) ids.push_back(doc.id);
  InvertedIndex idx(std::move(ids));
  idx.stopwords = corpus.stopwords().sorted_words();

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Document& doc = corpus[i];
    const auto d = idx.doc_index(doc.id);
    for (std::size_t t = 0; t < doc.tokens.size(); ++t) {
      if (is_sentence_break(doc.tokens[t])) continue;
      if (corpus.stopwords().contains(doc.tokens[t], doc.stems[t])) continue;
      idx.add(doc.stems[t], d, Field::kText, 1.0);
    }
    if (i >= keyphrases.size()) continue;
    for (const auto& kp : keyphrases[i]) {
      const Field field =
          kp.origin == Origin::kPresent ? Field::kKpPresent : Field::kKpAbsent;
      std::istringstream words(kp.key);
      std::string s;
      while (words >> s) idx.add(s, d, field, 1.0);
    }
  }
  idx.finalize();
  return idx;
}

}  // namespace kpindex
