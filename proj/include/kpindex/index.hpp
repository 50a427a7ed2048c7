#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "kpindex/corpus.hpp"
#include "kpindex/ranking.hpp"

namespace kpindex {

enum class Field : std::uint8_t { kText = 0, kKpPresent = 1, kKpAbsent = 2 };
const char* to_string(Field field);

/// BM25 field weights.
double field_weight(Field field);

inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;

struct Posting {
  std::uint32_t doc = 0;  // index into InvertedIndex::doc_ids()
  Field field = Field::kText;
  double weight = 0.0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct SearchHit {
  std::string id;
  double score = 0.0;

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

/// Stem -> postings over TEXT plus the two keyphrase fields.
///
/// On-disk layout (all integers little-endian):
///
///   magic "KPINDEX\x1a" | u8 format version | sections... | "END " section
///
/// where every section is `u32 tag | u64 payload length | payload`. Readers
/// skip sections with unknown tags. Version 1 sections:
///
///   CONF  utf-8 JSON echo of the build configuration
///   STOP  u32 n, n x string            stopword list used at build time
///   DOCS  u32 n, n x (string id, f64 length)
///   POST  u32 terms, terms x (string stem, u32 n, n x (u32 doc, u8 field, f64 weight))
///
/// Strings are `u32 byte length | bytes`; f64 is the IEEE-754 bit pattern.
class InvertedIndex {
 public:
  static constexpr std::uint8_t kFormatVersion = 1;

  InvertedIndex() = default;
  /// Document ids must be unique; they are stored sorted.
  explicit InvertedIndex(std::vector<std::string> doc_ids);

  /// Accumulates `weight` into the (stem, doc, field) posting.
  void add(const std::string& stem, std::uint32_t doc, Field field, double weight);

  /// Sorts postings by (doc, field) and recomputes document lengths.
  void finalize();

  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  std::uint32_t doc_index(const std::string& id) const;
  const std::map<std::string, std::vector<Posting>>& postings() const {
    return postings_;
  }
  const std::vector<double>& doc_lengths() const { return doc_lengths_; }
  double average_length() const { return avg_length_; }

  std::string config_echo;             // JSON text
  std::vector<std::string> stopwords;  // sorted

  /// BM25 over all fields; ties broken by doc id. Query terms are tokenized,
  /// stemmed and filtered through the stored stopword list.
  std::vector<SearchHit> search(const std::string& query, std::size_t top_n) const;

  void save(std::ostream& out) const;
  void save(const std::string& path) const;
  /// Throws DataError naming the problem (bad magic, version, truncation...).
  static InvertedIndex load(std::istream& in);
  static InvertedIndex load(const std::string& path);

  friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

 private:
  std::vector<std::string> doc_ids_;
  std::map<std::string, std::vector<Posting>> postings_;
  std::vector<double> doc_lengths_;
  double avg_length_ = 0.0;
};

/// TEXT postings count indexable stems; keyphrase postings count how many of
/// the document's keyphrases in that field contain the stem.
/// `keyphrases[i]` are the keyphrases assigned to corpus doc i; each lands in
/// the field matching its origin.
InvertedIndex build_index(const Corpus& corpus,
                          const std::vector<std::vector<RankedKeyphrase>>& keyphrases);

}  // namespace kpindex
