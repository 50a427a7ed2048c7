#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kpindex/text.hpp"

namespace kpindex {

/// A title + abstract record. `tokens` holds the title, a sentence break,
/// then the abstract; `stems` is aligned 1:1 with `tokens`.
struct Document {
  std::string id;
  std::string title;
  std::string abstract;
  std::optional<std::vector<std::string>> gold;
  std::vector<std::string> tokens;
  std::vector<std::string> stems;
};

Document make_document(std::string id, std::string title, std::string abstract,
                       std::optional<std::vector<std::string>> gold = {});

/// Builds a document straight from a token stream (already normalized).
Document document_from_tokens(std::string id, std::vector<std::string> tokens);

struct Occurrence {
  std::size_t start = 0;
  std::size_t length = 0;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

/// A stopword-free n-gram grouped by its stem sequence.
struct Candidate {
  std::string key;                    // stems joined by single spaces
  std::vector<std::string> surfaces;  // one surface form per occurrence
  std::vector<Occurrence> occurrences;
  std::size_t length = 0;

  /// Most frequent surface form; ties go to the one seen first.
  std::string best_surface() const;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

using CandidateSet = std::map<std::string, Candidate>;

inline constexpr std::size_t kDefaultMaxLen = 3;

/// All contiguous n-grams (1 <= n <= max_len) containing no stopword and not
/// crossing a sentence break, grouped by key.
CandidateSet extract_candidates(const Document& doc, std::size_t max_len,
                                const StopwordSet& stopwords);

class Corpus {
 public:
  Corpus() = default;
  /// Documents are kept sorted by id. Throws DataError on a duplicate id.
  explicit Corpus(std::vector<Document> documents,
                  StopwordSet stopwords = StopwordSet::english());

  const std::vector<Document>& documents() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }

  const Document& operator[](std::size_t i) const { return docs_[i]; }
  /// Throws DataError for an unknown id.
  const Document& at(const std::string& id) const;
  std::optional<std::size_t> index_of(const std::string& id) const;

  const StopwordSet& stopwords() const { return stopwords_; }

 private:
  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> by_id_;
  StopwordSet stopwords_;
};

/// Reads JSON Lines records {"id","title","abstract","keyphrases"?}.
/// Malformed records raise DataError naming the line; blank lines are skipped.
Corpus parse_corpus(std::istream& in,
                    StopwordSet stopwords = StopwordSet::english());
Corpus load_corpus(const std::string& path,
                   StopwordSet stopwords = StopwordSet::english());

/// Candidates for every document in corpus order, computed in parallel.
std::vector<CandidateSet> extract_all_candidates(const Corpus& corpus,
                                                 std::size_t max_len);

}  // namespace kpindex
