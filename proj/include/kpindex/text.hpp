#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace kpindex {

/// Marker token placed at sentence boundaries and between title and abstract.
/// It is the only token without an alphanumeric character.
inline constexpr std::string_view kSentenceBreak = ".";

inline bool is_sentence_break(std::string_view token) {
  return token == kSentenceBreak;
}

/// Splits raw text into lowercase tokens.
///
/// Any character that is not alphanumeric separates tokens, except a hyphen
/// with alphanumeric characters on both sides. A `.`, `!` or `?` followed by
/// whitespace (or the end of the text) emits a sentence-break marker.
/// Consecutive markers collapse and the stream never starts with one.
/// Bytes >= 0x80 are kept as word characters so UTF-8 words survive intact.
std::vector<std::string> tokenize(std::string_view text);

/// Porter stemmer, matching the behaviour of the reference C implementation
/// (including its `logi` and `bli` departures from the original algorithm).
/// Words of two letters or fewer are returned unchanged.
std::string stem(std::string_view token);

/// Tokenizes and stems `phrase`, dropping sentence breaks, and joins the stems
/// with single spaces. Returns "" when nothing survives.
std::string normalize_phrase(std::string_view phrase);

class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(std::unordered_set<std::string> words);

  /// Built-in English list; the same list ships as data/stopwords_en.txt.
  static StopwordSet english();
  /// One word per line; blank lines and lines starting with '#' are skipped.
  static StopwordSet from_stream(std::istream& in);
  static StopwordSet from_file(const std::string& path);

  /// A position is a stopword when either its token or its stem is listed.
  bool contains(std::string_view token, std::string_view stem) const;
  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  std::vector<std::string> sorted_words() const;

 private:
  std::unordered_set<std::string> words_;
};

}  // namespace kpindex
