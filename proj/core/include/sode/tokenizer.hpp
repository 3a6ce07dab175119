#pragma once

// Deterministic text tokenization for bag-of-words features: lowercase terms
// split on runs of non-alphanumeric ASCII, with stop words removed and
// duplicates dropped. Bytes outside ASCII are kept as token characters, so
// multi-byte UTF-8 sequences stay inside their token unchanged.

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sode {

class Tokenizer {
public:
  // Bundled English stop-word list.
  Tokenizer();
  explicit Tokenizer(std::vector<std::string> stop_words);
  // One stop word per line, '#' comments and blank lines ignored.
  static Tokenizer from_stop_file(std::istream& in);

  // Sorted unique lowercase terms of the text, stop words removed.
  std::vector<std::string> unique_terms(std::string_view text) const;

  bool is_stop_word(const std::string& term) const {
    return stops_.contains(term);
  }
  std::size_t stop_word_count() const { return stops_.size(); }

private:
  std::unordered_set<std::string> stops_;
};

}  // namespace sode
