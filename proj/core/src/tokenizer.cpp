#include "sode/tokenizer.hpp"

#include <algorithm>
#include <istream>

namespace sode {

namespace {

// A compact English stop list (articles, pronouns, auxiliaries, common
// prepositions and conjunctions).
constexpr const char* kDefaultStopWords[] = {
    "a",       "about",   "above",  "after",   "again",  "against", "all",
    "am",      "an",      "and",    "any",     "are",    "as",      "at",
    "be",      "because", "been",   "before",  "being",  "below",   "between",
    "both",    "but",     "by",     "can",     "cannot", "could",   "did",
    "do",      "does",    "doing",  "down",    "during", "each",    "few",
    "for",     "from",    "further","had",     "has",    "have",    "having",
    "he",      "her",     "here",   "hers",    "herself","him",     "himself",
    "his",     "how",     "i",      "if",      "in",     "into",    "is",
    "it",      "its",     "itself", "just",    "me",     "more",    "most",
    "my",      "myself",  "no",     "nor",     "not",    "now",     "of",
    "off",     "on",      "once",   "only",    "or",     "other",   "our",
    "ours",    "ourselves","out",   "over",    "own",    "same",    "she",
    "should",  "so",      "some",   "such",    "than",   "that",    "the",
    "their",   "theirs",  "them",   "themselves","then", "there",   "these",
    "they",    "this",    "those",  "through", "to",     "too",     "under",
    "until",   "up",      "very",   "was",     "we",     "were",    "what",
    "when",    "where",   "which",  "while",   "who",    "whom",    "why",
    "will",    "with",    "would",  "you",     "your",   "yours",   "yourself",
    "yourselves",
};

bool token_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

char fold(unsigned char c) {
  return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                              : static_cast<char>(c);
}

}  // namespace

Tokenizer::Tokenizer() {
  for (const char* w : kDefaultStopWords) stops_.insert(w);
}

Tokenizer::Tokenizer(std::vector<std::string> stop_words) {
  // Terms are folded to lowercase before the stop check, so stop entries
  // must be folded too or uppercase entries could never match.
  for (std::string& w : stop_words) {
    for (char& c : w) c = fold(static_cast<unsigned char>(c));
    stops_.insert(std::move(w));
  }
}

Tokenizer Tokenizer::from_stop_file(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    words.push_back(line);
  }
  return Tokenizer(std::move(words));
}

std::vector<std::string> Tokenizer::unique_terms(std::string_view text) const {
  std::vector<std::string> terms;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && !stops_.contains(cur)) terms.push_back(cur);
    cur.clear();
  };
  for (char raw : text) {
    const auto c = static_cast<unsigned char>(raw);
    if (token_char(c))
      cur += fold(c);
    else
      flush();
  }
  flush();
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return terms;
}

}  // namespace sode
