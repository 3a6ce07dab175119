#pragma once

// Top-K vocabulary over a corpus: terms ranked by document frequency (each
// term counted once per document), ties broken lexicographically. The ranked
// term list is the attribute space of encoded streams — attribute i is the
// presence of term i — so it is built once and never updated mid-stream.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sode/schema.hpp"

namespace sode {

struct VocabEntry {
  std::string term;
  Count doc_frequency = 0;
};

class Vocabulary {
public:
  // Accumulates document frequencies one document at a time.
  class Builder {
  public:
    // `unique_terms` must hold each term once (Tokenizer::unique_terms does).
    void add_document(const std::vector<std::string>& unique_terms);
    Count documents() const { return documents_; }
    // Top-K by (frequency desc, term asc). Throws on an empty corpus.
    Vocabulary top(std::size_t k) const;

  private:
    std::unordered_map<std::string, Count> frequencies_;
    Count documents_ = 0;
  };

  Vocabulary() = default;

  std::size_t size() const { return entries_.size(); }
  const std::vector<VocabEntry>& entries() const { return entries_; }
  std::optional<AttrIndex> index_of(const std::string& term) const;
  // Binary attribute space of this vocabulary (one presence bit per term).
  AttributeSchema schema() const;

  // One "term<TAB>frequency" line per rank. Loading validates the shape
  // (no duplicates, frequencies non-increasing, each >= 1).
  void save(std::ostream& out) const;
  static Vocabulary load(std::istream& in);

  bool operator==(const Vocabulary& other) const {
    return entries_.size() == other.entries_.size() &&
           std::equal(entries_.begin(), entries_.end(), other.entries_.begin(),
                      [](const VocabEntry& a, const VocabEntry& b) {
                        return a.term == b.term &&
                               a.doc_frequency == b.doc_frequency;
                      });
  }

private:
  explicit Vocabulary(std::vector<VocabEntry> entries);

  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, AttrIndex> index_;
};

}  // namespace sode
