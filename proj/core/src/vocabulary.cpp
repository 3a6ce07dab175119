#include "sode/vocabulary.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "sode/errors.hpp"

namespace sode {

void Vocabulary::Builder::add_document(
    const std::vector<std::string>& unique_terms) {
  ++documents_;
  for (const std::string& term : unique_terms) ++frequencies_[term];
}

Vocabulary Vocabulary::Builder::top(std::size_t k) const {
  if (documents_ == 0)
    throw Error("cannot build a vocabulary from an empty corpus");
  std::vector<VocabEntry> entries;
  entries.reserve(frequencies_.size());
  for (const auto& [term, freq] : frequencies_)
    entries.push_back({term, freq});
  std::sort(entries.begin(), entries.end(),
            [](const VocabEntry& a, const VocabEntry& b) {
              if (a.doc_frequency != b.doc_frequency)
                return a.doc_frequency > b.doc_frequency;
              return a.term < b.term;
            });
  if (entries.size() > k) entries.resize(k);
  return Vocabulary(std::move(entries));
}

Vocabulary::Vocabulary(std::vector<VocabEntry> entries)
    : entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (AttrIndex i = 0; i < entries_.size(); ++i)
    index_.emplace(entries_[i].term, i);
}

std::optional<AttrIndex> Vocabulary::index_of(const std::string& term) const {
  const auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AttributeSchema Vocabulary::schema() const {
  return AttributeSchema::binary(static_cast<AttrIndex>(entries_.size()), 1);
}

void Vocabulary::save(std::ostream& out) const {
  for (const VocabEntry& e : entries_)
    out << e.term << '\t' << e.doc_frequency << '\n';
  if (!out) throw Error("failed writing vocabulary file");
}

Vocabulary Vocabulary::load(std::istream& in) {
  std::vector<VocabEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw DecodeError("vocabulary line " + std::to_string(lineno) +
                        ": expected term<TAB>frequency");
    VocabEntry e;
    e.term = line.substr(0, tab);
    const std::string freq = line.substr(tab + 1);
    try {
      std::size_t used = 0;
      e.doc_frequency = std::stoull(freq, &used);
      if (used != freq.size()) throw std::invalid_argument(freq);
    } catch (const std::exception&) {
      throw DecodeError("vocabulary line " + std::to_string(lineno) +
                        ": bad frequency '" + freq + "'");
    }
    if (e.doc_frequency < 1)
      throw DecodeError("vocabulary line " + std::to_string(lineno) +
                        ": frequency must be >= 1");
    if (!entries.empty() && e.doc_frequency > entries.back().doc_frequency)
      throw DecodeError("vocabulary line " + std::to_string(lineno) +
                        ": frequencies must be non-increasing");
    entries.push_back(std::move(e));
  }
  Vocabulary vocab(std::move(entries));
  if (vocab.index_.size() != vocab.entries_.size())
    throw DecodeError("vocabulary holds a duplicate term");
  return vocab;
}

}  // namespace sode
