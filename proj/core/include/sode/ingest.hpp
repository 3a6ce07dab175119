#pragma once

// Raw-corpus ingestion: JSON-lines documents -> tokenized terms -> top-K
// vocabulary -> encoded binary instance stream with a season value derived
// from the document date (or carried explicitly).
//
// Input, one document per line:
//   {"text": "...", "date": "YYYY-MM-DD", "labels": ["a", "b"]}
// or with an explicit season instead of a date:
//   {"text": "...", "season": 3, "labels": ["a"]}

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sode/prequential.hpp"
#include "sode/season.hpp"
#include "sode/tokenizer.hpp"
#include "sode/vocabulary.hpp"

namespace sode {

struct RawDocument {
  std::string text;
  std::string date;                   // empty when absent
  std::optional<SeasonValue> season;  // explicit season value, if any
  std::vector<std::string> labels;
};

// Parses one JSONL line. Throws DecodeError on invalid JSON or field shapes.
RawDocument parse_document(const std::string& line);

// Presence-encodes a document over the vocabulary and derives its season:
// Column specs read doc.season; date-driven specs parse doc.date (an
// unparseable or absent date yields an unknown season plus a diagnostic).
StreamInstance encode_document(const RawDocument& doc, const Vocabulary& vocab,
                               const Tokenizer& tokenizer,
                               const SeasonSpec& season);

// One pass over a JSONL corpus accumulating document frequencies.
// Unparseable lines are counted and skipped.
struct VocabBuildResult {
  Vocabulary vocabulary;
  Count documents = 0;
  Count skipped = 0;
};
VocabBuildResult build_vocabulary(std::istream& jsonl, const Tokenizer& tokenizer,
                                  std::size_t k);

// Full preprocess pass: JSONL in, encoded stream out. Documents that cannot
// be parsed, carry no labels, or carry labels the stream format cannot hold
// are counted and skipped.
struct PreprocessResult {
  Count documents = 0;       // encoded instances written
  Count skipped = 0;         // dropped documents
  Count unknown_season = 0;  // written with season "?"
};
PreprocessResult preprocess(std::istream& jsonl, std::ostream& stream_out,
                            const Vocabulary& vocab, const Tokenizer& tokenizer,
                            const SeasonSpec& season);

}  // namespace sode
