#include "sode/ingest.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "sode/errors.hpp"
#include "sode/log.hpp"
#include "sode/stream_io.hpp"

namespace sode {

namespace {

using nlohmann::json;

}  // namespace

RawDocument parse_document(const std::string& line) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::exception& e) {
    throw DecodeError(std::string("document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DecodeError("document line is not a JSON object");

  RawDocument out;
  if (const auto it = doc.find("text"); it != doc.end()) {
    if (!it->is_string()) throw DecodeError("document 'text' must be a string");
    out.text = it->get<std::string>();
  }
  if (const auto it = doc.find("date"); it != doc.end()) {
    if (!it->is_string()) throw DecodeError("document 'date' must be a string");
    out.date = it->get<std::string>();
  }
  if (const auto it = doc.find("season"); it != doc.end()) {
    if (!it->is_number_unsigned())
      throw DecodeError("document 'season' must be a non-negative integer");
    out.season = it->get<SeasonValue>();
  }
  if (const auto it = doc.find("labels"); it != doc.end()) {
    if (!it->is_array()) throw DecodeError("document 'labels' must be an array");
    for (const json& l : *it) {
      if (!l.is_string())
        throw DecodeError("document labels must be strings");
      out.labels.push_back(l.get<std::string>());
    }
  }
  return out;
}

StreamInstance encode_document(const RawDocument& doc, const Vocabulary& vocab,
                               const Tokenizer& tokenizer,
                               const SeasonSpec& season) {
  StreamInstance x;
  for (const std::string& term : tokenizer.unique_terms(doc.text))
    if (const auto index = vocab.index_of(term)) x.values.emplace_back(*index, 1);
  // Terms came sorted lexicographically; instance values sort by index.
  std::sort(x.values.begin(), x.values.end());

  if (season.kind == SeasonSpec::Kind::Column) {
    x.season = doc.season;
    if (x.season && *x.season >= season.cardinality) {
      SODE_INFO("ingest", "season %u out of range (T=%u); treated as unknown",
                static_cast<unsigned>(*x.season),
                static_cast<unsigned>(season.cardinality));
      x.season.reset();
    }
  } else {
    x.season = season.season_of_date(doc.date);
    if (!x.season)
      SODE_INFO("ingest", "unparseable or missing date '%s'; season unknown",
                doc.date.c_str());
  }
  x.labels = doc.labels;
  return x;
}

VocabBuildResult build_vocabulary(std::istream& jsonl,
                                  const Tokenizer& tokenizer, std::size_t k) {
  Vocabulary::Builder builder;
  VocabBuildResult result;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(jsonl, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const RawDocument doc = parse_document(line);
      builder.add_document(tokenizer.unique_terms(doc.text));
      ++result.documents;
    } catch (const DecodeError& e) {
      ++result.skipped;
      SODE_INFO("ingest", "line %zu skipped: %s", lineno, e.what());
    }
  }
  result.vocabulary = builder.top(k);
  return result;
}

PreprocessResult preprocess(std::istream& jsonl, std::ostream& stream_out,
                            const Vocabulary& vocab, const Tokenizer& tokenizer,
                            const SeasonSpec& season) {
  PreprocessResult result;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(jsonl, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const RawDocument doc = parse_document(line);
      if (doc.labels.empty())
        throw DecodeError("document carries no labels");
      const StreamInstance x = encode_document(doc, vocab, tokenizer, season);
      write_stream_line(stream_out, x);  // throws SchemaError on dirty labels
      if (!x.season) ++result.unknown_season;
      ++result.documents;
    } catch (const Error& e) {
      ++result.skipped;
      SODE_INFO("ingest", "line %zu skipped: %s", lineno, e.what());
    }
  }
  if (!stream_out) throw Error("failed writing encoded stream");
  return result;
}

}  // namespace sode
