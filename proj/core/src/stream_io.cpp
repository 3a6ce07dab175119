#include "sode/stream_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "sode/errors.hpp"
#include "sode/log.hpp"

namespace sode {

namespace {

bool parse_u32(std::string_view text, std::uint32_t& out) {
  if (text.empty()) return false;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

}  // namespace

void write_stream_line(std::ostream& out, const StreamInstance& x) {
  // Validate everything before emitting the first byte, so a rejected
  // instance never leaves a partial line behind.
  if (x.labels.empty())
    throw SchemaError("stream line needs at least one label");
  for (const std::string& name : x.labels)
    if (name.empty() || name.find_first_of(",\t\n\r") != std::string::npos)
      throw SchemaError("label '" + name +
                        "' cannot be carried by the stream format");
  if (x.season)
    out << *x.season;
  else
    out << '?';
  out << '\t';
  for (std::size_t i = 0; i < x.labels.size(); ++i) {
    if (i > 0) out << ',';
    out << x.labels[i];
  }
  out << '\t';
  bool first = true;
  for (const auto& [index, value] : x.values) {
    if (value == 0) continue;
    if (!first) out << ' ';
    out << index;
    first = false;
  }
  out << '\n';
}

bool parse_stream_line(const std::string& line, StreamInstance& x) {
  x.values.clear();
  x.labels.clear();
  x.season.reset();

  const std::size_t tab1 = line.find('\t');
  const std::size_t tab2 =
      tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
  if (tab2 == std::string::npos) {
    SODE_INFO("stream", "line does not have three tab-separated fields");
    return false;
  }
  const std::string_view season_field(line.data(), tab1);
  const std::string_view label_field(line.data() + tab1 + 1, tab2 - tab1 - 1);
  std::string_view index_field(line.data() + tab2 + 1, line.size() - tab2 - 1);
  if (!index_field.empty() && index_field.back() == '\r')
    index_field.remove_suffix(1);

  if (season_field != "?") {
    std::uint32_t t = 0;
    if (!parse_u32(season_field, t)) {
      SODE_INFO("stream", "bad season field '%.*s'",
                static_cast<int>(season_field.size()), season_field.data());
      return false;
    }
    x.season = t;
  }

  std::size_t start = 0;
  while (start <= label_field.size()) {
    const std::size_t end = std::min(label_field.find(',', start), label_field.size());
    const std::string_view name = label_field.substr(start, end - start);
    if (name.empty()) {
      SODE_INFO("stream", "empty label name");
      x.labels.clear();
      return false;
    }
    x.labels.emplace_back(name);
    start = end + 1;
  }

  std::size_t pos = 0;
  while (pos < index_field.size()) {
    const std::size_t end = std::min(index_field.find(' ', pos), index_field.size());
    if (end > pos) {
      std::uint32_t index = 0;
      if (!parse_u32(index_field.substr(pos, end - pos), index)) {
        SODE_INFO("stream", "bad attribute index field");
        x.values.clear();
        x.labels.clear();
        return false;
      }
      x.values.emplace_back(index, 1);
    }
    pos = end + 1;
  }
  std::sort(x.values.begin(), x.values.end());
  x.values.erase(std::unique(x.values.begin(), x.values.end()), x.values.end());
  return true;
}

bool StreamReader::next(StreamInstance& out) {
  std::string line;
  if (!std::getline(in_, line)) return false;
  ++lines_;
  if (!parse_stream_line(line, out)) {
    // Leave `out` as the label-less sentinel; the harness counts it.
    out.values.clear();
    out.labels.clear();
    out.season.reset();
  }
  return true;
}

}  // namespace sode
