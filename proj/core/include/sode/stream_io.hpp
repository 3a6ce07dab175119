#pragma once

// Text format for encoded binary-attribute streams, one instance per line:
//
//   <season or ?> TAB <label,label,...> TAB <index index ...>
//
// The third field lists the attributes present in the instance (value 1),
// ascending; it may be empty. Label names cannot contain tabs, commas or
// newlines. The format carries no header — the attribute count comes from the
// vocabulary or generator that produced the stream.

#include <iosfwd>
#include <string>

#include "sode/prequential.hpp"
#include "sode/schema.hpp"

namespace sode {

// Renders one instance (entries with value 0 are dropped; label list must be
// non-empty and clean). Throws SchemaError on labels the format cannot carry.
void write_stream_line(std::ostream& out, const StreamInstance& x);

// Parses one line. Returns false on a malformed line, after logging the
// reason and resetting `x` to a sentinel with no labels (the evaluation
// harness counts and skips it).
bool parse_stream_line(const std::string& line, StreamInstance& x);

// Streaming source over the text format. Attribute width is supplied by the
// caller; malformed lines come out as label-less sentinels so the harness
// can count them without halting.
class StreamReader final : public InstanceSource {
public:
  StreamReader(std::istream& in, AttributeSchema schema)
      : in_(in), schema_(std::move(schema)) {}

  const AttributeSchema& schema() const override { return schema_; }
  bool next(StreamInstance& out) override;
  std::size_t lines_read() const { return lines_; }

private:
  std::istream& in_;
  AttributeSchema schema_;
  std::size_t lines_ = 0;
};

}  // namespace sode
