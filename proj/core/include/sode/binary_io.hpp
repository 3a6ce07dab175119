#pragma once

// Little-endian binary container used by model and store files. A file is a
// fixed header followed by length-prefixed sections, each identified by a
// four-character tag. The exact layout is described in docs/formats.md and
// pinned by golden-file tests.

#include <cstdint>
#include <iosfwd>
#include <string>

namespace sode {

inline constexpr char kFileMagic[4] = {'S', 'O', 'D', 'E'};
inline constexpr std::uint16_t kFormatVersion = 1;

// What the payload after the header describes.
enum class FileKind : std::uint8_t {
  Store = 0,  // one frequency store
  Model = 1,  // classifier config + catalog + one or more stores
};

class BinaryWriter {
public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  void u8(std::uint8_t v);
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void bytes(const void* data, std::size_t len);
  // u32 length prefix + raw bytes.
  void str(const std::string& s);

  void header(FileKind kind);
  // Tag must be exactly four characters; payload is written verbatim.
  void section(const char* tag, const std::string& payload);

private:
  std::ostream& out_;
};

class BinaryReader {
public:
  explicit BinaryReader(std::istream& in) : in_(in) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  std::string str();

  // Throws DecodeError on bad magic or unsupported version.
  FileKind header();
  // Reads the next section; returns false on clean end-of-file. A truncated
  // section raises DecodeError.
  bool next_section(std::string& tag, std::string& payload);
  bool at_eof();

private:
  void need(void* dst, std::size_t len);
  std::istream& in_;
};

// Reader over an in-memory section payload (same integer accessors, bounds
// checked against the payload length).
class PayloadReader {
public:
  explicit PayloadReader(const std::string& payload) : data_(payload) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  std::string str();
  bool done() const { return pos_ == data_.size(); }
  // Throws DecodeError unless the whole payload was consumed.
  void expect_done(const char* what) const;

private:
  void need(void* dst, std::size_t len);
  const std::string& data_;
  std::size_t pos_ = 0;
};

}  // namespace sode
