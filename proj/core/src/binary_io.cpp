#include "sode/binary_io.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "sode/errors.hpp"

namespace sode {

namespace {

// Serialize integers byte-by-byte so the on-disk layout is little-endian on
// every host.
template <typename T>
void put_le(std::ostream& out, T v) {
  unsigned char buf[sizeof(T)];
  for (std::size_t b = 0; b < sizeof(T); ++b)
    buf[b] = static_cast<unsigned char>((v >> (8 * b)) & 0xff);
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(const unsigned char* buf) {
  T v = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b)
    v |= static_cast<T>(buf[b]) << (8 * b);
  return v;
}

}  // namespace

void BinaryWriter::u8(std::uint8_t v) { put_le(out_, v); }
void BinaryWriter::u16(std::uint16_t v) { put_le(out_, v); }
void BinaryWriter::u32(std::uint32_t v) { put_le(out_, v); }
void BinaryWriter::u64(std::uint64_t v) { put_le(out_, v); }
void BinaryWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void BinaryWriter::bytes(const void* data, std::size_t len) {
  out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
}

void BinaryWriter::str(const std::string& s) {
  u32(static_cast<std::uint32_t>(s.size()));
  bytes(s.data(), s.size());
}

void BinaryWriter::header(FileKind kind) {
  bytes(kFileMagic, 4);
  u16(kFormatVersion);
  u8(static_cast<std::uint8_t>(kind));
  u8(0);  // reserved
}

void BinaryWriter::section(const char* tag, const std::string& payload) {
  bytes(tag, 4);
  u64(payload.size());
  bytes(payload.data(), payload.size());
}

void BinaryReader::need(void* dst, std::size_t len) {
  in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(len));
  if (static_cast<std::size_t>(in_.gcount()) != len)
    throw DecodeError("unexpected end of file");
}

std::uint8_t BinaryReader::u8() {
  unsigned char b[1];
  need(b, 1);
  return b[0];
}
std::uint16_t BinaryReader::u16() {
  unsigned char b[2];
  need(b, 2);
  return get_le<std::uint16_t>(b);
}
std::uint32_t BinaryReader::u32() {
  unsigned char b[4];
  need(b, 4);
  return get_le<std::uint32_t>(b);
}
std::uint64_t BinaryReader::u64() {
  unsigned char b[8];
  need(b, 8);
  return get_le<std::uint64_t>(b);
}
double BinaryReader::f64() { return std::bit_cast<double>(u64()); }

std::string BinaryReader::str() {
  std::uint32_t len = u32();
  std::string s(len, '\0');
  if (len > 0) need(s.data(), len);
  return s;
}

FileKind BinaryReader::header() {
  char magic[4];
  need(magic, 4);
  if (std::memcmp(magic, kFileMagic, 4) != 0)
    throw DecodeError("bad magic: not a sode file");
  std::uint16_t version = u16();
  if (version != kFormatVersion)
    throw DecodeError("unsupported format version " + std::to_string(version));
  std::uint8_t kind = u8();
  u8();  // reserved
  if (kind > static_cast<std::uint8_t>(FileKind::Model))
    throw DecodeError("unknown file kind " + std::to_string(kind));
  return static_cast<FileKind>(kind);
}

bool BinaryReader::at_eof() {
  return in_.peek() == std::char_traits<char>::eof();
}

bool BinaryReader::next_section(std::string& tag, std::string& payload) {
  if (at_eof()) return false;
  char t[4];
  need(t, 4);
  tag.assign(t, 4);
  std::uint64_t len = u64();
  payload.resize(len);
  if (len > 0) need(payload.data(), len);
  return true;
}

void PayloadReader::need(void* dst, std::size_t len) {
  if (pos_ + len > data_.size())
    throw DecodeError("truncated section payload");
  std::memcpy(dst, data_.data() + pos_, len);
  pos_ += len;
}

std::uint8_t PayloadReader::u8() {
  unsigned char b[1];
  need(b, 1);
  return b[0];
}
std::uint16_t PayloadReader::u16() {
  unsigned char b[2];
  need(b, 2);
  return get_le<std::uint16_t>(b);
}
std::uint32_t PayloadReader::u32() {
  unsigned char b[4];
  need(b, 4);
  return get_le<std::uint32_t>(b);
}
std::uint64_t PayloadReader::u64() {
  unsigned char b[8];
  need(b, 8);
  return get_le<std::uint64_t>(b);
}
double PayloadReader::f64() { return std::bit_cast<double>(u64()); }

std::string PayloadReader::str() {
  std::uint32_t len = u32();
  std::string s(len, '\0');
  if (len > 0) need(s.data(), len);
  return s;
}

void PayloadReader::expect_done(const char* what) const {
  if (pos_ != data_.size())
    throw DecodeError(std::string("trailing bytes in section ") + what);
}

}  // namespace sode
