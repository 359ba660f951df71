#include "fedchain/common/bytes.h"

#include <bit>
#include <cstring>

#include "fedchain/common/error.h"

namespace fedchain {

namespace {

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string ToHex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes FromHex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ParseError("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = HexValue(hex[2 * i]);
    int lo = HexValue(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw ParseError("invalid hex character");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

Digest DigestFromHex(std::string_view hex) {
  Bytes raw = FromHex(hex);
  if (raw.size() != 32) throw ParseError("digest must be 32 bytes");
  Digest d;
  std::memcpy(d.data(), raw.data(), 32);
  return d;
}

std::array<std::uint8_t, 8> BigEndian64(std::uint64_t v) {
  std::array<std::uint8_t, 8> out;
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return out;
}

void ByteWriter::U32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void ByteWriter::U64(std::uint64_t v) {
  auto be = BigEndian64(v);
  out_.insert(out_.end(), be.begin(), be.end());
}

void ByteWriter::F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::Raw(std::span<const std::uint8_t> bytes) {
  out_.insert(out_.end(), bytes.begin(), bytes.end());
}

void ByteWriter::Blob(std::span<const std::uint8_t> bytes) {
  U64(bytes.size());
  Raw(bytes);
}

void ByteWriter::Str(std::string_view s) {
  Blob(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

}  // namespace fedchain
