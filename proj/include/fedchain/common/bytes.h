#ifndef FEDCHAIN_COMMON_BYTES_H_
#define FEDCHAIN_COMMON_BYTES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fedchain {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

std::string ToHex(std::span<const std::uint8_t> bytes);
// Throws ParseError on odd length or non-hex characters.
Bytes FromHex(std::string_view hex);
Digest DigestFromHex(std::string_view hex);

// Canonical, length-prefixed big-endian encoding used for hashing. Reals are
// written as their raw IEEE-754 bit pattern so that equal encodings imply
// bit-identical values.
class ByteWriter {
 public:
  void U8(std::uint8_t v) { out_.push_back(v); }
  void U32(std::uint32_t v);
  void U64(std::uint64_t v);
  void I64(std::int64_t v) { U64(static_cast<std::uint64_t>(v)); }
  void F64(double v);
  void Raw(std::span<const std::uint8_t> bytes);
  // Length prefix (u64) followed by the bytes.
  void Blob(std::span<const std::uint8_t> bytes);
  void Str(std::string_view s);

  const Bytes& bytes() const { return out_; }
  Bytes Take() { return std::move(out_); }

 private:
  Bytes out_;
};

// 8-byte big-endian encoding of a 64-bit integer.
std::array<std::uint8_t, 8> BigEndian64(std::uint64_t v);

}  // namespace fedchain

#endif  // FEDCHAIN_COMMON_BYTES_H_
