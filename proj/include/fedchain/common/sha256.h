#ifndef FEDCHAIN_COMMON_SHA256_H_
#define FEDCHAIN_COMMON_SHA256_H_

#include <cstdint>
#include <memory>
#include <span>

#include "fedchain/common/bytes.h"

namespace fedchain {

// Incremental SHA-256 backed by OpenSSL's EVP interface.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  Sha256(Sha256&&) noexcept;
  Sha256& operator=(Sha256&&) noexcept;

  Sha256& Update(std::span<const std::uint8_t> bytes);
  Sha256& UpdateU64(std::uint64_t v);  // 8-byte big-endian
  Digest Finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Digest Sha256Of(std::span<const std::uint8_t> bytes);

// Last 8 bytes of the digest read big-endian.
std::uint64_t LowU64(const Digest& d);

}  // namespace fedchain

#endif  // FEDCHAIN_COMMON_SHA256_H_
