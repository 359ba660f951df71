#include "fedchain/common/sha256.h"

#include <openssl/evp.h>

#include "fedchain/common/error.h"

namespace fedchain {

struct Sha256::Impl {
  EVP_MD_CTX* ctx = nullptr;
  ~Impl() { EVP_MD_CTX_free(ctx); }
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {
  impl_->ctx = EVP_MD_CTX_new();
  if (impl_->ctx == nullptr ||
      EVP_DigestInit_ex(impl_->ctx, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 initialisation failed");
  }
}

Sha256::~Sha256() = default;
Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&&) noexcept = default;

Sha256& Sha256::Update(std::span<const std::uint8_t> bytes) {
  if (EVP_DigestUpdate(impl_->ctx, bytes.data(), bytes.size()) != 1) {
    throw Error("SHA-256 update failed");
  }
  return *this;
}

Sha256& Sha256::UpdateU64(std::uint64_t v) {
  auto be = BigEndian64(v);
  return Update(be);
}

Digest Sha256::Finish() {
  Digest out;
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(impl_->ctx, out.data(), &len) != 1 || len != 32) {
    throw Error("SHA-256 finalisation failed");
  }
  return out;
}

Digest Sha256Of(std::span<const std::uint8_t> bytes) {
  return Sha256().Update(bytes).Finish();
}

std::uint64_t LowU64(const Digest& d) {
  std::uint64_t v = 0;
  for (int i = 24; i < 32; ++i) v = v << 8 | d[i];
  return v;
}

}  // namespace fedchain
