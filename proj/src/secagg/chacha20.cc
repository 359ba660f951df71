#include "fedchain/secagg/chacha20.h"

#include <openssl/evp.h>

#include <memory>
#include <vector>

#include "fedchain/common/error.h"

namespace fedchain::secagg {

void ChaCha20Keystream(const ChaChaKey& key, const ChaChaNonce& nonce,
                       std::uint32_t counter, std::span<std::uint8_t> out) {
  // OpenSSL takes a 16-byte IV: little-endian block counter, then the nonce.
  std::array<std::uint8_t, 16> iv{};
  for (int i = 0; i < 4; ++i) iv[i] = static_cast<std::uint8_t>(counter >> (8 * i));
  std::copy(nonce.begin(), nonce.end(), iv.begin() + 4);

  std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(
      EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_chacha20(), nullptr,
                                 key.data(), iv.data()) != 1) {
    throw Error("ChaCha20 initialisation failed");
  }
  // Encrypting zeros yields the raw keystream.
  std::vector<std::uint8_t> zeros(out.size(), 0);
  int len = 0;
  if (EVP_EncryptUpdate(ctx.get(), out.data(), &len, zeros.data(),
                        static_cast<int>(zeros.size())) != 1 ||
      static_cast<std::size_t>(len) != out.size()) {
    throw Error("ChaCha20 keystream generation failed");
  }
}

}  // namespace fedchain::secagg
