#ifndef FEDCHAIN_SECAGG_CHACHA20_H_
#define FEDCHAIN_SECAGG_CHACHA20_H_

#include <array>
#include <cstdint>
#include <span>

namespace fedchain::secagg {

using ChaChaKey = std::array<std::uint8_t, 32>;
using ChaChaNonce = std::array<std::uint8_t, 12>;

// Writes the ChaCha20 keystream (RFC 8439 block function: 32-bit block
// counter, 96-bit nonce) starting at block `counter` into `out`.
void ChaCha20Keystream(const ChaChaKey& key, const ChaChaNonce& nonce,
                       std::uint32_t counter, std::span<std::uint8_t> out);

}  // namespace fedchain::secagg

#endif  // FEDCHAIN_SECAGG_CHACHA20_H_
