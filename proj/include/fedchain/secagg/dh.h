#ifndef FEDCHAIN_SECAGG_DH_H_
#define FEDCHAIN_SECAGG_DH_H_

#include <cstdint>

#include "fedchain/common/bytes.h"
#include "fedchain/common/types.h"
#include "fedchain/secagg/bignum.h"

namespace fedchain::secagg {

// Multiplicative group Z_p^* with generator g.
struct DHParams {
  BigNum modulus;
  BigNum generator;

  // Simulation-grade default: p = 2^61 - 1, g = 3. Swap in an RFC 3526
  // group for real key sizes; nothing else depends on the size of p.
  static DHParams Default();

  // Throws InvalidArgument unless p >= 5 is (probably) prime and 1 < g < p.
  void Validate() const;
};

struct KeyPair {
  BigNum private_key;
  BigNum public_key;

  // Builds the pair for a known private exponent in [2, p-2].
  static KeyPair FromPrivate(const DHParams& params, const BigNum& private_key);
};

struct SharedKey {
  OwnerPair pair;
  Digest key_bytes;

  bool operator==(const SharedKey&) const = default;
};

// Private exponent drawn uniformly from [2, p-2] using splitmix64(seed).
KeyPair Keygen(const DHParams& params, std::uint64_t rng_seed);

// key_bytes = SHA-256(minimal big-endian encoding of other_public^private mod p).
// Throws InvalidArgument unless 1 < other_public < p.
SharedKey DeriveShared(OwnerId self, const KeyPair& own, OwnerId other,
                       const BigNum& other_public, const DHParams& params);

}  // namespace fedchain::secagg

#endif  // FEDCHAIN_SECAGG_DH_H_
