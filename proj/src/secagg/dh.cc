#include "fedchain/secagg/dh.h"

#include "fedchain/common/error.h"
#include "fedchain/common/rng.h"
#include "fedchain/common/sha256.h"

namespace fedchain::secagg {

DHParams DHParams::Default() {
  return DHParams{BigNum((std::uint64_t{1} << 61) - 1), BigNum(3)};
}

void DHParams::Validate() const {
  if (modulus < BigNum(5)) throw InvalidArgument("DH modulus must be at least 5");
  if (!modulus.IsProbablePrime()) throw InvalidArgument("DH modulus is not prime");
  if (!(BigNum(1) < generator) || !(generator < modulus)) {
    throw InvalidArgument("DH generator must lie in (1, p)");
  }
}

KeyPair KeyPair::FromPrivate(const DHParams& params, const BigNum& private_key) {
  if (private_key < BigNum(2) || params.modulus - BigNum(2) < private_key) {
    throw InvalidArgument("private key outside [2, p-2]");
  }
  return KeyPair{private_key,
                 params.generator.ModExp(private_key, params.modulus)};
}

KeyPair Keygen(const DHParams& params, std::uint64_t rng_seed) {
  params.Validate();
  // Rejection-sample x in [0, p-3) from whole 64-bit words, masked to the bit
  // length of the range, then shift into [2, p-2].
  const BigNum range = params.modulus - BigNum(3);
  const int bits = range.NumBits();
  const int bytes = range.NumBytes();
  SplitMix64 rng(rng_seed);
  Bytes buf(bytes);
  for (;;) {
    for (int i = 0; i < bytes; i += 8) {
      auto word = BigEndian64(rng.Next());
      for (int k = 0; k < 8 && i + k < bytes; ++k) buf[i + k] = word[k];
    }
    const int excess = bytes * 8 - bits;
    buf[0] &= static_cast<std::uint8_t>(0xff >> excess);
    BigNum x = BigNum::FromBytes(buf);
    if (x < range) return KeyPair::FromPrivate(params, x + BigNum(2));
  }
}

SharedKey DeriveShared(OwnerId self, const KeyPair& own, OwnerId other,
                       const BigNum& other_public, const DHParams& params) {
  if (self == other) throw InvalidArgument("cannot derive a key with oneself");
  if (!(BigNum(1) < other_public) || !(other_public < params.modulus)) {
    throw InvalidArgument("peer public key outside (1, p)");
  }
  const BigNum secret = other_public.ModExp(own.private_key, params.modulus);
  return SharedKey{OwnerPair::Of(self, other), Sha256Of(secret.ToBytes())};
}

}  // namespace fedchain::secagg
