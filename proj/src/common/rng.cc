#include "fedchain/common/rng.h"

#include <cmath>
#include <numbers>

#include "fedchain/common/error.h"
#include "fedchain/common/sha256.h"

namespace fedchain {

std::uint64_t SplitMix64::Next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::Uniform(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("Uniform: bound must be positive");
  // Values below 2^64 mod bound would make the low residues more likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = Next();
    if (r >= threshold) return r % bound;
  }
}

double SplitMix64::UniformReal() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

double SplitMix64::Gaussian() {
  double u1 = UniformReal();
  while (u1 <= 0.0) u1 = UniformReal();
  const double u2 = UniformReal();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t DeriveSeed(std::initializer_list<std::uint64_t> parts) {
  Sha256 h;
  for (std::uint64_t p : parts) h.UpdateU64(p);
  return LowU64(h.Finish());
}

}  // namespace fedchain
