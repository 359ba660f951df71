#ifndef FEDCHAIN_COMMON_RNG_H_
#define FEDCHAIN_COMMON_RNG_H_

#include <cstdint>
#include <initializer_list>

namespace fedchain {

// splitmix64 (Steele, Lea & Flood). Every seeded decision that must be
// reproduced bit-for-bit by other parties goes through this generator, never
// through <random> distributions whose output is implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next();
  // Uniform in [0, bound) by rejection; bound must be > 0.
  std::uint64_t Uniform(std::uint64_t bound);
  // Uniform in [0, 1) with 53 bits of precision.
  double UniformReal();
  // Standard normal via Box-Muller (one value per call, the sine branch is
  // discarded so the stream position is easy to reason about).
  double Gaussian();

 private:
  std::uint64_t state_;
};

// Seed derived as the low 64 bits of SHA-256 over the 8-byte big-endian
// encodings of `parts`, in order.
std::uint64_t DeriveSeed(std::initializer_list<std::uint64_t> parts);

}  // namespace fedchain

#endif  // FEDCHAIN_COMMON_RNG_H_
