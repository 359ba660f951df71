#ifndef FEDCHAIN_SECAGG_FIXED_POINT_H_
#define FEDCHAIN_SECAGG_FIXED_POINT_H_

#include <cstdint>
#include <span>
#include <vector>

namespace fedchain::secagg {

// Two's-complement fixed point in Z_{2^64}: x -> round(x * 2^f) mod 2^64.
// With f = 24 and |x| <= 2^20 a sum of up to 2^19 encodings stays inside the
// signed 64-bit range, so decode(sum) is exact up to quantisation.
class FixedPointCodec {
 public:
  FixedPointCodec() = default;
  // Throws InvalidArgument unless 0 <= frac_bits <= 52 and bound * 2^f < 2^62.
  FixedPointCodec(int frac_bits, double bound);

  int frac_bits() const { return frac_bits_; }
  double bound() const { return bound_; }
  double resolution() const;  // 2^-f

  // Throws InvalidArgument if |x| > bound or x is not finite.
  std::uint64_t Encode(double x) const;
  double Decode(std::uint64_t residue) const;

  // Error message names the offending coordinate.
  std::vector<std::uint64_t> EncodeVector(std::span<const double> xs) const;
  std::vector<double> DecodeVector(std::span<const std::uint64_t> rs) const;

 private:
  int frac_bits_ = 24;
  double bound_ = 1048576.0;  // 2^20
};

}  // namespace fedchain::secagg

#endif  // FEDCHAIN_SECAGG_FIXED_POINT_H_
