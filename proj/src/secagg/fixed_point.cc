#include "fedchain/secagg/fixed_point.h"

#include <cmath>
#include <string>

#include "fedchain/common/error.h"

namespace fedchain::secagg {

FixedPointCodec::FixedPointCodec(int frac_bits, double bound)
    : frac_bits_(frac_bits), bound_(bound) {
  if (frac_bits < 0 || frac_bits > 52) {
    throw InvalidArgument("frac_bits must be in [0, 52]");
  }
  if (!(bound > 0.0) || !(std::ldexp(bound, frac_bits) < 0x1.0p62)) {
    throw InvalidArgument("fixed-point bound out of range");
  }
}

double FixedPointCodec::resolution() const { return std::ldexp(1.0, -frac_bits_); }

std::uint64_t FixedPointCodec::Encode(double x) const {
  if (!std::isfinite(x) || std::fabs(x) > bound_) {
    throw InvalidArgument("value " + std::to_string(x) +
                          " outside fixed-point bound");
  }
  const std::int64_t q = std::llround(std::ldexp(x, frac_bits_));
  return static_cast<std::uint64_t>(q);
}

double FixedPointCodec::Decode(std::uint64_t residue) const {
  return std::ldexp(static_cast<double>(static_cast<std::int64_t>(residue)),
                    -frac_bits_);
}

std::vector<std::uint64_t> FixedPointCodec::EncodeVector(
    std::span<const double> xs) const {
  std::vector<std::uint64_t> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || std::fabs(xs[i]) > bound_) {
      throw InvalidArgument("coordinate " + std::to_string(i) + " = " +
                            std::to_string(xs[i]) +
                            " outside fixed-point bound");
    }
    out[i] = Encode(xs[i]);
  }
  return out;
}

std::vector<double> FixedPointCodec::DecodeVector(
    std::span<const std::uint64_t> rs) const {
  std::vector<double> out(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) out[i] = Decode(rs[i]);
  return out;
}

}  // namespace fedchain::secagg
