#ifndef FEDCHAIN_SECAGG_BIGNUM_H_
#define FEDCHAIN_SECAGG_BIGNUM_H_

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "fedchain/common/bytes.h"

struct bignum_st;

namespace fedchain::secagg {

// Value-semantic arbitrary-precision non-negative integer (OpenSSL BIGNUM).
class BigNum {
 public:
  BigNum();
  explicit BigNum(std::uint64_t v);
  BigNum(const BigNum& other);
  BigNum& operator=(const BigNum& other);
  BigNum(BigNum&&) noexcept = default;
  BigNum& operator=(BigNum&&) noexcept = default;
  ~BigNum();

  // Throws ParseError on anything but [0-9]+.
  static BigNum FromDecimal(std::string_view s);
  static BigNum FromBytes(std::span<const std::uint8_t> big_endian);
  std::string ToDecimal() const;
  // Minimal big-endian encoding (empty for zero).
  Bytes ToBytes() const;
  int NumBits() const;
  int NumBytes() const;

  BigNum operator+(const BigNum& o) const;
  BigNum operator-(const BigNum& o) const;  // requires *this >= o
  std::strong_ordering operator<=>(const BigNum& o) const;
  bool operator==(const BigNum& o) const;

  // this^exponent mod modulus
  BigNum ModExp(const BigNum& exponent, const BigNum& modulus) const;
  // Miller-Rabin with OpenSSL's default round count.
  bool IsProbablePrime() const;

  const bignum_st* get() const { return bn_.get(); }

 private:
  struct Free {
    void operator()(bignum_st* bn) const;
  };
  std::unique_ptr<bignum_st, Free> bn_;
};

}  // namespace fedchain::secagg

#endif  // FEDCHAIN_SECAGG_BIGNUM_H_
