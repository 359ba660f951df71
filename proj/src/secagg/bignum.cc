#include "fedchain/secagg/bignum.h"

#include <openssl/bn.h>
#include <openssl/crypto.h>

#include "fedchain/common/error.h"

namespace fedchain::secagg {

namespace {

struct CtxFree {
  void operator()(BN_CTX* c) const { BN_CTX_free(c); }
};
using CtxPtr = std::unique_ptr<BN_CTX, CtxFree>;

CtxPtr NewCtx() {
  CtxPtr ctx(BN_CTX_new());
  if (!ctx) throw Error("BN_CTX_new failed");
  return ctx;
}

void Check(int rc, const char* what) {
  if (rc != 1) throw Error(std::string("bignum operation failed: ") + what);
}

}  // namespace

void BigNum::Free::operator()(bignum_st* bn) const { BN_free(bn); }

BigNum::BigNum() : bn_(BN_new()) {
  if (!bn_) throw Error("BN_new failed");
}

BigNum::BigNum(std::uint64_t v) : BigNum() {
  Check(BN_set_word(bn_.get(), v), "set_word");
}

BigNum::BigNum(const BigNum& other) : bn_(BN_dup(other.bn_.get())) {
  if (!bn_) throw Error("BN_dup failed");
}

BigNum& BigNum::operator=(const BigNum& other) {
  if (this != &other) {
    if (BN_copy(bn_.get(), other.bn_.get()) == nullptr) throw Error("BN_copy failed");
  }
  return *this;
}

BigNum::~BigNum() = default;

BigNum BigNum::FromDecimal(std::string_view s) {
  if (s.empty()) throw ParseError("empty integer literal");
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw ParseError("invalid decimal integer: " + std::string(s));
    }
  }
  std::string owned(s);
  BIGNUM* raw = nullptr;
  if (BN_dec2bn(&raw, owned.c_str()) == 0) {
    throw ParseError("invalid decimal integer: " + owned);
  }
  BigNum out;
  out.bn_.reset(raw);
  return out;
}

BigNum BigNum::FromBytes(std::span<const std::uint8_t> big_endian) {
  BigNum out;
  if (BN_bin2bn(big_endian.data(), static_cast<int>(big_endian.size()),
                out.bn_.get()) == nullptr) {
    throw Error("BN_bin2bn failed");
  }
  return out;
}

std::string BigNum::ToDecimal() const {
  char* s = BN_bn2dec(bn_.get());
  if (s == nullptr) throw Error("BN_bn2dec failed");
  std::string out(s);
  OPENSSL_free(s);
  return out;
}

Bytes BigNum::ToBytes() const {
  Bytes out(BN_num_bytes(bn_.get()));
  BN_bn2bin(bn_.get(), out.data());
  return out;
}

int BigNum::NumBits() const { return BN_num_bits(bn_.get()); }
int BigNum::NumBytes() const { return BN_num_bytes(bn_.get()); }

BigNum BigNum::operator+(const BigNum& o) const {
  BigNum out;
  Check(BN_add(out.bn_.get(), bn_.get(), o.bn_.get()), "add");
  return out;
}

BigNum BigNum::operator-(const BigNum& o) const {
  if (*this < o) throw InvalidArgument("BigNum subtraction would go negative");
  BigNum out;
  Check(BN_sub(out.bn_.get(), bn_.get(), o.bn_.get()), "sub");
  return out;
}

std::strong_ordering BigNum::operator<=>(const BigNum& o) const {
  const int c = BN_cmp(bn_.get(), o.bn_.get());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool BigNum::operator==(const BigNum& o) const {
  return BN_cmp(bn_.get(), o.bn_.get()) == 0;
}

BigNum BigNum::ModExp(const BigNum& exponent, const BigNum& modulus) const {
  auto ctx = NewCtx();
  BigNum out;
  Check(BN_mod_exp(out.bn_.get(), bn_.get(), exponent.bn_.get(),
                   modulus.bn_.get(), ctx.get()),
        "mod_exp");
  return out;
}

bool BigNum::IsProbablePrime() const {
  auto ctx = NewCtx();
  const int rc = BN_check_prime(bn_.get(), ctx.get(), nullptr);
  if (rc < 0) throw Error("primality test failed");
  return rc == 1;
}

}  // namespace fedchain::secagg
