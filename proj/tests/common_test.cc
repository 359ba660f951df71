#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fedchain/common/bytes.h"
#include "fedchain/common/error.h"
#include "fedchain/common/rng.h"
#include "fedchain/common/sha256.h"

namespace fedchain {
namespace {

TEST(Bytes, HexRoundTrip) {
  const Bytes b{0x00, 0x01, 0xab, 0xff};
  EXPECT_EQ(ToHex(b), "0001abff");
  EXPECT_EQ(FromHex("0001ABff"), b);
  EXPECT_THROW(FromHex("abc"), ParseError);
  EXPECT_THROW(FromHex("zz"), ParseError);
  EXPECT_THROW(DigestFromHex("00"), ParseError);
}

TEST(Bytes, WriterIsBigEndianAndLengthPrefixed) {
  ByteWriter w;
  w.U32(0x01020304);
  w.U64(0x05);
  w.Str("ab");
  w.F64(1.0);
  const Bytes expect{1, 2, 3, 4, 0, 0, 0, 0, 0, 0, 0, 5, 0, 0, 0, 0, 0, 0, 0, 2, 'a', 'b',
                     0x3f, 0xf0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(w.bytes(), expect);
}

TEST(Bytes, WriterKeepsNegativeZeroDistinct) {
  ByteWriter a, b;
  a.F64(0.0);
  b.F64(-0.0);
  EXPECT_NE(a.bytes(), b.bytes());
}

TEST(Sha256, KnownVectors) {
  const std::string abc = "abc";
  EXPECT_EQ(ToHex(Sha256Of({reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size()})),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(ToHex(Sha256Of(Bytes{0x02})),
            "dbc1b4c900ffe48d575b5da5c638040125f65db0fe3e24494b76ea986457d986");
}

TEST(Sha256, IncrementalMatchesOneShot) {
  Bytes all;
  Sha256 h;
  for (std::uint64_t v : {1ULL, 2ULL, 0xdeadbeefULL}) {
    h.UpdateU64(v);
    const auto be = BigEndian64(v);
    all.insert(all.end(), be.begin(), be.end());
  }
  EXPECT_EQ(h.Finish(), Sha256Of(all));
}

TEST(Rng, SplitMix64Golden) {
  // Reference values from the published splitmix64 algorithm with state 0.
  SplitMix64 r(0);
  EXPECT_EQ(r.Next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(r.Next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(r.Next(), 0x06c45d188009454fULL);
}

TEST(Rng, DeriveSeedTakesLastEightDigestBytes) {
  // tests/oracles/golden.py
  EXPECT_EQ(DeriveSeed({1, 0}), 0x0b092dfb9e9996faULL);
}

TEST(Rng, UniformStaysInRangeAndRejectsZeroBound) {
  SplitMix64 r(7);
  for (int i = 0; i < 10000; ++i) EXPECT_LT(r.Uniform(9), 9u);
  EXPECT_THROW(r.Uniform(0), InvalidArgument);
  EXPECT_EQ(r.Uniform(1), 0u);
}

TEST(Rng, UniformChiSquare) {
  constexpr int kBins = 9, kDraws = 90000;
  SplitMix64 r(11);
  std::vector<int> counts(kBins);
  for (int i = 0; i < kDraws; ++i) ++counts[r.Uniform(kBins)];
  double chi2 = 0.0;
  const double expect = static_cast<double>(kDraws) / kBins;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  EXPECT_LT(chi2, 26.12);  // chi-square, 8 dof, p = 0.001
}

TEST(Rng, GaussianMoments) {
  SplitMix64 r(3);
  constexpr int kN = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double g = r.Gaussian();
    sum += g;
    sq += g * g;
  }
  const double mean = sum / kN;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(std::sqrt(sq / kN - mean * mean), 1.0, 0.01);
}

TEST(Rng, UniformRealInUnitInterval) {
  SplitMix64 r(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.UniformReal();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace fedchain
