#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "fedchain/common/error.h"
#include "fedchain/common/rng.h"
#include "fedchain/common/sha256.h"
#include "fedchain/secagg/bignum.h"
#include "fedchain/secagg/chacha20.h"
#include "fedchain/secagg/dh.h"
#include "fedchain/secagg/fixed_point.h"
#include "fedchain/secagg/masking.h"
#include "test_util.h"

namespace fedchain::secagg {
namespace {

using model::ModelShape;
using model::WeightVector;
using testing::Constant;
using testing::RandomWeights;

DHParams Small() { return DHParams{BigNum(23), BigNum(5)}; }

// Keys for every pair in `ids`, derived through real DH exchanges.
SharedKeyMap KeysFor(const std::vector<OwnerId>& ids, std::uint64_t seed = 1) {
  const DHParams dh = DHParams::Default();
  std::vector<KeyPair> keys;
  for (OwnerId id : ids) keys.push_back(Keygen(dh, DeriveSeed({seed, id})));
  SharedKeyMap out;
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      out.emplace(OwnerPair::Of(ids[a], ids[b]),
                  DeriveShared(ids[a], keys[a], ids[b], keys[b].public_key, dh));
    }
  }
  return out;
}

TEST(BigNum, DecimalAndBytesRoundTrip) {
  const BigNum p = BigNum::FromDecimal("2305843009213693951");
  EXPECT_EQ(p.ToDecimal(), "2305843009213693951");
  EXPECT_EQ(p.NumBits(), 61);
  EXPECT_EQ(BigNum::FromBytes(p.ToBytes()), p);
  EXPECT_EQ(BigNum(2).ToBytes(), Bytes{0x02});
  EXPECT_THROW(BigNum::FromDecimal("-5"), ParseError);
  EXPECT_THROW(BigNum::FromDecimal("12a"), ParseError);
  EXPECT_THROW(BigNum(1) - BigNum(2), InvalidArgument);
  EXPECT_TRUE(p.IsProbablePrime());
  EXPECT_FALSE(BigNum(21).IsProbablePrime());
}

TEST(DH, ParamsValidated) {
  EXPECT_NO_THROW(DHParams::Default().Validate());
  EXPECT_THROW((DHParams{BigNum(21), BigNum(5)}).Validate(), InvalidArgument);
  EXPECT_THROW((DHParams{BigNum(23), BigNum(1)}).Validate(), InvalidArgument);
  EXPECT_THROW((DHParams{BigNum(23), BigNum(23)}).Validate(), InvalidArgument);
}

TEST(DH, TextbookPublicKey) {
  // 5^6 mod 23 = 15625 mod 23 = 8.
  EXPECT_EQ(KeyPair::FromPrivate(Small(), BigNum(6)).public_key, BigNum(8));
  EXPECT_EQ(KeyPair::FromPrivate(Small(), BigNum(15)).public_key, BigNum(19));
  EXPECT_THROW(KeyPair::FromPrivate(Small(), BigNum(1)), InvalidArgument);
  EXPECT_THROW(KeyPair::FromPrivate(Small(), BigNum(22)), InvalidArgument);
}

TEST(DH, TextbookSharedSecret) {
  // 19^6 = 8^15 = 2 (mod 23); key bytes are SHA-256 of the byte 0x02.
  const KeyPair a = KeyPair::FromPrivate(Small(), BigNum(6));
  const KeyPair b = KeyPair::FromPrivate(Small(), BigNum(15));
  const SharedKey ab = DeriveShared(0, a, 1, b.public_key, Small());
  const SharedKey ba = DeriveShared(1, b, 0, a.public_key, Small());
  EXPECT_EQ(ToHex(ab.key_bytes),
            "dbc1b4c900ffe48d575b5da5c638040125f65db0fe3e24494b76ea986457d986");
  EXPECT_EQ(ab, ba);
  EXPECT_EQ(ab.pair, OwnerPair::Of(1, 0));
}

TEST(DH, RejectsDegeneratePeerKeys) {
  const KeyPair a = KeyPair::FromPrivate(Small(), BigNum(6));
  EXPECT_THROW(DeriveShared(0, a, 1, BigNum(1), Small()), InvalidArgument);
  EXPECT_THROW(DeriveShared(0, a, 1, BigNum(0), Small()), InvalidArgument);
  EXPECT_THROW(DeriveShared(0, a, 1, BigNum(23), Small()), InvalidArgument);
  EXPECT_THROW(DeriveShared(0, a, 0, BigNum(8), Small()), InvalidArgument);
}

TEST(DH, KeygenGoldenAndRange) {
  // tests/oracles/golden.py
  const KeyPair k = Keygen(Small(), 7);
  EXPECT_EQ(k.private_key, BigNum(5));
  EXPECT_EQ(k.public_key, BigNum(20));
  const KeyPair d = Keygen(DHParams::Default(), 1);
  EXPECT_EQ(d.private_key.ToDecimal(), "1227844342346046659");
  EXPECT_EQ(d.public_key.ToDecimal(), "2144139626780209980");
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const KeyPair x = Keygen(Small(), s);
    EXPECT_GE(x.private_key, BigNum(2));
    EXPECT_LE(x.private_key, BigNum(21));
  }
}

TEST(DH, KeygenDeterministicAndSymmetric) {
  const DHParams dh = DHParams::Default();
  EXPECT_EQ(Keygen(dh, 42).public_key, Keygen(dh, 42).public_key);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const KeyPair a = Keygen(dh, 2 * s), b = Keygen(dh, 2 * s + 1);
    EXPECT_EQ(DeriveShared(3, a, 9, b.public_key, dh).key_bytes,
              DeriveShared(9, b, 3, a.public_key, dh).key_bytes);
  }
}

TEST(ChaCha20, Rfc8439BlockVector) {
  ChaChaKey key;
  for (int i = 0; i < 32; ++i) key[i] = static_cast<std::uint8_t>(i);
  const ChaChaNonce nonce{0, 0, 0, 0x09, 0, 0, 0, 0x4a, 0, 0, 0, 0};
  std::array<std::uint8_t, 64> out{};
  ChaCha20Keystream(key, nonce, 1, out);
  EXPECT_EQ(ToHex(out),
            "10f1e7e4d13b5915500fdd1fa32071c4c7d1f4c733c068030422aa9ac3d46c4e"
            "d2826446079faa0914c2d705d98b02a2b5129cd1de164eb9cbd083e8a2503c4e");
}

TEST(Mask, GoldenStream) {
  // tests/oracles/golden.py: ChaCha20 keyed by SHA-256(key || round).
  const SharedKey key{OwnerPair::Of(0, 1), Sha256Of(Bytes{0x02})};
  const MaskVector m0 = DeriveMask(key, 0, 4);
  const MaskVector expect0{0x22e5a3e104bcb03bULL, 0xf537ceca1dbf358cULL, 0xdbfee1b516da6a9aULL,
                           0xe5c3f9c8d2b8bfb8ULL};
  EXPECT_EQ(m0, expect0);
  EXPECT_EQ(DeriveMask(key, 1, 4)[0], 0xe86121761bd778fcULL);
}

TEST(Mask, DeterministicRoundScopedAndNonEmpty) {
  const SharedKey key{OwnerPair::Of(0, 1), Sha256Of(Bytes{0x07})};
  EXPECT_EQ(DeriveMask(key, 3, 650), DeriveMask(key, 3, 650));
  EXPECT_NE(DeriveMask(key, 3, 650), DeriveMask(key, 4, 650));
  // A longer stream extends the shorter one.
  const MaskVector short_m = DeriveMask(key, 3, 10), long_m = DeriveMask(key, 3, 650);
  EXPECT_TRUE(std::equal(short_m.begin(), short_m.end(), long_m.begin()));
  EXPECT_THROW(DeriveMask(key, 0, 0), InvalidArgument);
}

TEST(FixedPoint, EncodeDecode) {
  const FixedPointCodec c;
  EXPECT_EQ(c.Encode(1.0), std::uint64_t{1} << 24);
  EXPECT_EQ(c.Encode(-1.0), ~(std::uint64_t{1} << 24) + 1);
  EXPECT_EQ(c.Decode(c.Encode(-2.5)), -2.5);
  EXPECT_THROW(c.Encode(2e6), InvalidArgument);
  EXPECT_THROW(c.Encode(std::nan("")), InvalidArgument);
  SplitMix64 rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double x = (rng.UniformReal() - 0.5) * 2000.0;
    EXPECT_LE(std::abs(c.Decode(c.Encode(x)) - x), std::ldexp(1.0, -25));
    const std::uint64_t r = c.Encode(x);
    EXPECT_EQ(c.Encode(c.Decode(r)), r);
  }
}

TEST(FixedPoint, VectorErrorNamesCoordinate) {
  const FixedPointCodec c;
  const std::vector<double> xs{0.0, 1.0, 5e6};
  try {
    c.EncodeVector(xs);
    FAIL() << "expected an error";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("coordinate 2"), std::string::npos);
  }
}

TEST(MaskUpdate, SingletonGroupIsPlainEncoding) {
  const FixedPointCodec c;
  const WeightVector w = RandomWeights(1);
  const std::vector<OwnerId> members{4};
  const MaskedUpdate u = MaskUpdate(w, 4, 0, members, {}, 0, c);
  EXPECT_EQ(u.payload, c.EncodeVector(w.values()));
  const MaskedUpdate ups[] = {u};
  const WeightVector back = SecureAggregate(ups, members, c, w.shape());
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_LE(std::abs(back[i] - w[i]), std::ldexp(1.0, -25));
  }
}

TEST(MaskUpdate, ZeroSignalMasksCancel) {
  const FixedPointCodec c;
  const std::vector<OwnerId> g{2, 5, 7};
  const SharedKeyMap keys = KeysFor(g);
  const WeightVector zero{ModelShape{}};
  std::vector<MaskedUpdate> ups;
  for (OwnerId o : g) ups.push_back(MaskUpdate(zero, o, 0, g, keys, 3, c));
  for (std::uint64_t x : SumPayloads(ups)) EXPECT_EQ(x, 0u);
  // Individual payloads are masked.
  EXPECT_NE(ups[0].payload, std::vector<std::uint64_t>(zero.size(), 0));
}

TEST(MaskUpdate, TwoOwnersSumDecodes) {
  const FixedPointCodec c;
  const std::vector<OwnerId> g{0, 1};
  const SharedKeyMap keys = KeysFor(g);
  const std::vector<MaskedUpdate> ups{MaskUpdate(Constant(1.0), 0, 0, g, keys, 0, c),
                                      MaskUpdate(Constant(2.0), 1, 0, g, keys, 0, c)};
  for (double x : c.DecodeVector(SumPayloads(ups))) {
    EXPECT_NEAR(x, 3.0, std::ldexp(1.0, -24));
  }
}

TEST(MaskUpdate, RequiresMembershipAndKeys) {
  const FixedPointCodec c;
  const std::vector<OwnerId> g{0, 1};
  EXPECT_THROW(MaskUpdate(Constant(1.0), 2, 0, g, KeysFor(g), 0, c), InvalidArgument);
  EXPECT_THROW(MaskUpdate(Constant(1.0), 0, 0, g, {}, 0, c), InvalidArgument);
}

TEST(SecureAggregate, ThreeConstantsAverage) {
  const FixedPointCodec c;
  const std::vector<OwnerId> g{0, 1, 2};
  const SharedKeyMap keys = KeysFor(g);
  std::vector<MaskedUpdate> ups;
  for (OwnerId o : g) ups.push_back(MaskUpdate(Constant(o + 1.0), o, 0, g, keys, 0, c));
  const WeightVector avg = SecureAggregate(ups, g, c, ModelShape{});
  for (double x : avg.values()) {
    EXPECT_NEAR(x, 2.0, std::ldexp(1.0, -24));
  }
}

TEST(SecureAggregate, RejectsIncompleteOrForeignSets) {
  const FixedPointCodec c;
  const std::vector<OwnerId> g{0, 1, 2};
  const SharedKeyMap keys = KeysFor({0, 1, 2, 3});
  std::vector<MaskedUpdate> ups;
  for (OwnerId o : g) ups.push_back(MaskUpdate(Constant(1.0), o, 0, g, keys, 0, c));
  const std::vector<MaskedUpdate> missing(ups.begin(), ups.begin() + 2);
  EXPECT_THROW(SecureAggregate(missing, g, c, ModelShape{}), InvalidArgument);
  std::vector<MaskedUpdate> dup = ups;
  dup[2] = dup[1];
  EXPECT_THROW(SecureAggregate(dup, g, c, ModelShape{}), InvalidArgument);
  std::vector<MaskedUpdate> foreign = ups;
  foreign[2].owner = 3;
  EXPECT_THROW(SecureAggregate(foreign, g, c, ModelShape{}), InvalidArgument);
  std::vector<MaskedUpdate> mixed = ups;
  mixed[1].round = 1;
  EXPECT_THROW(SecureAggregate(mixed, g, c, ModelShape{}), InvalidArgument);
}

TEST(SecureAggregate, CancellationAndErrorBoundOnRandomGroups) {
  const FixedPointCodec c;
  SplitMix64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 2 + rng.Uniform(8);
    std::vector<OwnerId> g;
    for (std::size_t i = 0; i < k; ++i) g.push_back(static_cast<OwnerId>(3 * i + trial));
    const SharedKeyMap keys = KeysFor(g, trial);
    std::vector<WeightVector> ws;
    std::vector<MaskedUpdate> ups;
    std::vector<std::uint64_t> plain(ModelShape{}.size(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      ws.push_back(RandomWeights(1000 * trial + i, ModelShape{}, 10.0));
      ups.push_back(MaskUpdate(ws.back(), g[i], 0, g, keys, trial, c));
      const auto enc = c.EncodeVector(ws.back().values());
      for (std::size_t j = 0; j < plain.size(); ++j) plain[j] += enc[j];
    }
    EXPECT_EQ(SumPayloads(ups), plain);
    const WeightVector avg = SecureAggregate(ups, g, c, ModelShape{});
    const WeightVector oracle = model::AverageWeights(ws);
    for (std::size_t j = 0; j < avg.size(); ++j) EXPECT_NEAR(avg[j], oracle[j], 1e-6);
  }
}

TEST(SecureAggregate, StrictSubsetSumLooksUniform) {
  // Top byte of coordinate 0 of one member's payload (a strict subset of the
  // group of 3) over 10^4 rounds: chi-square over 256 bins, p = 0.001.
  const FixedPointCodec c;
  const std::vector<OwnerId> g{0, 1, 2};
  const SharedKeyMap keys = KeysFor(g);
  const WeightVector w = Constant(0.5);
  std::vector<int> bins(256);
  constexpr int kTrials = 10000;
  for (int r = 0; r < kTrials; ++r) {
    const MaskedUpdate a = MaskUpdate(w, 0, 0, g, keys, r, c);
    const MaskedUpdate b = MaskUpdate(w, 1, 0, g, keys, r, c);
    ++bins[(a.payload[0] + b.payload[0]) >> 56];
  }
  double chi2 = 0.0;
  const double expect = kTrials / 256.0;
  for (int n : bins) chi2 += (n - expect) * (n - expect) / expect;
  EXPECT_LT(chi2, 330.52);
}

TEST(Payload, SerializeRoundTrip) {
  const std::vector<std::uint64_t> p{0, 1, 0x0102030405060708ULL, ~0ULL};
  const Bytes b = SerializePayload(p);
  EXPECT_EQ(b[16], 0x08);  // little-endian words
  EXPECT_EQ(DeserializePayload(b), p);
  EXPECT_THROW(DeserializePayload(Bytes{1, 2, 3}), ParseError);
}

}  // namespace
}  // namespace fedchain::secagg
