#include "fedchain/secagg/masking.h"

#include <algorithm>
#include <set>
#include <string>

#include "fedchain/common/error.h"
#include "fedchain/common/sha256.h"
#include "fedchain/secagg/chacha20.h"

namespace fedchain::secagg {

MaskVector DeriveMask(const SharedKey& key, std::int64_t round,
                      std::size_t length) {
  if (length == 0) throw InvalidArgument("mask length must be positive");
  if (round < 0) throw InvalidArgument("round must be non-negative");
  const Digest stream_key = Sha256()
                                .Update(key.key_bytes)
                                .UpdateU64(static_cast<std::uint64_t>(round))
                                .Finish();
  ChaChaKey k;
  std::copy(stream_key.begin(), stream_key.end(), k.begin());
  Bytes stream(length * 8);
  ChaCha20Keystream(k, ChaChaNonce{}, 0, stream);
  return DeserializePayload(stream);
}

MaskedUpdate MaskUpdate(const model::WeightVector& w, OwnerId owner,
                        std::uint32_t group,
                        std::span<const OwnerId> group_members,
                        const SharedKeyMap& shared, std::int64_t round,
                        const FixedPointCodec& codec) {
  if (std::find(group_members.begin(), group_members.end(), owner) ==
      group_members.end()) {
    throw InvalidArgument("owner " + std::to_string(owner) +
                          " is not a member of its group");
  }
  MaskedUpdate out{owner, round, group, codec.EncodeVector(w.values())};
  for (OwnerId peer : group_members) {
    if (peer == owner) continue;
    auto it = shared.find(OwnerPair::Of(owner, peer));
    if (it == shared.end()) {
      throw InvalidArgument("missing shared key for pair (" +
                            std::to_string(owner) + ", " +
                            std::to_string(peer) + ")");
    }
    const MaskVector mask = DeriveMask(it->second, round, out.payload.size());
    if (owner < peer) {
      for (std::size_t i = 0; i < mask.size(); ++i) out.payload[i] += mask[i];
    } else {
      for (std::size_t i = 0; i < mask.size(); ++i) out.payload[i] -= mask[i];
    }
  }
  return out;
}

std::vector<std::uint64_t> SumPayloads(std::span<const MaskedUpdate> updates) {
  if (updates.empty()) throw InvalidArgument("no payloads to sum");
  std::vector<std::uint64_t> sum(updates.front().payload.size(), 0);
  for (const MaskedUpdate& u : updates) {
    if (u.payload.size() != sum.size()) {
      throw InvalidArgument("payload length mismatch");
    }
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += u.payload[i];
  }
  return sum;
}

model::WeightVector SecureAggregate(std::span<const MaskedUpdate> updates,
                                    std::span<const OwnerId> members,
                                    const FixedPointCodec& codec,
                                    const model::ModelShape& shape) {
  if (members.empty()) throw InvalidArgument("group has no members");
  const std::set<OwnerId> roster(members.begin(), members.end());
  std::set<OwnerId> seen;
  for (const MaskedUpdate& u : updates) {
    if (!roster.contains(u.owner)) {
      throw InvalidArgument("update from non-member " + std::to_string(u.owner));
    }
    if (!seen.insert(u.owner).second) {
      throw InvalidArgument("duplicate update from " + std::to_string(u.owner));
    }
    if (u.round != updates.front().round || u.group != updates.front().group) {
      throw InvalidArgument("updates span several rounds or groups");
    }
    if (u.payload.size() != shape.size()) {
      throw InvalidArgument("payload length does not match model shape");
    }
  }
  for (OwnerId m : roster) {
    if (!seen.contains(m)) {
      throw InvalidArgument("missing update from member " + std::to_string(m));
    }
  }
  const std::vector<std::uint64_t> sum = SumPayloads(updates);
  std::vector<double> avg = codec.DecodeVector(sum);
  const double k = static_cast<double>(roster.size());
  for (double& v : avg) v /= k;
  return model::WeightVector(shape, std::move(avg));
}

Bytes SerializePayload(std::span<const std::uint64_t> payload) {
  Bytes out(payload.size() * 8);
  for (std::size_t i = 0; i < payload.size(); ++i) {
    for (int b = 0; b < 8; ++b) {
      out[8 * i + b] = static_cast<std::uint8_t>(payload[i] >> (8 * b));
    }
  }
  return out;
}

std::vector<std::uint64_t> DeserializePayload(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 8 != 0) throw ParseError("payload is not a whole number of words");
  std::vector<std::uint64_t> out(bytes.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = v << 8 | bytes[8 * i + b];
    out[i] = v;
  }
  return out;
}

}  // namespace fedchain::secagg
