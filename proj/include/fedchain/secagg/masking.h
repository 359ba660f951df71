#ifndef FEDCHAIN_SECAGG_MASKING_H_
#define FEDCHAIN_SECAGG_MASKING_H_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fedchain/common/types.h"
#include "fedchain/model/weights.h"
#include "fedchain/secagg/dh.h"
#include "fedchain/secagg/fixed_point.h"

namespace fedchain::secagg {

using MaskVector = std::vector<std::uint64_t>;
using SharedKeyMap = std::map<OwnerPair, SharedKey>;

struct MaskedUpdate {
  OwnerId owner = 0;
  std::int64_t round = 0;
  std::uint32_t group = 0;
  std::vector<std::uint64_t> payload;

  bool operator==(const MaskedUpdate&) const = default;
};

// First `length` little-endian 64-bit words of ChaCha20 keyed by
// SHA-256(key_bytes || round as 8-byte big-endian), zero nonce, counter 0.
MaskVector DeriveMask(const SharedKey& key, std::int64_t round,
                      std::size_t length);

// payload = encode(w) + sum_{j > owner} mask(owner, j) - sum_{j < owner} mask(j, owner)
// over the other members of `group_members`, all mod 2^64.
MaskedUpdate MaskUpdate(const model::WeightVector& w, OwnerId owner,
                        std::uint32_t group,
                        std::span<const OwnerId> group_members,
                        const SharedKeyMap& shared, std::int64_t round,
                        const FixedPointCodec& codec);

// Coordinate-wise sum of payloads mod 2^64.
std::vector<std::uint64_t> SumPayloads(std::span<const MaskedUpdate> updates);

// Sums one group's masked updates (masks cancel), decodes, and divides by
// the group size. `members` is the group's full roster for this round; any
// missing, duplicate, or foreign update is an error.
model::WeightVector SecureAggregate(std::span<const MaskedUpdate> updates,
                                    std::span<const OwnerId> members,
                                    const FixedPointCodec& codec,
                                    const model::ModelShape& shape);

// Wire format for payloads: little-endian 64-bit words.
Bytes SerializePayload(std::span<const std::uint64_t> payload);
std::vector<std::uint64_t> DeserializePayload(std::span<const std::uint8_t> bytes);

}  // namespace fedchain::secagg

#endif  // FEDCHAIN_SECAGG_MASKING_H_
