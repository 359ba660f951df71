#ifndef FEDCHAIN_CHAIN_LEADER_H_
#define FEDCHAIN_CHAIN_LEADER_H_

#include <cstdint>
#include <vector>

#include "fedchain/common/types.h"

namespace fedchain::chain {

struct MinerSet {
  std::vector<MinerId> miners;
  std::vector<bool> honest;  // parallel to `miners`
  std::uint64_t selection_seed = 0;

  static MinerSet AllHonest(std::size_t count, std::uint64_t seed);
  std::size_t size() const { return miners.size(); }
  bool IsHonest(MinerId id) const;
  std::size_t HonestCount() const;
};

// Uniform pick via splitmix64 seeded with SHA-256(seed || height), each as
// 8-byte big-endian. A non-zero `retry` is appended to the hash input so a
// rejected proposal moves on to a fresh draw.
MinerId SelectLeader(std::uint64_t height, const MinerSet& miners,
                     std::uint32_t retry = 0);

}  // namespace fedchain::chain

#endif  // FEDCHAIN_CHAIN_LEADER_H_
