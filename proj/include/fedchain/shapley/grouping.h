#ifndef FEDCHAIN_SHAPLEY_GROUPING_H_
#define FEDCHAIN_SHAPLEY_GROUPING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fedchain/common/types.h"

namespace fedchain::shapley {

struct Permutation {
  std::vector<OwnerId> order;
  bool operator==(const Permutation&) const = default;
};

struct Grouping {
  std::vector<std::vector<OwnerId>> groups;

  std::size_t num_groups() const { return groups.size(); }
  std::size_t num_owners() const;
  // Index of the group holding `owner`; throws InvalidArgument if absent.
  std::uint32_t GroupOf(OwnerId owner) const;
  bool operator==(const Grouping&) const = default;
};

// Fisher-Yates over the roster sorted ascending, driven by splitmix64 seeded
// with the low 64 bits of SHA-256(seed BE8 || round BE8). The roster must be
// non-empty and free of duplicates.
Permutation MakePermutation(std::uint64_t seed, std::int64_t round,
                            std::span<const OwnerId> roster);

// Contiguous chunks of pi: the first (n mod m) groups get ceil(n/m) members,
// the rest floor(n/m). Requires 1 <= m <= n.
Grouping MakeGrouping(const Permutation& pi, std::size_t m);

}  // namespace fedchain::shapley

#endif  // FEDCHAIN_SHAPLEY_GROUPING_H_
