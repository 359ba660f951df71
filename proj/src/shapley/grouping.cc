#include "fedchain/shapley/grouping.h"

#include <algorithm>
#include <string>

#include "fedchain/common/error.h"
#include "fedchain/common/rng.h"

namespace fedchain::shapley {

std::size_t Grouping::num_owners() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.size();
  return n;
}

std::uint32_t Grouping::GroupOf(OwnerId owner) const {
  for (std::size_t j = 0; j < groups.size(); ++j) {
    if (std::find(groups[j].begin(), groups[j].end(), owner) != groups[j].end()) {
      return static_cast<std::uint32_t>(j);
    }
  }
  throw InvalidArgument("owner " + std::to_string(owner) + " is in no group");
}

Permutation MakePermutation(std::uint64_t seed, std::int64_t round,
                            std::span<const OwnerId> roster) {
  if (roster.empty()) throw InvalidArgument("permutation of an empty roster");
  Permutation pi{{roster.begin(), roster.end()}};
  std::sort(pi.order.begin(), pi.order.end());
  if (std::adjacent_find(pi.order.begin(), pi.order.end()) != pi.order.end()) {
    throw InvalidArgument("roster contains duplicate owners");
  }
  SplitMix64 rng(DeriveSeed({seed, static_cast<std::uint64_t>(round)}));
  for (std::size_t i = pi.order.size() - 1; i > 0; --i) {
    const std::size_t j = rng.Uniform(i + 1);
    std::swap(pi.order[i], pi.order[j]);
  }
  return pi;
}

Grouping MakeGrouping(const Permutation& pi, std::size_t m) {
  const std::size_t n = pi.order.size();
  if (m < 1 || m > n) {
    throw InvalidArgument("number of groups " + std::to_string(m) +
                          " outside [1, " + std::to_string(n) + "]");
  }
  Grouping g;
  g.groups.reserve(m);
  std::size_t pos = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t size = n / m + (j < n % m ? 1 : 0);
    g.groups.emplace_back(pi.order.begin() + pos, pi.order.begin() + pos + size);
    pos += size;
  }
  return g;
}

}  // namespace fedchain::shapley
