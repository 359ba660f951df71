#include "fedchain/chain/leader.h"

#include <algorithm>
#include <numeric>

#include "fedchain/common/error.h"
#include "fedchain/common/rng.h"

namespace fedchain::chain {

MinerSet MinerSet::AllHonest(std::size_t count, std::uint64_t seed) {
  MinerSet set;
  set.miners.resize(count);
  std::iota(set.miners.begin(), set.miners.end(), MinerId{0});
  set.honest.assign(count, true);
  set.selection_seed = seed;
  return set;
}

bool MinerSet::IsHonest(MinerId id) const {
  auto it = std::find(miners.begin(), miners.end(), id);
  if (it == miners.end()) throw InvalidArgument("unknown miner");
  return honest[it - miners.begin()];
}

std::size_t MinerSet::HonestCount() const {
  return static_cast<std::size_t>(std::count(honest.begin(), honest.end(), true));
}

MinerId SelectLeader(std::uint64_t height, const MinerSet& miners, std::uint32_t retry) {
  if (miners.miners.empty()) throw InvalidArgument("cannot select from no miners");
  const std::uint64_t seed = retry == 0
                                 ? DeriveSeed({miners.selection_seed, height})
                                 : DeriveSeed({miners.selection_seed, height, retry});
  SplitMix64 rng(seed);
  return miners.miners[rng.Uniform(miners.miners.size())];
}

}  // namespace fedchain::chain
