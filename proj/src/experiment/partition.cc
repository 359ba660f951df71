#include "fedchain/experiment/partition.h"

#include <cmath>
#include <numeric>

#include "fedchain/common/error.h"
#include "fedchain/common/rng.h"

namespace fedchain::experiment {

OwnerSplit SplitOwners(const model::Dataset& data, const SplitConfig& cfg) {
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    throw InvalidArgument("train fraction must lie in (0, 1)");
  }
  if (cfg.num_owners == 0) throw InvalidArgument("need at least one owner");
  // The epsilon keeps 0.8 * 100 from landing on 79.999...
  const auto num_train = static_cast<std::size_t>(
      std::floor(cfg.train_fraction * static_cast<double>(data.size()) + 1e-9));
  if (cfg.num_owners > num_train) {
    throw InvalidArgument("more owners (" + std::to_string(cfg.num_owners) +
                          ") than training rows (" + std::to_string(num_train) + ")");
  }

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(cfg.rng_seed);
  for (std::size_t i = order.size(); i-- > 1;) {
    std::swap(order[i], order[rng.Uniform(i + 1)]);
  }

  std::vector<std::vector<std::size_t>> parts(cfg.num_owners);
  for (std::size_t k = 0; k < num_train; ++k) {
    parts[k % cfg.num_owners].push_back(order[k]);
  }
  OwnerSplit split;
  for (const auto& idx : parts) split.owners.push_back(data.Subset(idx));
  const std::vector<std::size_t> test_idx(order.begin() + num_train, order.end());
  split.test = data.Subset(test_idx);
  return split;
}

model::Dataset AddNoise(const model::Dataset& data, std::size_t owner_index,
                        const NoiseConfig& cfg) {
  if (!(cfg.sigma >= 0.0)) throw InvalidArgument("sigma must be non-negative");
  const double stddev = cfg.sigma * static_cast<double>(owner_index);
  model::Dataset out = data;
  if (stddev == 0.0) return out;
  SplitMix64 rng(DeriveSeed({cfg.rng_seed, owner_index}));
  for (std::size_t r = 0; r < out.size(); ++r) {
    for (double& x : out.mutable_row(r)) x += stddev * rng.Gaussian();
  }
  return out;
}

}  // namespace fedchain::experiment
