#ifndef FEDCHAIN_EXPERIMENT_PARTITION_H_
#define FEDCHAIN_EXPERIMENT_PARTITION_H_

#include <cstdint>
#include <vector>

#include "fedchain/model/dataset.h"

namespace fedchain::experiment {

struct SplitConfig {
  double train_fraction = 0.8;
  std::size_t num_owners = 9;
  std::uint64_t rng_seed = 1;
};

struct OwnerSplit {
  std::vector<model::Dataset> owners;
  model::Dataset test;
};

// Seeded Fisher-Yates shuffle; the first floor(train_fraction * N) rows are
// dealt round-robin to the owners, the rest is the shared test set.
OwnerSplit SplitOwners(const model::Dataset& data, const SplitConfig& cfg);

struct NoiseConfig {
  double sigma = 0.0;
  std::uint64_t rng_seed = 1;
};

// Adds N(0, (sigma * owner_index)^2) to every feature, drawn from a stream
// seeded by (rng_seed, owner_index). Features are not clipped afterwards.
// A zero standard deviation returns the input unchanged.
model::Dataset AddNoise(const model::Dataset& data, std::size_t owner_index,
                        const NoiseConfig& cfg);

}  // namespace fedchain::experiment

#endif  // FEDCHAIN_EXPERIMENT_PARTITION_H_
