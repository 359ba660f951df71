#include "fedchain/experiment/ground_truth.h"

#include <algorithm>
#include <chrono>
#include <thread>

#include "fedchain/common/error.h"

namespace fedchain::experiment {

GroundTruthResult GroundTruthShapley(const std::vector<model::Dataset>& owners,
                                     const model::UtilityEvaluator& eval,
                                     const model::TrainConfig& train, std::int64_t rounds,
                                     int threads) {
  const int n = static_cast<int>(owners.size());
  if (n < 1 || n > kMaxGroundTruthOwners) {
    throw InvalidArgument("ground truth needs 1.." + std::to_string(kMaxGroundTruthOwners) +
                          " owners, got " + std::to_string(n));
  }
  if (rounds < 1) throw InvalidArgument("ground truth needs at least one round");
  model::TrainConfig cfg = train;
  cfg.local_epochs = static_cast<int>(rounds * train.local_epochs);
  cfg.Validate();

  const auto start = std::chrono::steady_clock::now();
  const std::size_t num_masks = std::size_t{1} << n;
  const model::WeightVector initial(model::ShapeFor(eval.test_set()));
  std::vector<double> u(num_masks);
  u[0] = eval(initial);

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t s = first; s < num_masks; s += stride) {
      std::vector<const model::Dataset*> members;
      for (int i = 0; i < n; ++i) {
        if (s >> i & 1U) members.push_back(&owners[i]);
      }
      const model::Dataset data = model::Concatenate(members);
      u[s] = eval(model::TrainLocal(initial, data, cfg));
    }
  };
  const std::size_t t = std::clamp<std::size_t>(threads, 1, num_masks - 1);
  if (t == 1) {
    work(1, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < t; ++w) pool.emplace_back(work, 1 + w, t);
  }

  GroundTruthResult out;
  out.utilities = shapley::UtilityTable(n);
  for (std::size_t s = 0; s < num_masks; ++s) {
    out.utilities.Set(static_cast<shapley::CoalitionMask>(s), u[s]);
  }
  out.values = shapley::NativeShapley(out.utilities);
  out.models_trained = num_masks - 1;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace fedchain::experiment
