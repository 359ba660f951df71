#ifndef FEDCHAIN_EXPERIMENT_GROUND_TRUTH_H_
#define FEDCHAIN_EXPERIMENT_GROUND_TRUTH_H_

#include <cstdint>
#include <vector>

#include "fedchain/model/dataset.h"
#include "fedchain/model/logistic.h"
#include "fedchain/shapley/shapley.h"

namespace fedchain::experiment {

inline constexpr int kMaxGroundTruthOwners = 12;

struct GroundTruthResult {
  std::vector<double> values;
  shapley::UtilityTable utilities{1};
  std::size_t models_trained = 0;  // 2^n - 1
  double seconds = 0.0;            // retraining plus evaluation
};

// Exact Shapley values over full retraining: every non-empty coalition trains
// a fresh model from the zero vector on the concatenation of its members'
// data (ascending owner order) for rounds * local_epochs full-batch steps, the
// same step budget an owner spends in the federated run. u(empty) is the
// utility of the zero model. Coalitions are split across `threads` workers;
// the result does not depend on the thread count.
GroundTruthResult GroundTruthShapley(const std::vector<model::Dataset>& owners,
                                     const model::UtilityEvaluator& eval,
                                     const model::TrainConfig& train, std::int64_t rounds,
                                     int threads = 1);

}  // namespace fedchain::experiment

#endif  // FEDCHAIN_EXPERIMENT_GROUND_TRUTH_H_
