#ifndef FEDCHAIN_MODEL_LOGISTIC_H_
#define FEDCHAIN_MODEL_LOGISTIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fedchain/common/error.h"
#include "fedchain/model/dataset.h"
#include "fedchain/model/weights.h"

namespace fedchain::model {

struct TrainConfig {
  double learning_rate = 0.1;
  int local_epochs = 1;
  // Unused by full-batch descent; carried so the config echoes everything a
  // verifier needs.
  std::uint64_t rng_seed = 0;

  void Validate() const;
  bool operator==(const TrainConfig&) const = default;
};

// Raised when a gradient step produces a non-finite value.
class TrainingError : public Error {
 public:
  TrainingError(int step, const std::string& what)
      : Error("training diverged at step " + std::to_string(step) + ": " + what),
        step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

ModelShape ShapeFor(const Dataset& data);

// Mean softmax cross-entropy over the dataset.
double Loss(const WeightVector& w, const Dataset& data);
// Gradient of Loss with respect to every parameter, same layout as w.
WeightVector Gradient(const WeightVector& w, const Dataset& data);

// `local_epochs` full-batch gradient-descent steps starting from `init`.
WeightVector TrainLocal(const WeightVector& init, const Dataset& data,
                        const TrainConfig& cfg);

// argmax of the logits; ties go to the lowest class id.
int Predict(const WeightVector& w, std::span<const double> features);

// u(.): top-1 accuracy on a fixed held-out set.
class UtilityEvaluator {
 public:
  explicit UtilityEvaluator(Dataset test_set);

  double operator()(const WeightVector& w) const;
  const Dataset& test_set() const { return test_set_; }

 private:
  Dataset test_set_;
};

double Evaluate(const WeightVector& w, const UtilityEvaluator& eval);

}  // namespace fedchain::model

#endif  // FEDCHAIN_MODEL_LOGISTIC_H_
