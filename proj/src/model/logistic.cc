#include "fedchain/model/logistic.h"

#include <algorithm>
#include <cmath>

namespace fedchain::model {

namespace {

void CheckShape(const WeightVector& w, const Dataset& data) {
  if (w.shape().num_features != data.num_features() ||
      w.shape().num_classes != data.num_classes() ||
      w.size() != w.shape().size()) {
    throw InvalidArgument("weight shape does not match dataset");
  }
}

// logits[c] = w_c . x + b_c
void Logits(const WeightVector& w, std::span<const double> x,
            std::vector<double>& logits) {
  const std::size_t d = w.shape().num_features;
  const std::size_t stride = w.shape().stride();
  auto values = w.values();
  for (int c = 0; c < w.shape().num_classes; ++c) {
    const double* row = values.data() + c * stride;
    double z = row[d];
    for (std::size_t j = 0; j < d; ++j) z += row[j] * x[j];
    logits[c] = z;
  }
}

// In-place softmax; returns log-sum-exp.
double Softmax(std::vector<double>& z) {
  const double max = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - max);
    sum += v;
  }
  for (double& v : z) v /= sum;
  return max + std::log(sum);
}

// Accumulates the summed (not yet averaged) gradient into `grad`.
void AccumulateGradient(const WeightVector& w, const Dataset& data,
                        std::span<double> grad) {
  const std::size_t d = w.shape().num_features;
  const std::size_t stride = w.shape().stride();
  std::vector<double> p(w.shape().num_classes);
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto x = data.row(i);
    Logits(w, x, p);
    Softmax(p);
    p[data.label(i)] -= 1.0;
    for (int c = 0; c < w.shape().num_classes; ++c) {
      double* g = grad.data() + c * stride;
      const double r = p[c];
      for (std::size_t j = 0; j < d; ++j) g[j] += r * x[j];
      g[d] += r;
    }
  }
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw InvalidArgument("learning_rate must be finite and positive");
  }
  if (local_epochs < 1) throw InvalidArgument("local_epochs must be >= 1");
}

ModelShape ShapeFor(const Dataset& data) {
  return ModelShape{data.num_classes(), data.num_features()};
}

double Loss(const WeightVector& w, const Dataset& data) {
  CheckShape(w, data);
  if (data.empty()) throw InvalidArgument("Loss: empty dataset");
  std::vector<double> z(w.shape().num_classes);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    Logits(w, data.row(i), z);
    const double max = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - max);
    total += max + std::log(sum) - z[data.label(i)];
  }
  return total / static_cast<double>(data.size());
}

WeightVector Gradient(const WeightVector& w, const Dataset& data) {
  CheckShape(w, data);
  if (data.empty()) throw InvalidArgument("Gradient: empty dataset");
  WeightVector grad(w.shape());
  AccumulateGradient(w, data, grad.values());
  const double inv = 1.0 / static_cast<double>(data.size());
  for (double& g : grad.values()) g *= inv;
  return grad;
}

WeightVector TrainLocal(const WeightVector& init, const Dataset& data,
                        const TrainConfig& cfg) {
  cfg.Validate();
  if (data.empty()) throw InvalidArgument("TrainLocal: empty dataset");
  CheckShape(init, data);
  WeightVector w = init;
  std::vector<double> grad(w.size());
  const double scale = cfg.learning_rate / static_cast<double>(data.size());
  for (int step = 0; step < cfg.local_epochs; ++step) {
    std::fill(grad.begin(), grad.end(), 0.0);
    AccumulateGradient(w, data, grad);
    auto values = w.values();
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!std::isfinite(grad[k])) {
        throw TrainingError(step, "non-finite gradient at parameter " +
                                      std::to_string(k));
      }
      values[k] -= scale * grad[k];
    }
  }
  return w;
}

int Predict(const WeightVector& w, std::span<const double> features) {
  std::vector<double> z(w.shape().num_classes);
  Logits(w, features, z);
  int best = 0;
  for (int c = 1; c < w.shape().num_classes; ++c) {
    if (z[c] > z[best]) best = c;
  }
  return best;
}

UtilityEvaluator::UtilityEvaluator(Dataset test_set)
    : test_set_(std::move(test_set)) {
  if (test_set_.empty()) throw InvalidArgument("utility needs a non-empty test set");
}

double UtilityEvaluator::operator()(const WeightVector& w) const {
  CheckShape(w, test_set_);
  const std::size_t d = w.shape().num_features;
  const std::size_t stride = w.shape().stride();
  const int classes = w.shape().num_classes;
  auto values = w.values();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test_set_.size(); ++i) {
    auto x = test_set_.row(i);
    int best = 0;
    double best_z = 0.0;
    for (int c = 0; c < classes; ++c) {
      const double* row = values.data() + c * stride;
      double z = row[d];
      for (std::size_t j = 0; j < d; ++j) z += row[j] * x[j];
      if (c == 0 || z > best_z) {
        best = c;
        best_z = z;
      }
    }
    if (best == test_set_.label(i)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test_set_.size());
}

double Evaluate(const WeightVector& w, const UtilityEvaluator& eval) {
  return eval(w);
}

}  // namespace fedchain::model
