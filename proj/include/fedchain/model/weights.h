#ifndef FEDCHAIN_MODEL_WEIGHTS_H_
#define FEDCHAIN_MODEL_WEIGHTS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "fedchain/common/bytes.h"

namespace fedchain::model {

struct ModelShape {
  int num_classes = 10;
  std::size_t num_features = 64;

  // One row of (num_features weights, bias) per class.
  std::size_t stride() const { return num_features + 1; }
  std::size_t size() const { return num_classes * stride(); }
  bool operator==(const ModelShape&) const = default;
};

// Flat softmax-regression parameters, row-major by class with the bias as the
// last entry of each row.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(ModelShape shape)
      : shape_(shape), values_(shape.size(), 0.0) {}
  // Throws InvalidArgument if the length does not match the shape.
  WeightVector(ModelShape shape, std::vector<double> values);

  const ModelShape& shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> ClassRow(int c) const {
    return {values_.data() + c * shape_.stride(), shape_.stride()};
  }
  double Bias(int c) const { return values_[c * shape_.stride() + shape_.num_features]; }

  bool AllFinite() const;
  Digest Fingerprint() const;

  // Bitwise comparison of the raw IEEE patterns (so -0.0 != 0.0).
  bool BitIdentical(const WeightVector& other) const;
  bool operator==(const WeightVector&) const = default;

 private:
  ModelShape shape_;
  std::vector<double> values_;
};

struct WeightedModel {
  const WeightVector* model;
  double weight;
};

// Weighted mean sum_k weight_k * v_k / sum_k weight_k, accumulated in input
// order so that equal inputs give bit-identical output.
WeightVector AverageWeights(std::span<const WeightedModel> models);
// Unweighted convenience overload.
WeightVector AverageWeights(std::span<const WeightVector> models);

}  // namespace fedchain::model

#endif  // FEDCHAIN_MODEL_WEIGHTS_H_
