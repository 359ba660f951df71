#include "fedchain/model/weights.h"

#include <bit>
#include <cmath>
#include <string>

#include "fedchain/common/error.h"
#include "fedchain/common/sha256.h"

namespace fedchain::model {

WeightVector::WeightVector(ModelShape shape, std::vector<double> values)
    : shape_(shape), values_(std::move(values)) {
  if (values_.size() != shape_.size()) {
    throw InvalidArgument("weight vector has " + std::to_string(values_.size()) +
                          " entries, shape needs " +
                          std::to_string(shape_.size()));
  }
}

bool WeightVector::AllFinite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Digest WeightVector::Fingerprint() const {
  ByteWriter w;
  w.U32(static_cast<std::uint32_t>(shape_.num_classes));
  w.U64(shape_.num_features);
  for (double v : values_) w.F64(v);
  return Sha256Of(w.bytes());
}

bool WeightVector::BitIdentical(const WeightVector& other) const {
  if (!(shape_ == other.shape_) || values_.size() != other.values_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(values_[i]) !=
        std::bit_cast<std::uint64_t>(other.values_[i])) {
      return false;
    }
  }
  return true;
}

WeightVector AverageWeights(std::span<const WeightedModel> models) {
  if (models.empty()) throw InvalidArgument("AverageWeights: no models");
  const ModelShape shape = models.front().model->shape();
  WeightVector sum(shape);
  double total = 0.0;
  for (std::size_t k = 0; k < models.size(); ++k) {
    const WeightedModel& m = models[k];
    if (!(m.model->shape() == shape) || m.model->size() != sum.size()) {
      throw InvalidArgument("AverageWeights: shape mismatch at model " +
                            std::to_string(k));
    }
    if (!(m.weight > 0.0) || !std::isfinite(m.weight)) {
      throw InvalidArgument("AverageWeights: weights must be positive");
    }
    auto src = m.model->values();
    auto dst = sum.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += m.weight * src[i];
    total += m.weight;
  }
  if (!(total > 0.0)) throw InvalidArgument("AverageWeights: zero total weight");
  for (double& v : sum.values()) v /= total;
  return sum;
}

WeightVector AverageWeights(std::span<const WeightVector> models) {
  std::vector<WeightedModel> weighted;
  weighted.reserve(models.size());
  for (const WeightVector& m : models) weighted.push_back({&m, 1.0});
  return AverageWeights(weighted);
}

}  // namespace fedchain::model
