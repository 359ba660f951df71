#include "fedchain/model/dataset.h"

#include <string>

#include "fedchain/common/error.h"
#include "fedchain/common/sha256.h"

namespace fedchain::model {

Dataset::Dataset(std::size_t num_features, int num_classes,
                 std::vector<double> features, std::vector<int> labels)
    : num_features_(num_features),
      num_classes_(num_classes),
      features_(std::move(features)),
      labels_(std::move(labels)) {
  if (num_features_ == 0 || num_classes_ <= 0) {
    throw InvalidArgument("dataset shape must be positive");
  }
  if (features_.size() != labels_.size() * num_features_) {
    throw InvalidArgument("feature row count does not match label count");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 0 || labels_[i] >= num_classes_) {
      throw InvalidArgument("label out of range at row " + std::to_string(i));
    }
  }
}

void Dataset::Append(std::span<const double> features, int label) {
  if (features.size() != num_features_) {
    throw InvalidArgument("row has " + std::to_string(features.size()) +
                          " features, expected " +
                          std::to_string(num_features_));
  }
  if (label < 0 || label >= num_classes_) {
    throw InvalidArgument("label out of range: " + std::to_string(label));
  }
  features_.insert(features_.end(), features.begin(), features.end());
  labels_.push_back(label);
}

void Dataset::Extend(const Dataset& other) {
  if (other.num_features_ != num_features_ ||
      other.num_classes_ != num_classes_) {
    throw InvalidArgument("cannot concatenate datasets of different shape");
  }
  features_.insert(features_.end(), other.features_.begin(),
                   other.features_.end());
  labels_.insert(labels_.end(), other.labels_.begin(), other.labels_.end());
}

Dataset Dataset::Subset(std::span<const std::size_t> indices) const {
  Dataset out(num_features_, num_classes_);
  out.features_.reserve(indices.size() * num_features_);
  out.labels_.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= size()) throw InvalidArgument("subset index out of range");
    out.Append(row(i), labels_[i]);
  }
  return out;
}

Digest Dataset::Fingerprint() const {
  ByteWriter w;
  w.U64(num_features_);
  w.U32(static_cast<std::uint32_t>(num_classes_));
  w.U64(labels_.size());
  for (double x : features_) w.F64(x);
  for (int y : labels_) w.U32(static_cast<std::uint32_t>(y));
  return Sha256Of(w.bytes());
}

Dataset Concatenate(std::span<const Dataset* const> parts) {
  if (parts.empty()) throw InvalidArgument("nothing to concatenate");
  Dataset out(parts.front()->num_features(), parts.front()->num_classes());
  for (const Dataset* d : parts) out.Extend(*d);
  return out;
}

}  // namespace fedchain::model
