#ifndef FEDCHAIN_MODEL_DATASET_H_
#define FEDCHAIN_MODEL_DATASET_H_

#include <cstddef>
#include <span>
#include <vector>

#include "fedchain/common/bytes.h"

namespace fedchain::model {

// Row-major feature matrix plus integer class labels.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t num_features, int num_classes)
      : num_features_(num_features), num_classes_(num_classes) {}
  // Validates the invariants; throws InvalidArgument on violation.
  Dataset(std::size_t num_features, int num_classes,
          std::vector<double> features, std::vector<int> labels);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t num_features() const { return num_features_; }
  int num_classes() const { return num_classes_; }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * num_features_, num_features_};
  }
  std::span<double> mutable_row(std::size_t i) {
    return {features_.data() + i * num_features_, num_features_};
  }
  int label(std::size_t i) const { return labels_[i]; }

  const std::vector<double>& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }

  void Append(std::span<const double> features, int label);
  // Appends every row of `other`; shapes must agree.
  void Extend(const Dataset& other);
  Dataset Subset(std::span<const std::size_t> indices) const;

  // SHA-256 over shape, raw feature bits and labels.
  Digest Fingerprint() const;

  bool operator==(const Dataset&) const = default;

 private:
  std::size_t num_features_ = 0;
  int num_classes_ = 0;
  std::vector<double> features_;
  std::vector<int> labels_;
};

Dataset Concatenate(std::span<const Dataset* const> parts);

}  // namespace fedchain::model

#endif  // FEDCHAIN_MODEL_DATASET_H_
