#ifndef FEDCHAIN_EXPERIMENT_STATS_H_
#define FEDCHAIN_EXPERIMENT_STATS_H_

#include <span>
#include <vector>

namespace fedchain::experiment {

// Throws InvalidArgument on length mismatch or an all-zero vector.
double CosineSimilarity(std::span<const double> u, std::span<const double> v);

// 1-based ranks; ties share the average of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> x);

// Pearson correlation of the average ranks. Returns 0 when either input is
// constant (no ordering to correlate with).
double SpearmanRho(std::span<const double> x, std::span<const double> y);

}  // namespace fedchain::experiment

#endif  // FEDCHAIN_EXPERIMENT_STATS_H_
