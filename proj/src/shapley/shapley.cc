#include "fedchain/shapley/shapley.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "fedchain/common/error.h"

namespace fedchain::shapley {

UtilityTable::UtilityTable(int n) : n_(n) {
  if (n < 1 || n > kMaxPlayers) {
    throw InvalidArgument("player count must be in [1, " +
                          std::to_string(kMaxPlayers) + "]");
  }
  values_.assign(std::size_t{1} << n, 0.0);
  present_.assign(values_.size(), false);
}

void UtilityTable::Set(CoalitionMask s, double u) {
  if (s >= values_.size()) {
    throw InvalidArgument("coalition mask " + std::to_string(s) +
                          " outside a " + std::to_string(n_) + "-player table");
  }
  if (!std::isfinite(u)) {
    throw InvalidArgument("utility of mask " + std::to_string(s) +
                          " is not finite");
  }
  values_[s] = u;
  present_[s] = true;
}

double UtilityTable::At(CoalitionMask s) const {
  if (!Has(s)) {
    throw InvalidArgument("utility table is missing coalition mask " +
                          std::to_string(s));
  }
  return values_[s];
}

void UtilityTable::CheckComplete() const {
  for (std::size_t s = 0; s < present_.size(); ++s) {
    if (!present_[s]) {
      throw InvalidArgument("utility table is missing coalition mask " +
                            std::to_string(s));
    }
  }
}

std::uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n || n > 62) throw InvalidArgument("Binomial out of range");
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  // r * (n - k + i) / i stays an integer at every step.
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

std::vector<double> NativeShapley(const UtilityTable& table) {
  table.CheckComplete();
  const int n = table.n();
  const CoalitionMask full = static_cast<CoalitionMask>(table.size());
  std::vector<double> out(n, 0.0);
  std::vector<double> by_size(n);
  for (int i = 0; i < n; ++i) {
    const CoalitionMask bit = CoalitionMask{1} << i;
    std::fill(by_size.begin(), by_size.end(), 0.0);
    for (CoalitionMask s = 0; s < full; ++s) {
      if (s & bit) continue;
      by_size[std::popcount(s)] += table.At(s | bit) - table.At(s);
    }
    double v = 0.0;
    for (int k = 0; k < n; ++k) {
      const std::uint64_t denom = static_cast<std::uint64_t>(n) * Binomial(n - 1, k);
      v += by_size[k] / static_cast<double>(denom);
    }
    out[i] = v;
  }
  return out;
}

std::vector<double> PermutationShapley(const UtilityTable& table) {
  table.CheckComplete();
  const int n = table.n();
  if (n > 8) throw InvalidArgument("permutation oracle limited to 8 players");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> sum(n, 0.0);
  std::uint64_t count = 0;
  do {
    CoalitionMask s = 0;
    for (int player : order) {
      const CoalitionMask next = s | (CoalitionMask{1} << player);
      sum[player] += table.At(next) - table.At(s);
      s = next;
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& v : sum) v /= static_cast<double>(count);
  return sum;
}

}  // namespace fedchain::shapley
