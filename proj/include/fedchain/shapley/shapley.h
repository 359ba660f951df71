#ifndef FEDCHAIN_SHAPLEY_SHAPLEY_H_
#define FEDCHAIN_SHAPLEY_SHAPLEY_H_

#include <cstdint>
#include <vector>

namespace fedchain::shapley {

// Bit i set <=> player i is in the coalition.
using CoalitionMask = std::uint32_t;

inline constexpr int kMaxPlayers = 20;

// u(S) for every S subset of {0..n-1}. Entries start out missing.
class UtilityTable {
 public:
  // 1 <= n <= kMaxPlayers.
  explicit UtilityTable(int n);

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }

  // Throws InvalidArgument for masks outside [0, 2^n) or non-finite values.
  void Set(CoalitionMask s, double u);
  bool Has(CoalitionMask s) const { return s < present_.size() && present_[s]; }
  // Throws InvalidArgument naming the mask when it has no value.
  double At(CoalitionMask s) const;
  void CheckComplete() const;

 private:
  int n_;
  std::vector<double> values_;
  std::vector<bool> present_;
};

// C(n, k) in exact integer arithmetic; n <= 62.
std::uint64_t Binomial(int n, int k);

// v_i = (1/n) sum_{S subset I\{i}} [u(S+i) - u(S)] / C(n-1, |S|).
// Marginals are summed per coalition size in ascending mask order and each
// size class divided once by the exact integer n * C(n-1, k).
std::vector<double> NativeShapley(const UtilityTable& table);

// Average marginal contribution over all n! arrival orders. Independent of
// NativeShapley; limited to n <= 8.
std::vector<double> PermutationShapley(const UtilityTable& table);

}  // namespace fedchain::shapley

#endif  // FEDCHAIN_SHAPLEY_SHAPLEY_H_
