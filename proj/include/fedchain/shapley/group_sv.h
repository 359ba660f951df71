#ifndef FEDCHAIN_SHAPLEY_GROUP_SV_H_
#define FEDCHAIN_SHAPLEY_GROUP_SV_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fedchain/model/weights.h"
#include "fedchain/shapley/grouping.h"
#include "fedchain/shapley/ledger.h"
#include "fedchain/shapley/shapley.h"

namespace fedchain::shapley {

inline constexpr std::size_t kMaxGroups = 16;

using ModelUtility = std::function<double(const model::WeightVector&)>;

// W_S for one coalition: unweighted mean of the member group models in
// ascending group order; the empty coalition maps to `baseline`.
model::WeightVector CoalitionModel(std::span<const model::WeightVector> group_models,
                                   const model::WeightVector& baseline,
                                   CoalitionMask s);

// All 2^m coalition models indexed by mask (1 <= m <= kMaxGroups).
std::vector<model::WeightVector> CoalitionModels(
    std::span<const model::WeightVector> group_models,
    const model::WeightVector& baseline);

// V_j from a complete table of coalition utilities, then v_i = V_j / |G_j|.
RoundContribution GroupSvFromUtilities(const UtilityTable& utilities,
                                       const Grouping& grouping,
                                       std::int64_t round);

struct GroupSvOptions {
  // Coalition utilities are independent; > 1 evaluates them on worker
  // threads. The result does not depend on this setting.
  int threads = 1;
};

// One round of GroupSV: every coalition utility is evaluated exactly once
// (memoised by mask) and combined by the native Shapley formula over groups.
RoundContribution GroupSvRound(std::span<const model::WeightVector> group_models,
                               const model::WeightVector& baseline,
                               const Grouping& grouping, const ModelUtility& utility,
                               std::int64_t round, GroupSvOptions options = {});

// The 2^m coalition utilities GroupSvRound would evaluate.
UtilityTable CoalitionUtilities(std::span<const model::WeightVector> group_models,
                                const model::WeightVector& baseline,
                                const ModelUtility& utility, int threads = 1);

}  // namespace fedchain::shapley

#endif  // FEDCHAIN_SHAPLEY_GROUP_SV_H_
