#include "fedchain/shapley/group_sv.h"

#include <algorithm>
#include <string>
#include <thread>

#include "fedchain/common/error.h"

namespace fedchain::shapley {

namespace {

void CheckGroupModels(std::span<const model::WeightVector> group_models,
                      const model::WeightVector& baseline) {
  if (group_models.empty() || group_models.size() > kMaxGroups) {
    throw InvalidArgument("number of group models must be in [1, " +
                          std::to_string(kMaxGroups) + "]");
  }
  for (std::size_t j = 0; j < group_models.size(); ++j) {
    if (!(group_models[j].shape() == baseline.shape()) ||
        group_models[j].size() != baseline.size()) {
      throw InvalidArgument("group model " + std::to_string(j) +
                            " has a different shape from the baseline");
    }
  }
}

}  // namespace

model::WeightVector CoalitionModel(std::span<const model::WeightVector> group_models,
                                   const model::WeightVector& baseline,
                                   CoalitionMask s) {
  if (s == 0) return baseline;
  std::vector<model::WeightedModel> members;
  for (std::size_t j = 0; j < group_models.size(); ++j) {
    if (s >> j & 1) members.push_back({&group_models[j], 1.0});
  }
  if (members.empty() || (s >> group_models.size()) != 0) {
    throw InvalidArgument("coalition mask " + std::to_string(s) +
                          " names a group that does not exist");
  }
  return model::AverageWeights(members);
}

std::vector<model::WeightVector> CoalitionModels(
    std::span<const model::WeightVector> group_models,
    const model::WeightVector& baseline) {
  CheckGroupModels(group_models, baseline);
  const CoalitionMask count = CoalitionMask{1} << group_models.size();
  std::vector<model::WeightVector> out;
  out.reserve(count);
  for (CoalitionMask s = 0; s < count; ++s) {
    out.push_back(CoalitionModel(group_models, baseline, s));
  }
  return out;
}

UtilityTable CoalitionUtilities(std::span<const model::WeightVector> group_models,
                                const model::WeightVector& baseline,
                                const ModelUtility& utility, int threads) {
  CheckGroupModels(group_models, baseline);
  const int m = static_cast<int>(group_models.size());
  const CoalitionMask count = CoalitionMask{1} << m;
  std::vector<double> values(count);
  auto work = [&](CoalitionMask begin, CoalitionMask stride) {
    for (CoalitionMask s = begin; s < count; s += stride) {
      values[s] = utility(CoalitionModel(group_models, baseline, s));
    }
  };
  const int workers = std::clamp(threads, 1, static_cast<int>(count));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back(work, static_cast<CoalitionMask>(t),
                        static_cast<CoalitionMask>(workers));
    }
  }
  UtilityTable table(m);
  for (CoalitionMask s = 0; s < count; ++s) table.Set(s, values[s]);
  return table;
}

RoundContribution GroupSvFromUtilities(const UtilityTable& utilities,
                                       const Grouping& grouping,
                                       std::int64_t round) {
  if (static_cast<std::size_t>(utilities.n()) != grouping.num_groups()) {
    throw InvalidArgument("utility table covers " + std::to_string(utilities.n()) +
                          " groups, grouping has " +
                          std::to_string(grouping.num_groups()));
  }
  RoundContribution rc;
  rc.round = round;
  rc.grouping = grouping;
  rc.per_group = NativeShapley(utilities);
  for (std::size_t j = 0; j < grouping.groups.size(); ++j) {
    const auto& members = grouping.groups[j];
    if (members.empty()) throw InvalidArgument("empty group in grouping");
    const double share = rc.per_group[j] / static_cast<double>(members.size());
    for (OwnerId owner : members) {
      if (!rc.per_owner.emplace(owner, share).second) {
        throw InvalidArgument("owner " + std::to_string(owner) +
                              " appears in two groups");
      }
    }
  }
  return rc;
}

RoundContribution GroupSvRound(std::span<const model::WeightVector> group_models,
                               const model::WeightVector& baseline,
                               const Grouping& grouping, const ModelUtility& utility,
                               std::int64_t round, GroupSvOptions options) {
  if (group_models.size() != grouping.num_groups()) {
    throw InvalidArgument("one group model per group is required");
  }
  const UtilityTable table =
      CoalitionUtilities(group_models, baseline, utility, options.threads);
  return GroupSvFromUtilities(table, grouping, round);
}

}  // namespace fedchain::shapley
