#ifndef FEDCHAIN_SHAPLEY_LEDGER_H_
#define FEDCHAIN_SHAPLEY_LEDGER_H_

#include <cstdint>
#include <map>
#include <vector>

#include "json.hpp"

#include "fedchain/common/types.h"
#include "fedchain/shapley/grouping.h"

namespace fedchain::shapley {

// One round of GroupSV output: V_j per group and v_i^r = V_j / |G_j| per owner.
struct RoundContribution {
  std::int64_t round = 0;
  Grouping grouping;
  std::vector<double> per_group;
  std::map<OwnerId, double> per_owner;

  // Exact comparison of every value's bit pattern.
  bool BitIdentical(const RoundContribution& other) const;
  bool operator==(const RoundContribution&) const = default;
};

struct ContributionLedger {
  std::vector<RoundContribution> rounds;
  std::map<OwnerId, double> totals;

  bool HasRound(std::int64_t round) const;
  bool operator==(const ContributionLedger&) const = default;
};

// Appends `rc` and adds its per-owner values into the totals. Throws
// InvalidArgument if the round is already present.
ContributionLedger Accumulate(ContributionLedger ledger, RoundContribution rc);

void to_json(nlohmann::json& j, const Grouping& g);
void from_json(const nlohmann::json& j, Grouping& g);
void to_json(nlohmann::json& j, const RoundContribution& rc);
void from_json(const nlohmann::json& j, RoundContribution& rc);
// {"totals": {"<owner>": v, ...}, "rounds": [...]}
void to_json(nlohmann::json& j, const ContributionLedger& ledger);
void from_json(const nlohmann::json& j, ContributionLedger& ledger);

}  // namespace fedchain::shapley

#endif  // FEDCHAIN_SHAPLEY_LEDGER_H_
