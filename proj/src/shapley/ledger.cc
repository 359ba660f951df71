#include "fedchain/shapley/ledger.h"

#include <bit>
#include <string>

#include "fedchain/common/error.h"

namespace fedchain::shapley {

namespace {

bool SameBits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

nlohmann::json OwnerMapToJson(const std::map<OwnerId, double>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [owner, v] : m) j[std::to_string(owner)] = v;
  return j;
}

std::map<OwnerId, double> OwnerMapFromJson(const nlohmann::json& j) {
  std::map<OwnerId, double> m;
  for (const auto& [key, v] : j.items()) {
    m[static_cast<OwnerId>(std::stoul(key))] = v.get<double>();
  }
  return m;
}

}  // namespace

bool RoundContribution::BitIdentical(const RoundContribution& other) const {
  if (round != other.round || !(grouping == other.grouping) ||
      per_group.size() != other.per_group.size() ||
      per_owner.size() != other.per_owner.size()) {
    return false;
  }
  for (std::size_t j = 0; j < per_group.size(); ++j) {
    if (!SameBits(per_group[j], other.per_group[j])) return false;
  }
  auto it = other.per_owner.begin();
  for (const auto& [owner, v] : per_owner) {
    if (it->first != owner || !SameBits(v, it->second)) return false;
    ++it;
  }
  return true;
}

bool ContributionLedger::HasRound(std::int64_t round) const {
  for (const auto& rc : rounds) {
    if (rc.round == round) return true;
  }
  return false;
}

ContributionLedger Accumulate(ContributionLedger ledger, RoundContribution rc) {
  if (ledger.HasRound(rc.round)) {
    throw InvalidArgument("round " + std::to_string(rc.round) +
                          " already in the ledger");
  }
  for (const auto& [owner, v] : rc.per_owner) ledger.totals[owner] += v;
  ledger.rounds.push_back(std::move(rc));
  return ledger;
}

void to_json(nlohmann::json& j, const Grouping& g) { j = g.groups; }

void from_json(const nlohmann::json& j, Grouping& g) {
  g.groups = j.get<std::vector<std::vector<OwnerId>>>();
}

void to_json(nlohmann::json& j, const RoundContribution& rc) {
  j = nlohmann::json{{"round", rc.round},
                     {"groups", rc.grouping},
                     {"per_group", rc.per_group},
                     {"per_owner", OwnerMapToJson(rc.per_owner)}};
}

void from_json(const nlohmann::json& j, RoundContribution& rc) {
  rc.round = j.at("round").get<std::int64_t>();
  rc.grouping = j.at("groups").get<Grouping>();
  rc.per_group = j.at("per_group").get<std::vector<double>>();
  rc.per_owner = OwnerMapFromJson(j.at("per_owner"));
}

void to_json(nlohmann::json& j, const ContributionLedger& ledger) {
  j = nlohmann::json{{"totals", OwnerMapToJson(ledger.totals)},
                     {"rounds", ledger.rounds}};
}

void from_json(const nlohmann::json& j, ContributionLedger& ledger) {
  ledger.totals = OwnerMapFromJson(j.at("totals"));
  ledger.rounds = j.at("rounds").get<std::vector<RoundContribution>>();
}

}  // namespace fedchain::shapley
