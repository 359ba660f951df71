#include "fedchain/chain/transaction.h"

#include <algorithm>

#include "fedchain/common/error.h"

namespace fedchain::chain {

namespace {

enum TxTag : std::uint8_t { kConfig = 1, kPubKey = 2, kMaskedUpdate = 3, kEvalResult = 4 };

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string_view ToString(BaselinePolicy p) {
  switch (p) {
    case BaselinePolicy::kInitialModel:
      return "initial";
    case BaselinePolicy::kPreviousGlobal:
      return "previous-global";
  }
  return "unknown";
}

BaselinePolicy BaselinePolicyFromString(std::string_view s) {
  if (s == "initial") return BaselinePolicy::kInitialModel;
  if (s == "previous-global") return BaselinePolicy::kPreviousGlobal;
  throw ParseError("unknown baseline policy: " + std::string(s));
}

secagg::DHParams ProtocolParams::dh() const {
  return secagg::DHParams{secagg::BigNum::FromDecimal(dh_modulus),
                          secagg::BigNum::FromDecimal(dh_generator)};
}

secagg::FixedPointCodec ProtocolParams::codec() const {
  return secagg::FixedPointCodec(frac_bits, fixed_point_bound);
}

void ProtocolParams::Validate() const {
  if (roster.empty()) throw InvalidArgument("roster is empty");
  std::vector<OwnerId> sorted = roster;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("roster has duplicate owners");
  }
  if (num_groups < 1 || num_groups > roster.size() || num_groups > 16) {
    throw InvalidArgument("num_groups must be in [1, min(n, 16)]");
  }
  if (rounds < 0) throw InvalidArgument("rounds must be non-negative");
  if (utility != "top1-accuracy") throw InvalidArgument("unsupported utility " + utility);
  train.Validate();
  dh().Validate();
  (void)codec();
}

std::string_view KindOf(const Transaction& tx) {
  return std::visit(Overloaded{[](const ConfigTx&) { return "config"; },
                               [](const PubKeyTx&) { return "pubkey"; },
                               [](const MaskedUpdateTx&) { return "masked_update"; },
                               [](const EvalResultTx&) { return "eval_result"; }},
                    tx);
}

void Serialize(ByteWriter& w, const ProtocolParams& p) {
  w.U64(p.roster.size());
  for (OwnerId o : p.roster) w.U32(o);
  w.U32(static_cast<std::uint32_t>(p.shape.num_classes));
  w.U64(p.shape.num_features);
  w.F64(p.train.learning_rate);
  w.U32(static_cast<std::uint32_t>(p.train.local_epochs));
  w.U64(p.train.rng_seed);
  w.I64(p.rounds);
  w.Str(p.dh_modulus);
  w.Str(p.dh_generator);
  w.U64(p.permutation_seed);
  w.U32(p.num_groups);
  w.Str(p.utility);
  w.U32(static_cast<std::uint32_t>(p.frac_bits));
  w.F64(p.fixed_point_bound);
  w.U8(static_cast<std::uint8_t>(p.baseline));
  w.Raw(p.test_set_digest);
  w.U64(p.leader_seed);
}

void Serialize(ByteWriter& w, const shapley::RoundContribution& rc) {
  w.I64(rc.round);
  w.U64(rc.grouping.groups.size());
  for (const auto& g : rc.grouping.groups) {
    w.U64(g.size());
    for (OwnerId o : g) w.U32(o);
  }
  w.U64(rc.per_group.size());
  for (double v : rc.per_group) w.F64(v);
  w.U64(rc.per_owner.size());
  for (const auto& [owner, v] : rc.per_owner) {
    w.U32(owner);
    w.F64(v);
  }
}

void Serialize(ByteWriter& w, const Transaction& tx) {
  std::visit(Overloaded{
                 [&](const ConfigTx& t) {
                   w.U8(kConfig);
                   Serialize(w, t.params);
                 },
                 [&](const PubKeyTx& t) {
                   w.U8(kPubKey);
                   w.U32(t.owner);
                   w.Str(t.public_key);
                 },
                 [&](const MaskedUpdateTx& t) {
                   w.U8(kMaskedUpdate);
                   w.U32(t.update.owner);
                   w.I64(t.update.round);
                   w.U32(t.update.group);
                   w.Blob(secagg::SerializePayload(t.update.payload));
                 },
                 [&](const EvalResultTx& t) {
                   w.U8(kEvalResult);
                   w.I64(t.round);
                   w.Raw(t.global_digest);
                   Serialize(w, t.contribution);
                 }},
             tx);
}

void to_json(nlohmann::json& j, const ProtocolParams& p) {
  j = nlohmann::json{
      {"roster", p.roster},
      {"num_classes", p.shape.num_classes},
      {"num_features", p.shape.num_features},
      {"learning_rate", p.train.learning_rate},
      {"local_epochs", p.train.local_epochs},
      {"train_seed", p.train.rng_seed},
      {"rounds", p.rounds},
      {"dh_modulus", p.dh_modulus},
      {"dh_generator", p.dh_generator},
      {"permutation_seed", p.permutation_seed},
      {"num_groups", p.num_groups},
      {"utility", p.utility},
      {"frac_bits", p.frac_bits},
      {"fixed_point_bound", p.fixed_point_bound},
      {"baseline", std::string(ToString(p.baseline))},
      {"test_set_digest", ToHex(p.test_set_digest)},
      {"leader_seed", p.leader_seed},
  };
}

void from_json(const nlohmann::json& j, ProtocolParams& p) {
  p.roster = j.at("roster").get<std::vector<OwnerId>>();
  p.shape.num_classes = j.at("num_classes").get<int>();
  p.shape.num_features = j.at("num_features").get<std::size_t>();
  p.train.learning_rate = j.at("learning_rate").get<double>();
  p.train.local_epochs = j.at("local_epochs").get<int>();
  p.train.rng_seed = j.at("train_seed").get<std::uint64_t>();
  p.rounds = j.at("rounds").get<std::int64_t>();
  p.dh_modulus = j.at("dh_modulus").get<std::string>();
  p.dh_generator = j.at("dh_generator").get<std::string>();
  p.permutation_seed = j.at("permutation_seed").get<std::uint64_t>();
  p.num_groups = j.at("num_groups").get<std::uint32_t>();
  p.utility = j.at("utility").get<std::string>();
  p.frac_bits = j.at("frac_bits").get<int>();
  p.fixed_point_bound = j.at("fixed_point_bound").get<double>();
  p.baseline = BaselinePolicyFromString(j.at("baseline").get<std::string>());
  p.test_set_digest = DigestFromHex(j.at("test_set_digest").get<std::string>());
  p.leader_seed = j.at("leader_seed").get<std::uint64_t>();
}

void to_json(nlohmann::json& j, const Transaction& tx) {
  std::visit(
      Overloaded{
          [&](const ConfigTx& t) { j = {{"type", "config"}, {"params", t.params}}; },
          [&](const PubKeyTx& t) {
            j = {{"type", "pubkey"}, {"owner", t.owner}, {"public_key", t.public_key}};
          },
          [&](const MaskedUpdateTx& t) {
            j = {{"type", "masked_update"},
                 {"owner", t.update.owner},
                 {"round", t.update.round},
                 {"group", t.update.group},
                 {"payload", ToHex(secagg::SerializePayload(t.update.payload))}};
          },
          [&](const EvalResultTx& t) {
            j = {{"type", "eval_result"},
                 {"round", t.round},
                 {"global_digest", ToHex(t.global_digest)},
                 {"contribution", t.contribution}};
          }},
      tx);
}

void from_json(const nlohmann::json& j, Transaction& tx) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "config") {
    tx = ConfigTx{j.at("params").get<ProtocolParams>()};
  } else if (type == "pubkey") {
    tx = PubKeyTx{j.at("owner").get<OwnerId>(), j.at("public_key").get<std::string>()};
  } else if (type == "masked_update") {
    secagg::MaskedUpdate u;
    u.owner = j.at("owner").get<OwnerId>();
    u.round = j.at("round").get<std::int64_t>();
    u.group = j.at("group").get<std::uint32_t>();
    u.payload = secagg::DeserializePayload(FromHex(j.at("payload").get<std::string>()));
    tx = MaskedUpdateTx{std::move(u)};
  } else if (type == "eval_result") {
    tx = EvalResultTx{j.at("round").get<std::int64_t>(),
                      DigestFromHex(j.at("global_digest").get<std::string>()),
                      j.at("contribution").get<shapley::RoundContribution>()};
  } else {
    throw ParseError("unknown transaction type: " + type);
  }
}

}  // namespace fedchain::chain
