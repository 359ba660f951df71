#include "fedchain/chain/contract.h"

#include <algorithm>
#include <string>
#include <variant>

#include "fedchain/secagg/masking.h"
#include "fedchain/shapley/group_sv.h"

namespace fedchain::chain {

namespace {

[[noreturn]] void Reject(RejectReason reason, const std::string& detail) {
  throw TransitionError(reason, detail);
}

bool InRoster(const ProtocolParams& p, OwnerId owner) {
  return std::find(p.roster.begin(), p.roster.end(), owner) != p.roster.end();
}

void ApplyConfig(ChainState& s, const ConfigTx& tx, const ContractContext& ctx) {
  if (s.config) Reject(RejectReason::kInvalidOrdering, "config already set");
  try {
    tx.params.Validate();
  } catch (const Error& e) {
    Reject(RejectReason::kInvalidTransaction, std::string("bad config: ") + e.what());
  }
  if (ctx.evaluator == nullptr) {
    Reject(RejectReason::kConfigMismatch, "miner has no local test set");
  }
  if (tx.params.test_set_digest != ctx.evaluator->test_set().Fingerprint()) {
    Reject(RejectReason::kConfigMismatch, "test-set commitment does not match");
  }
  if (!(tx.params.shape == model::ShapeFor(ctx.evaluator->test_set()))) {
    Reject(RejectReason::kConfigMismatch, "model shape does not match test set");
  }
  s.config = tx.params;
  s.global_model = model::WeightVector(tx.params.shape);
  for (OwnerId o : tx.params.roster) s.ledger.totals[o] = 0.0;
}

void ApplyPubKey(ChainState& s, const PubKeyTx& tx) {
  if (!s.config) Reject(RejectReason::kInvalidOrdering, "public key before config");
  if (s.round != 0 || !s.pending.empty()) {
    Reject(RejectReason::kInvalidOrdering, "public keys close before round 0");
  }
  if (!InRoster(*s.config, tx.owner)) {
    Reject(RejectReason::kInvalidTransaction,
           "public key from unknown owner " + std::to_string(tx.owner));
  }
  if (s.public_keys.contains(tx.owner)) {
    Reject(RejectReason::kInvalidTransaction,
           "second public key from owner " + std::to_string(tx.owner));
  }
  try {
    const secagg::DHParams dh = s.config->dh();
    const secagg::BigNum key = secagg::BigNum::FromDecimal(tx.public_key);
    if (!(secagg::BigNum(1) < key) || !(key < dh.modulus)) {
      Reject(RejectReason::kInvalidTransaction, "public key outside (1, p)");
    }
  } catch (const ParseError& e) {
    Reject(RejectReason::kInvalidTransaction, e.what());
  }
  s.public_keys[tx.owner] = tx.public_key;
}

void ApplyMaskedUpdate(ChainState& s, const MaskedUpdateTx& tx) {
  if (!s.config) Reject(RejectReason::kInvalidOrdering, "update before config");
  const ProtocolParams& p = *s.config;
  if (s.public_keys.size() != p.roster.size()) {
    Reject(RejectReason::kInvalidOrdering, "update before every public key is posted");
  }
  const secagg::MaskedUpdate& u = tx.update;
  if (s.round >= p.rounds) {
    Reject(RejectReason::kInvalidOrdering, "all rounds are already closed");
  }
  if (u.round != s.round) {
    Reject(RejectReason::kInvalidOrdering, "update for round " + std::to_string(u.round) +
                                               " while round " + std::to_string(s.round) +
                                               " is open");
  }
  if (!InRoster(p, u.owner)) {
    Reject(RejectReason::kInvalidTransaction,
           "update from unknown owner " + std::to_string(u.owner));
  }
  if (s.pending.contains(u.owner)) {
    Reject(RejectReason::kInvalidTransaction,
           "duplicate update from owner " + std::to_string(u.owner));
  }
  if (u.payload.size() != p.shape.size()) {
    Reject(RejectReason::kInvalidTransaction, "payload length does not match model");
  }
  if (RoundGrouping(p, s.round).GroupOf(u.owner) != u.group) {
    Reject(RejectReason::kInvalidTransaction,
           "owner " + std::to_string(u.owner) + " claims the wrong group");
  }
  s.pending.emplace(u.owner, u);
}

void ApplyEvalResult(ChainState& s, const EvalResultTx& tx, const ContractContext& ctx) {
  if (!s.config) Reject(RejectReason::kInvalidOrdering, "evaluation before config");
  if (tx.round != s.round || s.round >= s.config->rounds) {
    Reject(RejectReason::kInvalidOrdering,
           "evaluation for round " + std::to_string(tx.round) + " while round " +
               std::to_string(s.round) + " is open");
  }
  RoundOutcome outcome = ExecuteRound(s, ctx);
  if (!outcome.contribution.BitIdentical(tx.contribution)) {
    Reject(RejectReason::kEvaluationMismatch,
           "contributions differ from re-execution in round " + std::to_string(tx.round));
  }
  if (outcome.global_model.Fingerprint() != tx.global_digest) {
    Reject(RejectReason::kEvaluationMismatch,
           "global model digest differs from re-execution in round " +
               std::to_string(tx.round));
  }
  s.ledger = shapley::Accumulate(std::move(s.ledger), std::move(outcome.contribution));
  s.global_model = std::move(outcome.global_model);
  s.pending.clear();
  ++s.round;
}

}  // namespace

shapley::Grouping RoundGrouping(const ProtocolParams& p, std::int64_t round) {
  return shapley::MakeGrouping(
      shapley::MakePermutation(p.permutation_seed, round, p.roster), p.num_groups);
}

std::string_view ReasonText(RejectReason r) {
  switch (r) {
    case RejectReason::kChainLinkage:
      return "chain linkage";
    case RejectReason::kInvalidOrdering:
      return "invalid ordering";
    case RejectReason::kInvalidTransaction:
      return "invalid transaction";
    case RejectReason::kMissingUpdates:
      return "missing updates";
    case RejectReason::kEvaluationMismatch:
      return "evaluation mismatch";
    case RejectReason::kConfigMismatch:
      return "config mismatch";
    case RejectReason::kStateDigestMismatch:
      return "state digest mismatch";
  }
  return "unknown";
}

RoundOutcome ExecuteRound(const ChainState& state, const ContractContext& ctx) {
  if (!state.config) Reject(RejectReason::kInvalidOrdering, "no config");
  if (ctx.evaluator == nullptr) {
    Reject(RejectReason::kConfigMismatch, "miner has no local test set");
  }
  const ProtocolParams& p = *state.config;
  const shapley::Grouping grouping = RoundGrouping(p, state.round);
  const secagg::FixedPointCodec codec = p.codec();

  std::vector<model::WeightVector> group_models;
  group_models.reserve(grouping.num_groups());
  for (const auto& members : grouping.groups) {
    std::vector<secagg::MaskedUpdate> updates;
    for (OwnerId o : members) {
      auto it = state.pending.find(o);
      if (it == state.pending.end()) {
        Reject(RejectReason::kMissingUpdates,
               "no update from owner " + std::to_string(o) + " in round " +
                   std::to_string(state.round));
      }
      updates.push_back(it->second);
    }
    group_models.push_back(secagg::SecureAggregate(updates, members, codec, p.shape));
  }

  const model::WeightVector initial(p.shape);
  const model::WeightVector& baseline =
      p.baseline == BaselinePolicy::kInitialModel ? initial : state.global_model;
  const model::UtilityEvaluator& eval = *ctx.evaluator;
  RoundOutcome out;
  out.contribution = shapley::GroupSvRound(
      group_models, baseline, grouping,
      [&eval](const model::WeightVector& w) { return eval(w); }, state.round,
      shapley::GroupSvOptions{ctx.eval_threads});

  std::vector<model::WeightedModel> weighted;
  for (std::size_t j = 0; j < group_models.size(); ++j) {
    weighted.push_back(
        {&group_models[j], static_cast<double>(grouping.groups[j].size())});
  }
  out.global_model = model::AverageWeights(weighted);
  return out;
}

EvalResultTx MakeEvalResult(const ChainState& state, const ContractContext& ctx) {
  RoundOutcome outcome = ExecuteRound(state, ctx);
  return EvalResultTx{state.round, outcome.global_model.Fingerprint(),
                      std::move(outcome.contribution)};
}

ChainState ApplyTransactions(const ChainState& state, std::span<const Transaction> txs,
                             const ContractContext& ctx) {
  ChainState s = state;
  for (const Transaction& tx : txs) {
    if (const auto* t = std::get_if<ConfigTx>(&tx)) {
      ApplyConfig(s, *t, ctx);
    } else if (const auto* t = std::get_if<PubKeyTx>(&tx)) {
      ApplyPubKey(s, *t);
    } else if (const auto* t = std::get_if<MaskedUpdateTx>(&tx)) {
      ApplyMaskedUpdate(s, *t);
    } else if (const auto* t = std::get_if<EvalResultTx>(&tx)) {
      ApplyEvalResult(s, *t, ctx);
    }
  }
  return s;
}

}  // namespace fedchain::chain
