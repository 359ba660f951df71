#ifndef FEDCHAIN_CHAIN_CONTRACT_H_
#define FEDCHAIN_CHAIN_CONTRACT_H_

#include <span>
#include <string>
#include <string_view>

#include "fedchain/chain/state.h"
#include "fedchain/chain/transaction.h"
#include "fedchain/common/error.h"
#include "fedchain/model/logistic.h"
#include "fedchain/shapley/ledger.h"

namespace fedchain::chain {

enum class RejectReason {
  kChainLinkage,
  kInvalidOrdering,
  kInvalidTransaction,
  kMissingUpdates,
  kEvaluationMismatch,
  kConfigMismatch,
  kStateDigestMismatch,
};

// Stable human-readable reason, e.g. "evaluation mismatch".
std::string_view ReasonText(RejectReason r);

class TransitionError : public Error {
 public:
  TransitionError(RejectReason reason, const std::string& detail)
      : Error(std::string(ReasonText(reason)) + ": " + detail), reason_(reason) {}
  RejectReason reason() const { return reason_; }

 private:
  RejectReason reason_;
};

// Local resources a miner needs to execute the contract. The test set is
// committed on-chain by digest and assumed available to every miner.
struct ContractContext {
  const model::UtilityEvaluator* evaluator = nullptr;
  int eval_threads = 1;
};

// The grouping every party derives for `round` from the published params.
shapley::Grouping RoundGrouping(const ProtocolParams& p, std::int64_t round);

struct RoundOutcome {
  shapley::RoundContribution contribution;
  model::WeightVector global_model;
};

// Closes the open round from the pending masked updates: per-group secure
// aggregation, coalition models, GroupSV, and the size-weighted global model.
// Throws TransitionError(kMissingUpdates) if an owner has not submitted.
RoundOutcome ExecuteRound(const ChainState& state, const ContractContext& ctx);

// What an honest proposer appends to close the open round.
EvalResultTx MakeEvalResult(const ChainState& state, const ContractContext& ctx);

// Deterministic state transition over `txs` in order. Every EvalResultTx is
// checked bit-for-bit against re-execution. Throws TransitionError.
ChainState ApplyTransactions(const ChainState& state, std::span<const Transaction> txs,
                             const ContractContext& ctx);

}  // namespace fedchain::chain

#endif  // FEDCHAIN_CHAIN_CONTRACT_H_
