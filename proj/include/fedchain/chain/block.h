#ifndef FEDCHAIN_CHAIN_BLOCK_H_
#define FEDCHAIN_CHAIN_BLOCK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fedchain/chain/contract.h"
#include "fedchain/chain/state.h"
#include "fedchain/chain/transaction.h"

namespace fedchain::chain {

struct Block {
  std::uint64_t height = 0;
  MinerId proposer = 0;
  std::vector<Transaction> txs;
  Digest prev_digest{};   // BlockHash of the parent (zeros for the first block)
  Digest state_digest{};  // post-state digest claimed by the proposer

  bool operator==(const Block&) const = default;
};

Digest BlockHash(const Block& b);

// How a Byzantine leader falsifies the round it closes.
enum class TamperKind : std::uint8_t {
  kNone,
  kInflateOwnContribution,  // +delta on the leader's own v_i^r and total
  kCorruptGlobalModel,      // +delta on the first global-model coordinate
};

struct Tamper {
  TamperKind kind = TamperKind::kNone;
  double delta = 0.0;
};

struct Verdict {
  bool accepted = false;
  RejectReason reason = RejectReason::kStateDigestMismatch;
  std::string detail;

  static Verdict Accept() { return Verdict{true, RejectReason::kStateDigestMismatch, ""}; }
  static Verdict Reject(RejectReason r, std::string detail) {
    return Verdict{false, r, std::move(detail)};
  }
};

// Builds the next block on top of `state`. If the pending transactions leave
// a round with every update present, the proposer appends the EvalResultTx
// closing it. With a tamper set, the evaluation (and the claimed post-state)
// is falsified as described by TamperKind.
Block ProposeBlock(const ChainState& state, MinerId proposer,
                   std::vector<Transaction> pending, const ContractContext& ctx,
                   const Tamper& tamper = {});

// Post-state of `block` on top of `state` (height and tip advanced), without
// comparing against the claimed digest. Throws TransitionError.
ChainState ExecuteBlock(const ChainState& state, const Block& block,
                        const ContractContext& ctx);

struct Verification {
  Verdict verdict;
  ChainState post_state;  // meaningful only when accepted
};

// Re-executes the block and accepts iff linkage holds and the recomputed
// post-state digest equals block.state_digest bit for bit.
Verification VerifyAndExecute(const Block& block, const ChainState& local,
                              const ContractContext& ctx);
Verdict VerifyBlock(const Block& block, const ChainState& local,
                    const ContractContext& ctx);

void to_json(nlohmann::json& j, const Block& b);
void from_json(const nlohmann::json& j, Block& b);

}  // namespace fedchain::chain

#endif  // FEDCHAIN_CHAIN_BLOCK_H_
