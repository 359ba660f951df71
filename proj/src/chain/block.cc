#include "fedchain/chain/block.h"

#include <algorithm>

#include "fedchain/common/sha256.h"

namespace fedchain::chain {

namespace {

bool ClosesRound(const ChainState& s) {
  return s.config && s.round < s.config->rounds &&
         s.pending.size() == s.config->roster.size();
}

}  // namespace

Digest BlockHash(const Block& b) {
  ByteWriter w;
  w.U64(b.height);
  w.U32(b.proposer);
  w.Raw(b.prev_digest);
  w.Raw(b.state_digest);
  w.U64(b.txs.size());
  for (const Transaction& tx : b.txs) Serialize(w, tx);
  return Sha256Of(w.bytes());
}

ChainState ExecuteBlock(const ChainState& state, const Block& block,
                        const ContractContext& ctx) {
  if (block.height != state.height) {
    throw TransitionError(RejectReason::kChainLinkage,
                          "block height " + std::to_string(block.height) +
                              " on a chain of height " + std::to_string(state.height));
  }
  if (block.prev_digest != state.tip) {
    throw TransitionError(RejectReason::kChainLinkage, "parent hash does not match tip");
  }
  ChainState post = ApplyTransactions(state, block.txs, ctx);
  post.height = state.height + 1;
  post.tip = BlockHash(block);
  return post;
}

Block ProposeBlock(const ChainState& state, MinerId proposer,
                   std::vector<Transaction> pending, const ContractContext& ctx,
                   const Tamper& tamper) {
  Block block;
  block.height = state.height;
  block.proposer = proposer;
  block.prev_digest = state.tip;
  block.txs = std::move(pending);

  ChainState before_eval = ApplyTransactions(state, block.txs, ctx);
  if (!ClosesRound(before_eval)) {
    before_eval.height = state.height + 1;
    block.state_digest = before_eval.StateDigest();
    return block;
  }

  RoundOutcome outcome = ExecuteRound(before_eval, ctx);
  switch (tamper.kind) {
    case TamperKind::kNone:
      break;
    case TamperKind::kInflateOwnContribution:
      if (auto it = outcome.contribution.per_owner.find(proposer);
          it != outcome.contribution.per_owner.end()) {
        it->second += tamper.delta;
      }
      break;
    case TamperKind::kCorruptGlobalModel:
      outcome.global_model[0] += tamper.delta;
      break;
  }
  block.txs.push_back(EvalResultTx{before_eval.round, outcome.global_model.Fingerprint(),
                                   outcome.contribution});

  // The claimed post-state is built from the (possibly falsified) outcome
  // rather than by re-running the checked transition.
  ChainState post = std::move(before_eval);
  post.ledger = shapley::Accumulate(std::move(post.ledger), std::move(outcome.contribution));
  post.global_model = std::move(outcome.global_model);
  post.pending.clear();
  ++post.round;
  post.height = state.height + 1;
  block.state_digest = post.StateDigest();
  return block;
}

Verification VerifyAndExecute(const Block& block, const ChainState& local,
                              const ContractContext& ctx) {
  Verification v;
  try {
    v.post_state = ExecuteBlock(local, block, ctx);
  } catch (const TransitionError& e) {
    v.verdict = Verdict::Reject(e.reason(), e.what());
    return v;
  } catch (const Error& e) {
    v.verdict = Verdict::Reject(RejectReason::kInvalidTransaction, e.what());
    return v;
  }
  if (v.post_state.StateDigest() != block.state_digest) {
    v.verdict = Verdict::Reject(RejectReason::kStateDigestMismatch,
                                "recomputed post-state differs from the claimed digest");
    return v;
  }
  v.verdict = Verdict::Accept();
  return v;
}

Verdict VerifyBlock(const Block& block, const ChainState& local,
                    const ContractContext& ctx) {
  return VerifyAndExecute(block, local, ctx).verdict;
}

void to_json(nlohmann::json& j, const Block& b) {
  j = nlohmann::json{{"height", b.height},
                     {"proposer", b.proposer},
                     {"prev_digest", ToHex(b.prev_digest)},
                     {"state_digest", ToHex(b.state_digest)},
                     {"block_hash", ToHex(BlockHash(b))},
                     {"txs", b.txs}};
}

void from_json(const nlohmann::json& j, Block& b) {
  b.height = j.at("height").get<std::uint64_t>();
  b.proposer = j.at("proposer").get<MinerId>();
  b.prev_digest = DigestFromHex(j.at("prev_digest").get<std::string>());
  b.state_digest = DigestFromHex(j.at("state_digest").get<std::string>());
  b.txs = j.at("txs").get<std::vector<Transaction>>();
}

}  // namespace fedchain::chain
