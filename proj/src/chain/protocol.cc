#include "fedchain/chain/protocol.h"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <thread>

#include "fedchain/common/rng.h"
#include "fedchain/model/logistic.h"
#include "fedchain/secagg/masking.h"

namespace fedchain::chain {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Owner {
  OwnerId id = 0;
  const model::Dataset* data = nullptr;
  secagg::KeyPair keys;
  secagg::SharedKeyMap shared;
};

std::vector<Verification> VerifyOnMiners(const Block& block,
                                         const std::vector<ChainState>& states,
                                         const std::vector<std::size_t>& honest,
                                         const ContractContext& ctx, int threads) {
  std::vector<Verification> out(honest.size());
  auto work = [&](std::size_t k) { out[k] = VerifyAndExecute(block, states[honest[k]], ctx); };
  const std::size_t t = std::clamp<std::size_t>(threads, 1, honest.size());
  if (t == 1) {
    for (std::size_t k = 0; k < honest.size(); ++k) work(k);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < t; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < honest.size(); k += t) work(k);
      });
    }
  }
  return out;
}

class Network {
 public:
  Network(const Scenario& sc, const ContractContext& ctx, ProtocolResult& result)
      : sc_(sc), ctx_(ctx), result_(result), states_(sc.miners.size()) {
    for (std::size_t k = 0; k < sc.miners.size(); ++k) {
      if (sc.miners.honest[k]) honest_.push_back(k);
    }
    if (honest_.empty()) throw Error("no honest miner: the chain cannot make progress");
  }

  // The view owners download from; all honest miners agree on it.
  const ChainState& chain() const { return states_[honest_.front()]; }

  void Commit(const std::vector<Transaction>& txs) {
    const std::uint64_t height = chain().height;
    std::vector<MinerId> rejected;
    std::uint32_t draw = 0;
    for (std::uint32_t retry = 0; retry < sc_.max_retries; ++retry) {
      MinerId leader = 0;
      auto forced = sc_.forced_leaders.find(height);
      if (retry == 0 && forced != sc_.forced_leaders.end()) {
        leader = forced->second;
      } else {
        if (rejected.size() >= sc_.miners.size()) {
          throw Error("height " + std::to_string(height) +
                      ": every miner's proposal was rejected, last reason: " +
                      result_.audit.back().reason);
        }
        // Skip miners whose proposal was already rejected at this height.
        do {
          leader = SelectLeader(height, sc_.miners, draw++);
        } while (std::find(rejected.begin(), rejected.end(), leader) != rejected.end());
      }
      const std::size_t leader_index = IndexOf(leader);
      const Tamper tamper =
          sc_.miners.honest[leader_index] ? Tamper{} : sc_.byzantine_tamper;

      const auto start = Clock::now();
      Block block = ProposeBlock(states_[leader_index], leader, txs, ctx_, tamper);
      const double propose_seconds = SecondsSince(start);

      const std::int64_t closes =
          std::any_of(block.txs.begin(), block.txs.end(),
                      [](const Transaction& tx) { return std::holds_alternative<EvalResultTx>(tx); })
              ? chain().round
              : -1;
      AuditEvent proposal{"proposal", height, closes, leader, retry,
                          ToHex(BlockHash(block)), "", "", {}};
      result_.audit.push_back(proposal);

      std::vector<Verification> checks =
          VerifyOnMiners(block, states_, honest_, ctx_, sc_.verify_threads);
      AuditEvent decision = proposal;
      for (std::size_t k = 0; k < checks.size(); ++k) {
        if (checks[k].verdict.accepted) continue;
        if (decision.rejected_by.empty()) {
          decision.reason = std::string(ReasonText(checks[k].verdict.reason));
          decision.detail = checks[k].verdict.detail;
        }
        decision.rejected_by.push_back(sc_.miners.miners[honest_[k]]);
      }
      if (!decision.rejected_by.empty()) {
        decision.event = "rejection";
        result_.audit.push_back(std::move(decision));
        ++result_.stats.rejections;
        rejected.push_back(leader);
        continue;
      }
      decision.event = "acceptance";
      result_.audit.push_back(std::move(decision));
      result_.stats.contract_seconds += propose_seconds;
      // Every node, honest or not, adopts the accepted block.
      for (ChainState& s : states_) s = checks.front().post_state;
      result_.blocks.push_back(std::move(block));
      return;
    }
    throw Error("height " + std::to_string(height) + ": no block accepted after " +
                std::to_string(sc_.max_retries) + " proposals");
  }

 private:
  std::size_t IndexOf(MinerId id) const {
    auto it = std::find(sc_.miners.miners.begin(), sc_.miners.miners.end(), id);
    if (it == sc_.miners.miners.end()) throw InvalidArgument("leader is not a miner");
    return static_cast<std::size_t>(it - sc_.miners.miners.begin());
  }

  const Scenario& sc_;
  const ContractContext& ctx_;
  ProtocolResult& result_;
  std::vector<ChainState> states_;
  std::vector<std::size_t> honest_;
};

}  // namespace

ProtocolParams CompleteParams(ProtocolParams params, const Scenario& scenario) {
  if (params.roster.empty()) {
    params.roster.resize(scenario.owner_data.size());
    std::iota(params.roster.begin(), params.roster.end(), OwnerId{0});
  }
  params.shape = model::ShapeFor(scenario.test_set);
  if (params.test_set_digest == Digest{}) {
    params.test_set_digest = scenario.test_set.Fingerprint();
  }
  return params;
}

ProtocolResult RunProtocol(const Scenario& scenario) {
  if (scenario.miners.honest.size() != scenario.miners.miners.size()) {
    throw InvalidArgument("miner honesty flags do not match the miner list");
  }
  const ProtocolParams params = CompleteParams(scenario.params, scenario);
  params.Validate();
  if (params.roster.size() != scenario.owner_data.size()) {
    throw InvalidArgument("roster and owner datasets differ in size");
  }

  const model::UtilityEvaluator evaluator(scenario.test_set);
  const ContractContext ctx{&evaluator, scenario.eval_threads};
  ProtocolResult result;
  Network net(scenario, ctx, result);

  const secagg::DHParams dh = params.dh();
  std::vector<Owner> owners(params.roster.size());
  std::vector<Transaction> setup{ConfigTx{params}};
  for (std::size_t i = 0; i < owners.size(); ++i) {
    owners[i].id = params.roster[i];
    owners[i].data = &scenario.owner_data[i];
    owners[i].keys = secagg::Keygen(dh, DeriveSeed({scenario.key_seed, owners[i].id}));
    setup.push_back(PubKeyTx{owners[i].id, owners[i].keys.public_key.ToDecimal()});
  }
  net.Commit(setup);

  // Pairwise keys come from the published public keys, not from each other.
  for (Owner& o : owners) {
    for (const auto& [other, pub] : net.chain().public_keys) {
      if (other == o.id) continue;
      o.shared.emplace(OwnerPair::Of(o.id, other),
                       secagg::DeriveShared(o.id, o.keys, other,
                                            secagg::BigNum::FromDecimal(pub), dh));
    }
  }

  const secagg::FixedPointCodec codec = params.codec();
  for (std::int64_t r = 0; r < params.rounds; ++r) {
    const shapley::Grouping grouping = RoundGrouping(params, r);
    const model::WeightVector global = net.chain().global_model;
    std::vector<Transaction> submissions;
    for (const Owner& o : owners) {
      const auto start = Clock::now();
      model::WeightVector w = model::TrainLocal(global, *o.data, params.train);
      result.stats.train_seconds += SecondsSince(start);
      ++result.stats.models_trained;
      const std::uint32_t g = grouping.GroupOf(o.id);
      submissions.push_back(MaskedUpdateTx{
          secagg::MaskUpdate(w, o.id, g, grouping.groups[g], o.shared, r, codec)});
    }
    net.Commit(submissions);
  }

  result.state = net.chain();
  return result;
}

ReplayResult ReplayChain(const std::vector<Block>& blocks, const model::Dataset& test_set,
                         int eval_threads) {
  const model::UtilityEvaluator evaluator(test_set);
  const ContractContext ctx{&evaluator, eval_threads};
  ReplayResult out;
  for (const Block& b : blocks) {
    Verification v = VerifyAndExecute(b, out.state, ctx);
    if (!v.verdict.accepted) {
      out.failed_height = b.height;
      out.failure = std::string(ReasonText(v.verdict.reason)) + ": " + v.verdict.detail;
      return out;
    }
    out.state = std::move(v.post_state);
    ++out.blocks_checked;
  }
  out.ok = true;
  return out;
}

}  // namespace fedchain::chain
