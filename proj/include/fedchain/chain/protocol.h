#ifndef FEDCHAIN_CHAIN_PROTOCOL_H_
#define FEDCHAIN_CHAIN_PROTOCOL_H_

#include <cstdint>
#include <map>
#include <vector>

#include "fedchain/chain/block.h"
#include "fedchain/chain/json_io.h"
#include "fedchain/chain/leader.h"
#include "fedchain/model/dataset.h"

namespace fedchain::chain {

struct Scenario {
  // owner_data[i] belongs to params.roster[i].
  std::vector<model::Dataset> owner_data;
  model::Dataset test_set;
  ProtocolParams params;
  MinerSet miners;
  // Applied by every miner flagged dishonest whenever it leads.
  Tamper byzantine_tamper{TamperKind::kInflateOwnContribution, 0.1};
  // Overrides the first draw at a height (retries still go through
  // SelectLeader). The block closing round r sits at height r + 1.
  std::map<std::uint64_t, MinerId> forced_leaders;
  std::uint64_t key_seed = 1;
  // Miners re-executing a proposal concurrently; 1 keeps the run on the
  // calling thread. Results are identical either way.
  int verify_threads = 1;
  int eval_threads = 1;
  // Attempts per height before giving up.
  std::uint32_t max_retries = 256;
};

struct ProtocolStats {
  // Owners' local training across all rounds.
  double train_seconds = 0.0;
  // The accepted proposer's contract execution (aggregation, coalition
  // utilities, GroupSV). Verifier re-execution is not counted.
  double contract_seconds = 0.0;
  std::size_t models_trained = 0;
  std::size_t rejections = 0;
};

struct ProtocolResult {
  ChainState state;
  std::vector<Block> blocks;
  std::vector<AuditEvent> audit;
  ProtocolStats stats;
};

// Fills roster (0..n-1 if empty), shape and the test-set commitment.
ProtocolParams CompleteParams(ProtocolParams params, const Scenario& scenario);

// Setup block, then R rounds of train -> mask -> submit -> aggregate ->
// evaluate -> verify. A rejected proposal is retried with the next leader.
// Throws Error if no miner is honest or a height exhausts its retries.
ProtocolResult RunProtocol(const Scenario& scenario);

struct ReplayResult {
  bool ok = false;
  std::size_t blocks_checked = 0;
  std::uint64_t failed_height = 0;
  std::string failure;
  ChainState state;
};

// Re-executes `blocks` from genesis on a fresh node.
ReplayResult ReplayChain(const std::vector<Block>& blocks, const model::Dataset& test_set,
                         int eval_threads = 1);

}  // namespace fedchain::chain

#endif  // FEDCHAIN_CHAIN_PROTOCOL_H_
