#ifndef FEDCHAIN_CHAIN_STATE_H_
#define FEDCHAIN_CHAIN_STATE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "fedchain/chain/transaction.h"
#include "fedchain/common/bytes.h"
#include "fedchain/model/weights.h"
#include "fedchain/secagg/masking.h"
#include "fedchain/shapley/ledger.h"

namespace fedchain::chain {

// The replicated smart-contract state every miner holds.
struct ChainState {
  std::optional<ProtocolParams> config;
  std::map<OwnerId, std::string> public_keys;
  // Masked updates collected for the round currently open.
  std::map<OwnerId, secagg::MaskedUpdate> pending;
  model::WeightVector global_model;
  shapley::ContributionLedger ledger;
  std::int64_t round = 0;    // next round to close
  std::uint64_t height = 0;  // number of blocks applied
  Digest tip{};              // hash of the last applied block

  // Canonical, field-ordered, length-prefixed encoding. `tip` is excluded:
  // it is a function of the block that carries this state's digest.
  Bytes Serialize() const;
  Digest StateDigest() const;

  bool operator==(const ChainState&) const = default;
};

}  // namespace fedchain::chain

#endif  // FEDCHAIN_CHAIN_STATE_H_
