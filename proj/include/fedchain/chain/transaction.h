#ifndef FEDCHAIN_CHAIN_TRANSACTION_H_
#define FEDCHAIN_CHAIN_TRANSACTION_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "fedchain/common/bytes.h"
#include "fedchain/common/types.h"
#include "fedchain/model/logistic.h"
#include "fedchain/model/weights.h"
#include "fedchain/secagg/dh.h"
#include "fedchain/secagg/fixed_point.h"
#include "fedchain/secagg/masking.h"
#include "fedchain/shapley/ledger.h"

namespace fedchain::chain {

// What u(W_S) is compared against for the empty coalition each round.
enum class BaselinePolicy : std::uint8_t {
  kInitialModel = 0,    // the shared 0-vector starting model, every round
  kPreviousGlobal = 1,  // W_G of the previous round (0-vector at round 0)
};

std::string_view ToString(BaselinePolicy p);
BaselinePolicy BaselinePolicyFromString(std::string_view s);

// Everything the owners agree on off-chain and publish in the first block.
struct ProtocolParams {
  std::vector<OwnerId> roster;
  model::ModelShape shape;
  model::TrainConfig train;
  std::int64_t rounds = 20;
  std::string dh_modulus = "2305843009213693951";  // 2^61 - 1
  std::string dh_generator = "3";
  std::uint64_t permutation_seed = 1;
  std::uint32_t num_groups = 3;
  std::string utility = "top1-accuracy";
  int frac_bits = 24;
  double fixed_point_bound = 1048576.0;
  BaselinePolicy baseline = BaselinePolicy::kInitialModel;
  Digest test_set_digest{};
  std::uint64_t leader_seed = 0;

  secagg::DHParams dh() const;
  secagg::FixedPointCodec codec() const;
  // Structural checks only; the test-set commitment is checked by the contract.
  void Validate() const;
  bool operator==(const ProtocolParams&) const = default;
};

struct ConfigTx {
  ProtocolParams params;
  bool operator==(const ConfigTx&) const = default;
};

struct PubKeyTx {
  OwnerId owner = 0;
  std::string public_key;  // decimal
  bool operator==(const PubKeyTx&) const = default;
};

struct MaskedUpdateTx {
  secagg::MaskedUpdate update;
  bool operator==(const MaskedUpdateTx&) const = default;
};

struct EvalResultTx {
  std::int64_t round = 0;
  Digest global_digest{};
  shapley::RoundContribution contribution;
  bool operator==(const EvalResultTx&) const = default;
};

using Transaction = std::variant<ConfigTx, PubKeyTx, MaskedUpdateTx, EvalResultTx>;

std::string_view KindOf(const Transaction& tx);

void Serialize(ByteWriter& w, const ProtocolParams& p);
void Serialize(ByteWriter& w, const shapley::RoundContribution& rc);
void Serialize(ByteWriter& w, const Transaction& tx);

void to_json(nlohmann::json& j, const ProtocolParams& p);
void from_json(const nlohmann::json& j, ProtocolParams& p);
void to_json(nlohmann::json& j, const Transaction& tx);
void from_json(const nlohmann::json& j, Transaction& tx);

}  // namespace fedchain::chain

#endif  // FEDCHAIN_CHAIN_TRANSACTION_H_
