#include "fedchain/chain/state.h"

#include "fedchain/common/sha256.h"

namespace fedchain::chain {

Bytes ChainState::Serialize() const {
  ByteWriter w;
  w.U8(config.has_value() ? 1 : 0);
  if (config) chain::Serialize(w, *config);
  w.U64(public_keys.size());
  for (const auto& [owner, key] : public_keys) {
    w.U32(owner);
    w.Str(key);
  }
  w.U64(pending.size());
  for (const auto& [owner, u] : pending) {
    w.U32(owner);
    w.I64(u.round);
    w.U32(u.group);
    w.Blob(secagg::SerializePayload(u.payload));
  }
  w.U32(static_cast<std::uint32_t>(global_model.shape().num_classes));
  w.U64(global_model.shape().num_features);
  w.U64(global_model.size());
  for (double v : global_model.values()) w.F64(v);
  w.U64(ledger.totals.size());
  for (const auto& [owner, v] : ledger.totals) {
    w.U32(owner);
    w.F64(v);
  }
  w.U64(ledger.rounds.size());
  for (const auto& rc : ledger.rounds) chain::Serialize(w, rc);
  w.I64(round);
  w.U64(height);
  return w.Take();
}

Digest ChainState::StateDigest() const { return Sha256Of(Serialize()); }

}  // namespace fedchain::chain
