#ifndef FEDCHAIN_CHAIN_JSON_IO_H_
#define FEDCHAIN_CHAIN_JSON_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "fedchain/chain/block.h"

namespace fedchain::chain {

// One line of the audit trail. `event` is "proposal", "acceptance" or
// "rejection"; reason/detail are set only for rejections.
struct AuditEvent {
  std::string event;
  std::uint64_t height = 0;
  std::int64_t round = -1;  // round closed by the block, -1 for setup blocks
  MinerId leader = 0;
  std::uint32_t retry = 0;
  std::string block_hash;
  std::string reason;
  std::string detail;
  std::vector<MinerId> rejected_by;

  bool operator==(const AuditEvent&) const = default;
};

void to_json(nlohmann::json& j, const AuditEvent& e);
void from_json(const nlohmann::json& j, AuditEvent& e);

nlohmann::json ExportBlocks(const std::vector<Block>& blocks);
std::vector<Block> ImportBlocks(const nlohmann::json& doc);

void WriteBlocksFile(const std::filesystem::path& path, const std::vector<Block>& blocks);
std::vector<Block> ReadBlocksFile(const std::filesystem::path& path);

// Line-delimited JSON, one event per line.
void WriteAudit(std::ostream& out, const std::vector<AuditEvent>& events);
std::vector<AuditEvent> ReadAudit(std::istream& in);

}  // namespace fedchain::chain

#endif  // FEDCHAIN_CHAIN_JSON_IO_H_
