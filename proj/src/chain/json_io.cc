#include "fedchain/chain/json_io.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "fedchain/common/error.h"

namespace fedchain::chain {

namespace {
constexpr const char* kBlocksFormat = "fedchain-blocks";
constexpr int kBlocksVersion = 1;
}  // namespace

void to_json(nlohmann::json& j, const AuditEvent& e) {
  j = nlohmann::json{{"event", e.event},   {"height", e.height},
                     {"round", e.round},   {"leader", e.leader},
                     {"retry", e.retry},   {"block_hash", e.block_hash}};
  if (e.event == "rejection") {
    j["reason"] = e.reason;
    j["detail"] = e.detail;
    j["rejected_by"] = e.rejected_by;
  }
}

void from_json(const nlohmann::json& j, AuditEvent& e) {
  e.event = j.at("event").get<std::string>();
  e.height = j.at("height").get<std::uint64_t>();
  e.round = j.at("round").get<std::int64_t>();
  e.leader = j.at("leader").get<MinerId>();
  e.retry = j.at("retry").get<std::uint32_t>();
  e.block_hash = j.at("block_hash").get<std::string>();
  e.reason = j.value("reason", "");
  e.detail = j.value("detail", "");
  e.rejected_by = j.value("rejected_by", std::vector<MinerId>{});
}

nlohmann::json ExportBlocks(const std::vector<Block>& blocks) {
  return nlohmann::json{{"format", kBlocksFormat},
                        {"version", kBlocksVersion},
                        {"blocks", blocks}};
}

std::vector<Block> ImportBlocks(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kBlocksFormat) {
      throw ParseError("not a block export");
    }
    if (doc.at("version").get<int>() != kBlocksVersion) {
      throw ParseError("unsupported block export version");
    }
    return doc.at("blocks").get<std::vector<Block>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed block export: ") + e.what());
  }
}

void WriteBlocksFile(const std::filesystem::path& path, const std::vector<Block>& blocks) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << ExportBlocks(blocks).dump(1) << '\n';
}

std::vector<Block> ReadBlocksFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return ImportBlocks(doc);
}

void WriteAudit(std::ostream& out, const std::vector<AuditEvent>& events) {
  for (const AuditEvent& e : events) out << nlohmann::json(e).dump() << '\n';
}

std::vector<AuditEvent> ReadAudit(std::istream& in) {
  std::vector<AuditEvent> events;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      events.push_back(nlohmann::json::parse(line).get<AuditEvent>());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("audit line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return events;
}

}  // namespace fedchain::chain
