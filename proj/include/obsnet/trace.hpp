#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include "json.hpp"
#include "obsnet/model.hpp"

namespace obsnet {

enum class TraceLevel { off, info, trace };

TraceLevel trace_level_from_env();  // OBSNET_LOG={off,info,trace}, default info

std::uint64_t fnv1a64(std::string_view text);
std::string digest_hex(const nlohmann::json& payload);

// NDJSON protocol event log: one line per event with contract id, stage and a
// payload digest; full payloads are inlined at the `trace` level.
class Trace {
public:
  Trace() = default;

  void open(const std::string& path, TraceLevel level);
  bool enabled() const { return level_ != TraceLevel::off && out_.is_open(); }

  void event(std::int64_t t, const std::string& stage, ContractId contract, const nlohmann::json& payload);

private:
  std::ofstream out_;
  TraceLevel level_ = TraceLevel::off;
};

}  // namespace obsnet
