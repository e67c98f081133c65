#include "obsnet/trace.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace obsnet {

TraceLevel trace_level_from_env() {
  const char* v = std::getenv("OBSNET_LOG");
  if (!v) return TraceLevel::info;
  const std::string s(v);
  if (s == "off") return TraceLevel::off;
  if (s == "info") return TraceLevel::info;
  if (s == "trace") return TraceLevel::trace;
  throw std::runtime_error("OBSNET_LOG must be one of off, info, trace");
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest_hex(const nlohmann::json& payload) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(payload.dump())));
  return buf;
}

void Trace::open(const std::string& path, TraceLevel level) {
  level_ = level;
  if (level_ == TraceLevel::off) return;
  out_.open(path, std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot open trace file: " + path);
}

void Trace::event(std::int64_t t, const std::string& stage, ContractId contract, const nlohmann::json& payload) {
  if (!enabled()) return;
  nlohmann::json line;
  line["t"] = t;
  line["stage"] = stage;
  line["contract"] = contract;
  line["digest"] = digest_hex(payload);
  if (level_ == TraceLevel::trace) line["payload"] = payload;
  out_ << line.dump() << "\n";
}

}  // namespace obsnet
