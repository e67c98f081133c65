#include "obsnet/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace obsnet {

double tcr(std::size_t assigned, std::size_t total) {
  if (total == 0) throw std::invalid_argument("tcr requires a nonempty task set");
  return static_cast<double>(assigned) / static_cast<double>(total);
}

double tcr(const AllocationScheme& scheme, std::size_t total) {
  return tcr(scheme.assignments.size(), total);
}

std::optional<double> aec(const World& w) {
  double distance = 0.0;
  std::size_t count = 0;
  for (const auto& r : w.resources)
    for (const auto& st : r.schedule) {
      if (st.state == TaskState::reclaimed) continue;
      distance += st.flight_distance_in;
      ++count;
    }
  if (count == 0) return std::nullopt;
  return distance / static_cast<double>(count);
}

double rsc(const std::map<TaskId, ResourceId>& old_assignments,
           const std::map<TaskId, ResourceId>& new_assignments) {
  if (old_assignments.empty()) throw std::invalid_argument("rsc requires a nonempty prior scheme");
  std::size_t changed = 0;
  for (const auto& [task, old_res] : old_assignments) {
    auto it = new_assignments.find(task);
    if (it == new_assignments.end() || it->second != old_res) ++changed;  // dropped counts as changed
  }
  return static_cast<double>(changed) / static_cast<double>(old_assignments.size());
}

double occupancy_rate(std::size_t new_tasks, std::size_t prev_tasks) {
  if (prev_tasks == 0) throw std::invalid_argument("occupancy_rate requires a nonempty prior scheme");
  return static_cast<double>(new_tasks) / static_cast<double>(prev_tasks);
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

}  // namespace

void write_csv_header(std::ostream& out) {
  out << "method,seed,n_tasks,round,tcr,runtime_ms,aec_km,rsc,or,nt,level1_ms,level2_ms,level3_ms\n";
}

void write_csv_row(std::ostream& out, const ResultRow& r) {
  out << r.method << ',' << r.seed << ',' << r.n_tasks << ',' << r.round << ',' << fmt(r.tcr) << ','
      << fmt(r.runtime_ms) << ',' << fmt(r.aec_km) << ',' << fmt(r.rsc) << ',' << fmt(r.occupancy) << ',';
  if (r.nt) out << *r.nt;
  out << ',' << fmt(r.level1_ms) << ',' << fmt(r.level2_ms) << ',' << fmt(r.level3_ms) << '\n';
}

TraceReplay metrics_from_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read trace file: " + path);
  TraceReplay replay;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    if (j.value("stage", std::string()) != "execute") continue;
    if (!j.contains("payload")) continue;
    const auto& p = j["payload"];
    if (!p.contains("task")) continue;  // voided-contract events carry no commitment
    replay.committed_tasks += 1;
    replay.total_flight_km += p.at("cd_km").get<double>();
  }
  if (replay.committed_tasks > 0)
    replay.aec_km = replay.total_flight_km / static_cast<double>(replay.committed_tasks);
  return replay;
}

}  // namespace obsnet
