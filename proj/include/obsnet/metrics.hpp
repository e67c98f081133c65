#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "obsnet/model.hpp"

namespace obsnet {

// Task completion rate: assigned over requested. Rejects an empty task set.
double tcr(std::size_t assigned, std::size_t total);
double tcr(const AllocationScheme& scheme, std::size_t total);

// Average flight distance per committed task over the whole world; absent
// when nothing is committed. Satellites contribute zero distance.
std::optional<double> aec(const World& world);

// Rate of scheme change: fraction of prior assignments now on a different
// resource or dropped. Rejects an empty prior scheme.
double rsc(const std::map<TaskId, ResourceId>& old_assignments,
           const std::map<TaskId, ResourceId>& new_assignments);

// Occupancy rate: newly inserted tasks over the task count existing before
// the insertion. Rejects an empty prior count.
double occupancy_rate(std::size_t new_tasks, std::size_t prev_tasks);

struct ResultRow {
  std::string method;
  std::uint64_t seed = 0;
  std::int64_t n_tasks = 0;
  int round = 0;
  double tcr = 0.0;
  double runtime_ms = 0.0;
  std::optional<double> aec_km;
  std::optional<double> rsc;
  std::optional<double> occupancy;
  std::optional<std::int64_t> nt;
  std::optional<double> level1_ms;
  std::optional<double> level2_ms;
  std::optional<double> level3_ms;
};

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ResultRow& row);

struct TraceReplay {
  std::size_t committed_tasks = 0;
  double total_flight_km = 0.0;
  std::optional<double> aec_km;
};

// Independent recomputation of flight-distance metrics from a payload-level
// NDJSON trace (OBSNET_LOG=trace).
TraceReplay metrics_from_trace(const std::string& path);

}  // namespace obsnet
