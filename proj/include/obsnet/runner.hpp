#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obsnet/baselines.hpp"
#include "obsnet/mca.hpp"
#include "obsnet/model.hpp"
#include "obsnet/trace.hpp"

namespace obsnet {

enum class Method { mca, ssa, aus, tca, exact };

Method method_from_string(const std::string& s);
const char* to_string(Method m);

struct RunParams {
  FlsParams fls;
  BaselineParams baseline;
  std::size_t tca_k = 10;
  std::uint64_t seed = 0;
  bool arrivals_enter_round2 = false;
};

struct RunOutput {
  AllocationScheme scheme;
  std::uint64_t work_units = 0;
  std::array<std::uint64_t, 3> level_units{0, 0, 0};
};

// Solves the given task set on the live world with one method. Work units
// are measured around the solve only.
RunOutput run_method(World& world, Method method, const std::vector<TaskId>& tasks,
                     const RunParams& params, Trace* trace = nullptr);

struct DynamicRow {
  int round = 0;
  std::int64_t nt = 0;  // newly inserted tasks
  std::int64_t at = 0;  // total tasks
  double tcr = 0.0;
  std::uint64_t work_units = 0;  // replanning cost
  std::optional<double> rsc;
  double occupancy = 0.0;
  std::optional<double> aec_km;
};

// Dynamic experiment driver: initial solve over the seeded tasks, then one
// replanning episode per event. MCA and SSA replan only the triggered set;
// the centralized methods reclaim all pending work and replan globally.
std::vector<DynamicRow> run_dynamic(World& world, const std::vector<DisturbanceEvent>& events,
                                    Method method, const RunParams& params, Trace* trace = nullptr);

// Post-run consistency check: schedule replay, budget conservation and
// double-booking detection over the whole world.
std::vector<Violation> validate_world(const World& world);

}  // namespace obsnet
