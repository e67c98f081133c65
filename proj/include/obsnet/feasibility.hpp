#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "obsnet/model.hpp"

namespace obsnet {

enum class InsertFail {
  none,
  already_scheduled,
  band_mismatch,
  resolution,
  duration_budget,
  poweron_budget,
  mileage_budget,
  no_time_slot,
  no_visibility,
};

const char* to_string(InsertFail f);

struct InsertionResult {
  bool feasible = false;
  std::size_t position = 0;       // insertion index in the schedule
  std::int64_t exec_start = 0;
  double added_distance = 0.0;    // km
  std::set<TaskId> displaced;     // empty on pure insertion
  InsertFail violated = InsertFail::none;
};

struct VisibilityWindow {
  ResourceId resource_id = 0;
  TaskId task_id = 0;
  std::int64_t start = 0;
  std::int64_t end = 0;
};

// Travel time in whole seconds, rounded up.
std::int64_t travel_time_s(double km, double speed_kmh);

bool matches_sensor(const Resource& res, const Task& task);

// Pass windows during which the task is within the satellite's reach,
// clipped to the task window and the horizon. Throws for non-satellites.
std::vector<VisibilityWindow> satellite_windows(const World& world, const Resource& sat, const Task& task);

// Best-position pure insertion: minimum added distance among feasible
// positions (mobile kinds) or earliest feasible start (satellites).
// Existing entries keep their committed times.
InsertionResult can_insert(const World& world, const Resource& res, const Task& task);

struct ConflictSet {
  bool inherently_infeasible = false;
  std::set<TaskId> tasks;  // W-set: pending tasks whose removal restores feasibility
};

// Greedy removal: repeatedly drop the lowest-weight pending task among those
// overlapping the violated constraint until insertion becomes feasible.
ConflictSet conflicting_tasks(const World& world, const Resource& res, const Task& task);

// Replay validator: re-derives timing/budget feasibility of a committed
// schedule from scratch. Empty result means the schedule is consistent.
std::vector<Violation> validate_schedule(const World& world, const Resource& res);

}  // namespace obsnet
