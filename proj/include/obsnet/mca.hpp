#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "obsnet/model.hpp"
#include "obsnet/protocol.hpp"
#include "obsnet/trace.hpp"

namespace obsnet {

struct DisturbanceEvent {
  enum class Kind { resource_failure, weather_blackout, task_arrival, task_change };
  std::int64_t time = 0;
  Kind kind = Kind::task_arrival;
  ResourceId resource_id = 0;          // resource_failure
  Point region_center;                 // weather_blackout
  double region_radius_km = 0.0;
  std::int64_t interval_start = 0;
  std::int64_t interval_end = 0;
  std::vector<Task> new_tasks;         // task_arrival
  Task modified_task;                  // task_change
};

const char* to_string(DisturbanceEvent::Kind k);

struct ReplanRequest {
  std::vector<TaskId> tasks;                     // T, id order
  std::optional<ResourceId> initiator_resource;  // round-1 tenderer when set
  CenterId initiator_center = 0;
  int entry_round = 1;
};

// Reclaims affected pending work, applies the event to the world and names
// the initiator that enters the multiround allocation.
ReplanRequest handle_disturbance(World& world, const DisturbanceEvent& event);

// Initiator rule for task arrivals: the live resource nearest the tasks'
// centroid tenders first.
ReplanRequest arrival_initiator(const World& world, const std::vector<TaskId>& tasks);

struct McaParams {
  FlsParams fls;
  std::int64_t negotiation_budget_s = 60;
  bool arrivals_enter_round2 = false;
};

struct RoundOutcome {
  int level = 0;
  std::int64_t tenderer_id = 0;
  std::vector<TaskId> allocated;
  std::vector<TaskId> remaining;
};

struct McaResult {
  AllocationScheme scheme;
  std::vector<RoundOutcome> rounds;
  std::array<std::uint64_t, 3> level_work_units{0, 0, 0};
};

// A planning center's answer at the inter-center level: internal
// announce/collect/award over its own resources, bid as one composite.
Bid center_composite_bid(World& world, const PlanningCenter& center, const TaskDocument& doc,
                         const McaParams& params, Trace* trace = nullptr);

// Algorithm 1: three escalating auction rounds (neighbors, own center, peer
// centers). Unallocatable tasks remain in scheme.unassigned.
McaResult run_mca(World& world, const std::vector<TaskId>& tasks, const ReplanRequest& initiator,
                  const McaParams& params, Trace* trace = nullptr);

}  // namespace obsnet
