#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "obsnet/geometry.hpp"

namespace obsnet {

using TaskId = std::int64_t;
using ResourceId = std::int64_t;
using CenterId = std::int64_t;
using ContractId = std::int64_t;

enum class Band { optical, infrared, sar };
enum class ResourceKind { satellite, uav, airship };
enum class TaskState { pending, executing, done, reclaimed };

const char* to_string(Band b);
const char* to_string(ResourceKind k);
const char* to_string(TaskState s);
Band band_from_string(const std::string& s);
ResourceKind kind_from_string(const std::string& s);
TaskState state_from_string(const std::string& s);

// A point observation target.
struct Task {
  TaskId id = 0;
  Point location;
  double weight = 0.0;  // [0,1]
  std::int64_t window_start = 0;  // s from horizon start
  std::int64_t window_end = 0;
  std::int64_t required_duration = 0;  // s
  double required_resolution = 0.0;    // m
  Band required_band = Band::optical;
  bool operator==(const Task&) const = default;
};

// A committed (task, resource, time) assignment.
struct ScheduledTask {
  TaskId task_id = 0;
  ResourceId resource_id = 0;
  std::int64_t exec_start = 0;
  std::int64_t exec_end = 0;
  double flight_distance_in = 0.0;  // km flown to reach this target
  TaskState state = TaskState::pending;
  bool operator==(const ScheduledTask&) const = default;
};

// Synthetic straight-line satellite ground track: enters the region at
// (track_x, 0) at time `start` and moves in +y at the pass-model speed.
struct GroundPass {
  double track_x = 0.0;  // km
  std::int64_t start = 0;  // s
  bool operator==(const GroundPass&) const = default;
};

struct Resource {
  ResourceId id = 0;
  ResourceKind kind = ResourceKind::uav;
  CenterId center_id = 0;
  Point position;               // initial position (mobile kinds)
  double cruise_speed = 0.0;    // km/h
  double endurance_initial = 0.0;
  double endurance_remaining = 0.0;       // L_e, km
  std::int64_t duration_initial = 0;
  std::int64_t duration_remaining = 0;    // D_e, s
  std::int64_t poweron_initial = 0;
  std::int64_t poweron_remaining = 0;     // R_e
  double visible_width = 0.0;     // m
  double side_swing_angle = 0.0;  // deg, satellite only
  double max_resolution = 0.0;    // m
  std::set<Band> bands;
  std::vector<GroundPass> passes;        // satellite only
  std::vector<ScheduledTask> schedule;   // ordered by exec_start
  std::set<ResourceId> neighbors;        // RS_i; derived, not serialized
  bool failed = false;

  bool mobile() const { return kind != ResourceKind::satellite; }
  bool operator==(const Resource&) const = default;
};

struct PlanningCenter {
  CenterId id = 0;
  std::vector<ResourceId> resource_ids;
  std::vector<CenterId> peer_center_ids;
  bool operator==(const PlanningCenter&) const = default;
};

// Eq. 2 factor weights and Eq. 3 price weights.
struct BidWeights {
  double alpha = 1.0 / 3.0;
  double beta = 1.0 / 3.0;
  double gamma = 1.0 / 3.0;
  double lambda1 = 0.5;
  double lambda2 = 0.5;
  bool operator==(const BidWeights&) const = default;
};

struct PassModel {
  int passes_per_horizon = 2;
  double ground_speed_kms = 7.5;
  double altitude_km = 500.0;
  bool operator==(const PassModel&) const = default;
};

struct SimConfig {
  double comm_radius_km = 30.0;
  double max_link_latency_s = 0.0;
  std::int64_t negotiation_budget_s = 60;
  PassModel pass_model;
  BidWeights weights;
  bool operator==(const SimConfig&) const = default;
};

struct Provenance {
  int round = 0;  // 1..3 = MCA level; 0 = single-shot method
  std::string method;
  ContractId contract_id = 0;
  bool operator==(const Provenance&) const = default;
};

struct AllocationScheme {
  std::vector<ScheduledTask> assignments;
  std::set<TaskId> unassigned;
  std::map<TaskId, Provenance> provenance;
  bool operator==(const AllocationScheme&) const = default;
};

struct World {
  std::int64_t horizon_s = 21600;
  Point region_km{200.0, 200.0};
  std::uint64_t seed = 0;
  SimConfig config;
  std::vector<PlanningCenter> centers;
  std::vector<Resource> resources;
  std::map<TaskId, Task> tasks;
  std::int64_t clock_s = 0;
  ContractId next_contract_id = 1;
  std::set<ContractId> executed_contracts;

  Resource* find_resource(ResourceId id);
  const Resource* find_resource(ResourceId id) const;
  PlanningCenter* find_center(CenterId id);
  const PlanningCenter* find_center(CenterId id) const;
  const Task* find_task(TaskId id) const;
  bool operator==(const World&) const = default;
};

struct Violation {
  std::string code;
  std::string message;
};

// Report-style scenario check; empty result means valid. Pure.
std::vector<Violation> validate_scenario(const World& world);

// Booking helpers shared by every allocation path. commit inserts the entry
// in exec_start order and charges the budgets; reclaim removes a pending
// entry and restores exactly what commit charged.
void commit_scheduled(Resource& res, const ScheduledTask& entry);
bool reclaim_scheduled(Resource& res, TaskId task_id);

// Recomputes RS_i: same-center, non-failed resources within comm_radius_km
// of each other's current positions.
void refresh_neighbors(World& world);

// Moves the clock forward and flips schedule entry states (executing/done).
void advance_clock(World& world, std::int64_t t);

// Current anchor position of a resource: location of its last started task,
// else its initial position.
Point position_at(const World& world, const Resource& res, std::int64_t t);

std::map<TaskId, ResourceId> assignment_map(const World& world);
std::vector<ScheduledTask> all_assignments(const World& world);

}  // namespace obsnet
