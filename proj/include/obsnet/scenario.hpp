#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "obsnet/mca.hpp"
#include "obsnet/model.hpp"

namespace obsnet {

// Per-kind capability rows. Two-valued sets are assigned round-robin by
// resource index within the kind.
struct KindParams {
  std::vector<double> satellite_visible_width_m{8200.0, 5000.0};
  std::vector<double> satellite_side_swing_deg{30.0, 25.0};
  std::int64_t satellite_duration_s = 2400;
  std::int64_t satellite_poweron = 12;
  double satellite_max_resolution_m = 1.0;

  std::vector<double> uav_cruise_speed_kmh{90.0, 60.0};
  std::vector<double> uav_endurance_km{21.0, 30.0};
  std::vector<double> uav_visible_width_m{500.0, 600.0};
  std::int64_t uav_duration_s = 3000;
  std::int64_t uav_poweron = 25;
  double uav_max_resolution_m = 0.3;

  double airship_cruise_speed_kmh = 60.0;
  double airship_visible_width_m = 650.0;
  std::int64_t airship_duration_s = 4800;
  std::int64_t airship_poweron = 35;
  double airship_max_resolution_m = 0.5;
  // The capability tables list no airship mileage; one horizon of cruising.
  double airship_endurance_km = 360.0;
};

struct CenterSpec {
  ResourceKind kind;
  std::size_t count;
};

struct ScenarioConfig {
  std::vector<CenterSpec> centers{{ResourceKind::satellite, 2},
                                  {ResourceKind::uav, 25},
                                  {ResourceKind::uav, 28},
                                  {ResourceKind::airship, 9}};
  KindParams kinds;
  std::uint64_t seed = 0;
  std::int64_t horizon_s = 21600;
  Point region_km{200.0, 200.0};
  double comm_radius_km = 30.0;

  std::int64_t task_count = 600;  // static profile

  // dynamic profile
  std::int64_t initial_tasks = 40;
  int injection_rounds = 6;
  std::int64_t injection_min = 30;
  std::int64_t injection_max = 50;

  // task attribute ranges
  std::int64_t task_duration_min_s = 10;
  std::int64_t task_duration_max_s = 60;
  std::int64_t task_window_min_s = 600;
  std::int64_t task_window_max_s = 3600;
  double task_resolution_min_m = 0.5;
  double task_resolution_max_m = 5.0;

  static ScenarioConfig table1();
  static ScenarioConfig table2();
};

// Fully seeded generation; the announced task set is world.tasks.
World generate_static(const ScenarioConfig& config);

struct DynamicScenario {
  World world;  // with the initial tasks
  std::vector<DisturbanceEvent> events;
};

DynamicScenario generate_dynamic(const ScenarioConfig& config);

void save_scenario(const World& world, const std::string& path);
World load_scenario(const std::string& path);
std::string scenario_to_json(const World& world);
World scenario_from_json(const std::string& text, const std::string& context);

void save_events(const std::vector<DisturbanceEvent>& events, const std::string& path);
std::vector<DisturbanceEvent> load_events(const std::string& path);

}  // namespace obsnet
