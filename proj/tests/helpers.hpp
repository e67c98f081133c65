#pragma once

#include <string>
#include <vector>

#include "obsnet/model.hpp"

namespace obsnet::testing {

// Hand-built fixtures use a 1 km/s cruise speed so travel times equal
// distances and can be checked mentally.
constexpr double kUnitSpeedKmh = 3600.0;

inline World empty_world() {
  World w;
  w.horizon_s = 21600;
  w.region_km = {200.0, 200.0};
  return w;
}

inline PlanningCenter& add_center(World& w, CenterId id) {
  PlanningCenter c;
  c.id = id;
  for (auto& other : w.centers) {
    other.peer_center_ids.push_back(id);
    c.peer_center_ids.push_back(other.id);
  }
  w.centers.push_back(c);
  return w.centers.back();
}

inline Resource make_uav(ResourceId id, CenterId center, Point pos, double endurance_km = 1000.0,
                         std::int64_t duration_s = 10000, std::int64_t poweron = 100) {
  Resource r;
  r.id = id;
  r.kind = ResourceKind::uav;
  r.center_id = center;
  r.position = pos;
  r.cruise_speed = kUnitSpeedKmh;
  r.endurance_initial = r.endurance_remaining = endurance_km;
  r.duration_initial = r.duration_remaining = duration_s;
  r.poweron_initial = r.poweron_remaining = poweron;
  r.visible_width = 500.0;
  r.max_resolution = 0.1;
  r.bands = {Band::optical, Band::infrared};
  return r;
}

inline Resource make_airship(ResourceId id, CenterId center, Point pos) {
  Resource r = make_uav(id, center, pos, 2000.0, 20000, 200);
  r.kind = ResourceKind::airship;
  r.visible_width = 650.0;
  r.max_resolution = 0.5;
  r.bands = {Band::optical, Band::infrared, Band::sar};
  return r;
}

inline Resource make_satellite(ResourceId id, CenterId center, double track_x, std::int64_t pass_start,
                               std::int64_t duration_s = 2400, std::int64_t poweron = 12) {
  Resource r;
  r.id = id;
  r.kind = ResourceKind::satellite;
  r.center_id = center;
  r.cruise_speed = 0.0;
  r.endurance_initial = r.endurance_remaining = 0.0;
  r.duration_initial = r.duration_remaining = duration_s;
  r.poweron_initial = r.poweron_remaining = poweron;
  r.visible_width = 5000.0;
  r.side_swing_angle = 25.0;
  r.max_resolution = 1.0;
  r.bands = {Band::optical, Band::sar};
  r.passes.push_back({track_x, pass_start});
  return r;
}

inline Resource& add_resource(World& w, Resource r) {
  if (!w.find_center(r.center_id)) add_center(w, r.center_id);
  w.find_center(r.center_id)->resource_ids.push_back(r.id);
  w.resources.push_back(std::move(r));
  return w.resources.back();
}

inline Task make_task(TaskId id, Point pos, double weight, std::int64_t ws, std::int64_t we,
                      std::int64_t duration, Band band = Band::optical, double resolution = 1.0) {
  Task t;
  t.id = id;
  t.location = pos;
  t.weight = weight;
  t.window_start = ws;
  t.window_end = we;
  t.required_duration = duration;
  t.required_band = band;
  t.required_resolution = resolution;
  return t;
}

inline Task& add_task(World& w, Task t) {
  w.tasks[t.id] = t;
  return w.tasks[t.id];
}

}  // namespace obsnet::testing
