#include "obsnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "obsnet/rng.hpp"

namespace obsnet {

using nlohmann::json;

ScenarioConfig ScenarioConfig::table1() { return ScenarioConfig{}; }

ScenarioConfig ScenarioConfig::table2() {
  ScenarioConfig c;
  c.centers = {{ResourceKind::satellite, 1},
               {ResourceKind::uav, 9},
               {ResourceKind::uav, 9},
               {ResourceKind::airship, 3}};
  c.kinds.satellite_visible_width_m = {5000.0};
  c.kinds.satellite_side_swing_deg = {25.0};
  c.task_count = 40;
  return c;
}

namespace {

template <typename T>
T pick_round_robin(const std::vector<T>& values, std::size_t index) {
  return values[index % values.size()];
}

Task make_task(Rng& rng, const ScenarioConfig& cfg, TaskId id, std::int64_t earliest) {
  Task t;
  t.id = id;
  t.location = {rng.uniform(0.0, cfg.region_km.x), rng.uniform(0.0, cfg.region_km.y)};
  t.weight = rng.uniform();
  t.required_duration = rng.uniform_int(cfg.task_duration_min_s, cfg.task_duration_max_s);
  std::int64_t window = rng.uniform_int(cfg.task_window_min_s, cfg.task_window_max_s);
  window = std::max(window, t.required_duration);
  const std::int64_t latest_start = cfg.horizon_s - window;
  t.window_start = latest_start > earliest ? rng.uniform_int(earliest, latest_start) : earliest;
  t.window_end = std::min(t.window_start + window, cfg.horizon_s);
  t.required_resolution = rng.uniform(cfg.task_resolution_min_m, cfg.task_resolution_max_m);
  const double band_draw = rng.uniform();
  t.required_band = band_draw < 0.60 ? Band::optical : band_draw < 0.85 ? Band::infrared : Band::sar;
  return t;
}

World generate_world(const ScenarioConfig& cfg) {
  World w;
  w.horizon_s = cfg.horizon_s;
  w.region_km = cfg.region_km;
  w.seed = cfg.seed;
  w.config.comm_radius_km = cfg.comm_radius_km;

  Rng rng(mix_seed(cfg.seed, 0x7363656e6172ull));

  const std::int64_t crossing_s =
      static_cast<std::int64_t>(std::ceil(cfg.region_km.y / w.config.pass_model.ground_speed_kms));

  ResourceId next_resource = 0;
  std::size_t sat_index = 0;
  std::size_t uav_index = 0;
  std::size_t airship_index = 0;
  for (std::size_t c = 0; c < cfg.centers.size(); ++c) {
    PlanningCenter center;
    center.id = static_cast<CenterId>(c);
    for (std::size_t other = 0; other < cfg.centers.size(); ++other)
      if (other != c) center.peer_center_ids.push_back(static_cast<CenterId>(other));

    for (std::size_t i = 0; i < cfg.centers[c].count; ++i) {
      Resource r;
      r.id = next_resource++;
      r.kind = cfg.centers[c].kind;
      r.center_id = center.id;
      r.position = {rng.uniform(0.0, cfg.region_km.x), rng.uniform(0.0, cfg.region_km.y)};
      switch (r.kind) {
        case ResourceKind::satellite: {
          r.visible_width = pick_round_robin(cfg.kinds.satellite_visible_width_m, sat_index);
          r.side_swing_angle = pick_round_robin(cfg.kinds.satellite_side_swing_deg, sat_index);
          r.duration_initial = cfg.kinds.satellite_duration_s;
          r.poweron_initial = cfg.kinds.satellite_poweron;
          r.endurance_initial = 0.0;  // no flight consumption
          r.max_resolution = cfg.kinds.satellite_max_resolution_m;
          r.bands = {Band::optical, Band::sar};
          r.cruise_speed = 0.0;
          for (int p = 0; p < w.config.pass_model.passes_per_horizon; ++p) {
            GroundPass pass;
            pass.track_x = rng.uniform(0.0, cfg.region_km.x);
            pass.start = rng.uniform_int(0, std::max<std::int64_t>(0, cfg.horizon_s - crossing_s));
            r.passes.push_back(pass);
          }
          std::sort(r.passes.begin(), r.passes.end(),
                    [](const GroundPass& a, const GroundPass& b) { return a.start < b.start; });
          ++sat_index;
          break;
        }
        case ResourceKind::uav: {
          r.cruise_speed = pick_round_robin(cfg.kinds.uav_cruise_speed_kmh, uav_index);
          r.endurance_initial = pick_round_robin(cfg.kinds.uav_endurance_km, uav_index);
          r.visible_width = pick_round_robin(cfg.kinds.uav_visible_width_m, uav_index);
          r.duration_initial = cfg.kinds.uav_duration_s;
          r.poweron_initial = cfg.kinds.uav_poweron;
          r.max_resolution = cfg.kinds.uav_max_resolution_m;
          r.bands = {Band::optical, Band::infrared};
          ++uav_index;
          break;
        }
        case ResourceKind::airship: {
          r.cruise_speed = cfg.kinds.airship_cruise_speed_kmh;
          r.endurance_initial = cfg.kinds.airship_endurance_km;
          r.visible_width = cfg.kinds.airship_visible_width_m;
          r.duration_initial = cfg.kinds.airship_duration_s;
          r.poweron_initial = cfg.kinds.airship_poweron;
          r.max_resolution = cfg.kinds.airship_max_resolution_m;
          r.bands = {Band::optical, Band::infrared, Band::sar};
          ++airship_index;
          break;
        }
      }
      r.endurance_remaining = r.endurance_initial;
      r.duration_remaining = r.duration_initial;
      r.poweron_remaining = r.poweron_initial;
      center.resource_ids.push_back(r.id);
      w.resources.push_back(std::move(r));
    }
    w.centers.push_back(std::move(center));
  }
  (void)airship_index;
  refresh_neighbors(w);
  return w;
}

}  // namespace

World generate_static(const ScenarioConfig& cfg) {
  if (cfg.task_count < 0) throw std::invalid_argument("task_count must be nonnegative");
  World w = generate_world(cfg);
  Rng rng(mix_seed(cfg.seed, 0x7461736b73ull));
  for (TaskId id = 0; id < cfg.task_count; ++id) {
    Task t = make_task(rng, cfg, id, 0);
    w.tasks[t.id] = t;
  }
  return w;
}

DynamicScenario generate_dynamic(const ScenarioConfig& cfg) {
  if (cfg.injection_rounds < 0) throw std::invalid_argument("injection_rounds must be nonnegative");
  DynamicScenario out;
  ScenarioConfig base = cfg;
  base.task_count = cfg.initial_tasks;
  out.world = generate_static(base);

  Rng rng(mix_seed(cfg.seed, 0x6576656e7473ull));
  TaskId next_id = cfg.initial_tasks;
  for (int round = 1; round <= cfg.injection_rounds; ++round) {
    DisturbanceEvent ev;
    ev.kind = DisturbanceEvent::Kind::task_arrival;
    ev.time = cfg.horizon_s * round / (cfg.injection_rounds + 1);
    const std::int64_t count = rng.uniform_int(cfg.injection_min, cfg.injection_max);
    for (std::int64_t i = 0; i < count; ++i) {
      Task t = make_task(rng, cfg, next_id++, ev.time);
      if (t.window_end - t.window_start < t.required_duration) {
        --next_id;  // window no longer fits before the horizon; skip
        continue;
      }
      ev.new_tasks.push_back(t);
    }
    out.events.push_back(std::move(ev));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON serialization

namespace {

json point_to_json(Point p) { return json::array({p.x, p.y}); }

Point point_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json task_to_json(const Task& t) {
  return json{{"id", t.id},
              {"location", point_to_json(t.location)},
              {"weight", t.weight},
              {"window_s", json::array({t.window_start, t.window_end})},
              {"duration_s", t.required_duration},
              {"resolution_m", t.required_resolution},
              {"band", to_string(t.required_band)}};
}

Task task_from_json(const json& j) {
  Task t;
  t.id = j.at("id").get<TaskId>();
  t.location = point_from_json(j.at("location"));
  t.weight = j.at("weight").get<double>();
  t.window_start = j.at("window_s").at(0).get<std::int64_t>();
  t.window_end = j.at("window_s").at(1).get<std::int64_t>();
  t.required_duration = j.at("duration_s").get<std::int64_t>();
  t.required_resolution = j.at("resolution_m").get<double>();
  t.required_band = band_from_string(j.at("band").get<std::string>());
  return t;
}

json scheduled_to_json(const ScheduledTask& st) {
  return json{{"task", st.task_id},
              {"resource", st.resource_id},
              {"exec_s", json::array({st.exec_start, st.exec_end})},
              {"cd_km", st.flight_distance_in},
              {"state", to_string(st.state)}};
}

ScheduledTask scheduled_from_json(const json& j) {
  ScheduledTask st;
  st.task_id = j.at("task").get<TaskId>();
  st.resource_id = j.at("resource").get<ResourceId>();
  st.exec_start = j.at("exec_s").at(0).get<std::int64_t>();
  st.exec_end = j.at("exec_s").at(1).get<std::int64_t>();
  st.flight_distance_in = j.at("cd_km").get<double>();
  st.state = state_from_string(j.at("state").get<std::string>());
  return st;
}

json resource_to_json(const Resource& r) {
  json j{{"id", r.id},
         {"kind", to_string(r.kind)},
         {"center_id", r.center_id},
         {"position", point_to_json(r.position)},
         {"cruise_speed_kmh", r.cruise_speed},
         {"endurance_km", json::array({r.endurance_initial, r.endurance_remaining})},
         {"duration_s", json::array({r.duration_initial, r.duration_remaining})},
         {"poweron", json::array({r.poweron_initial, r.poweron_remaining})},
         {"visible_width_m", r.visible_width},
         {"side_swing_deg", r.side_swing_angle},
         {"max_resolution_m", r.max_resolution},
         {"failed", r.failed}};
  j["bands"] = json::array();
  for (Band b : r.bands) j["bands"].push_back(to_string(b));
  j["passes"] = json::array();
  for (const auto& p : r.passes) j["passes"].push_back(json{{"track_x_km", p.track_x}, {"start_s", p.start}});
  j["schedule"] = json::array();
  for (const auto& st : r.schedule) j["schedule"].push_back(scheduled_to_json(st));
  return j;
}

Resource resource_from_json(const json& j) {
  Resource r;
  r.id = j.at("id").get<ResourceId>();
  r.kind = kind_from_string(j.at("kind").get<std::string>());
  r.center_id = j.at("center_id").get<CenterId>();
  r.position = point_from_json(j.at("position"));
  r.cruise_speed = j.at("cruise_speed_kmh").get<double>();
  r.endurance_initial = j.at("endurance_km").at(0).get<double>();
  r.endurance_remaining = j.at("endurance_km").at(1).get<double>();
  r.duration_initial = j.at("duration_s").at(0).get<std::int64_t>();
  r.duration_remaining = j.at("duration_s").at(1).get<std::int64_t>();
  r.poweron_initial = j.at("poweron").at(0).get<std::int64_t>();
  r.poweron_remaining = j.at("poweron").at(1).get<std::int64_t>();
  r.visible_width = j.at("visible_width_m").get<double>();
  r.side_swing_angle = j.at("side_swing_deg").get<double>();
  r.max_resolution = j.at("max_resolution_m").get<double>();
  r.failed = j.at("failed").get<bool>();
  for (const auto& b : j.at("bands")) r.bands.insert(band_from_string(b.get<std::string>()));
  for (const auto& p : j.at("passes"))
    r.passes.push_back({p.at("track_x_km").get<double>(), p.at("start_s").get<std::int64_t>()});
  for (const auto& st : j.at("schedule")) r.schedule.push_back(scheduled_from_json(st));
  return r;
}

constexpr int kSchemaVersion = 1;

}  // namespace

std::string scenario_to_json(const World& w) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["horizon_s"] = w.horizon_s;
  j["region_km"] = point_to_json(w.region_km);
  j["seed"] = w.seed;
  j["clock_s"] = w.clock_s;
  j["config"] = json{{"comm_radius_km", w.config.comm_radius_km},
                     {"max_link_latency_s", w.config.max_link_latency_s},
                     {"negotiation_budget_s", w.config.negotiation_budget_s},
                     {"pass_model",
                      json{{"passes_per_horizon", w.config.pass_model.passes_per_horizon},
                           {"ground_speed_kms", w.config.pass_model.ground_speed_kms},
                           {"altitude_km", w.config.pass_model.altitude_km}}},
                     {"weights",
                      json{{"alpha", w.config.weights.alpha},
                           {"beta", w.config.weights.beta},
                           {"gamma", w.config.weights.gamma},
                           {"lambda1", w.config.weights.lambda1},
                           {"lambda2", w.config.weights.lambda2}}}};
  j["centers"] = json::array();
  for (const auto& c : w.centers)
    j["centers"].push_back(
        json{{"id", c.id}, {"resource_ids", c.resource_ids}, {"peer_center_ids", c.peer_center_ids}});
  j["resources"] = json::array();
  for (const auto& r : w.resources) j["resources"].push_back(resource_to_json(r));
  j["tasks"] = json::array();
  for (const auto& [id, t] : w.tasks) j["tasks"].push_back(task_to_json(t));
  return j.dump(2) + "\n";
}

World scenario_from_json(const std::string& text, const std::string& context) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(context + ": " + e.what());
  }
  try {
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion)
      throw std::runtime_error("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
    World w;
    w.horizon_s = j.at("horizon_s").get<std::int64_t>();
    w.region_km = point_from_json(j.at("region_km"));
    w.seed = j.at("seed").get<std::uint64_t>();
    w.clock_s = j.value("clock_s", std::int64_t{0});
    const json& cfg = j.at("config");
    w.config.comm_radius_km = cfg.at("comm_radius_km").get<double>();
    w.config.max_link_latency_s = cfg.at("max_link_latency_s").get<double>();
    w.config.negotiation_budget_s = cfg.at("negotiation_budget_s").get<std::int64_t>();
    w.config.pass_model.passes_per_horizon = cfg.at("pass_model").at("passes_per_horizon").get<int>();
    w.config.pass_model.ground_speed_kms = cfg.at("pass_model").at("ground_speed_kms").get<double>();
    w.config.pass_model.altitude_km = cfg.at("pass_model").at("altitude_km").get<double>();
    w.config.weights.alpha = cfg.at("weights").at("alpha").get<double>();
    w.config.weights.beta = cfg.at("weights").at("beta").get<double>();
    w.config.weights.gamma = cfg.at("weights").at("gamma").get<double>();
    w.config.weights.lambda1 = cfg.at("weights").at("lambda1").get<double>();
    w.config.weights.lambda2 = cfg.at("weights").at("lambda2").get<double>();
    for (const auto& c : j.at("centers")) {
      PlanningCenter center;
      center.id = c.at("id").get<CenterId>();
      center.resource_ids = c.at("resource_ids").get<std::vector<ResourceId>>();
      center.peer_center_ids = c.at("peer_center_ids").get<std::vector<CenterId>>();
      w.centers.push_back(std::move(center));
    }
    for (const auto& r : j.at("resources")) w.resources.push_back(resource_from_json(r));
    for (const auto& t : j.at("tasks")) {
      Task task = task_from_json(t);
      w.tasks[task.id] = task;
    }
    refresh_neighbors(w);
    return w;
  } catch (const json::exception& e) {
    throw std::runtime_error(context + ": malformed scenario: " + e.what());
  }
}

void save_scenario(const World& w, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path);
  out << scenario_to_json(w);
}

World load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str(), path);
}

void save_events(const std::vector<DisturbanceEvent>& events, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["events"] = json::array();
  for (const auto& ev : events) {
    json e;
    e["time_s"] = ev.time;
    e["kind"] = to_string(ev.kind);
    switch (ev.kind) {
      case DisturbanceEvent::Kind::resource_failure:
        e["resource_id"] = ev.resource_id;
        break;
      case DisturbanceEvent::Kind::weather_blackout:
        e["region_center"] = point_to_json(ev.region_center);
        e["region_radius_km"] = ev.region_radius_km;
        e["interval_s"] = json::array({ev.interval_start, ev.interval_end});
        break;
      case DisturbanceEvent::Kind::task_arrival: {
        e["tasks"] = json::array();
        for (const auto& t : ev.new_tasks) e["tasks"].push_back(task_to_json(t));
        break;
      }
      case DisturbanceEvent::Kind::task_change:
        e["task"] = task_to_json(ev.modified_task);
        break;
    }
    j["events"].push_back(std::move(e));
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write events file: " + path);
  out << j.dump(2) << "\n";
}

std::vector<DisturbanceEvent> load_events(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read events file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion)
    throw std::runtime_error(path + ": unsupported schema_version");
  std::vector<DisturbanceEvent> events;
  for (const auto& e : j.at("events")) {
    DisturbanceEvent ev;
    ev.time = e.at("time_s").get<std::int64_t>();
    const std::string kind = e.at("kind").get<std::string>();
    if (kind == "resource_failure") {
      ev.kind = DisturbanceEvent::Kind::resource_failure;
      ev.resource_id = e.at("resource_id").get<ResourceId>();
    } else if (kind == "weather_blackout") {
      ev.kind = DisturbanceEvent::Kind::weather_blackout;
      ev.region_center = point_from_json(e.at("region_center"));
      ev.region_radius_km = e.at("region_radius_km").get<double>();
      ev.interval_start = e.at("interval_s").at(0).get<std::int64_t>();
      ev.interval_end = e.at("interval_s").at(1).get<std::int64_t>();
    } else if (kind == "task_arrival") {
      ev.kind = DisturbanceEvent::Kind::task_arrival;
      for (const auto& t : e.at("tasks")) ev.new_tasks.push_back(task_from_json(t));
    } else if (kind == "task_change") {
      ev.kind = DisturbanceEvent::Kind::task_change;
      ev.modified_task = task_from_json(e.at("task"));
    } else {
      throw std::runtime_error(path + ": unknown event kind " + kind);
    }
    events.push_back(std::move(ev));
  }
  return events;
}

}  // namespace obsnet
