#include "obsnet/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "obsnet/work_meter.hpp"

namespace obsnet {

const char* to_string(InsertFail f) {
  switch (f) {
    case InsertFail::none: return "none";
    case InsertFail::already_scheduled: return "already_scheduled";
    case InsertFail::band_mismatch: return "band_mismatch";
    case InsertFail::resolution: return "resolution";
    case InsertFail::duration_budget: return "duration_budget";
    case InsertFail::poweron_budget: return "poweron_budget";
    case InsertFail::mileage_budget: return "mileage_budget";
    case InsertFail::no_time_slot: return "no_time_slot";
    case InsertFail::no_visibility: return "no_visibility";
  }
  return "?";
}

std::int64_t travel_time_s(double km, double speed_kmh) {
  if (km <= 0.0) return 0;
  return static_cast<std::int64_t>(std::ceil(km / speed_kmh * 3600.0));
}

bool matches_sensor(const Resource& res, const Task& task) {
  return res.bands.count(task.required_band) > 0 && task.required_resolution >= res.max_resolution;
}

namespace {

double swath_reach_km(const World& w, const Resource& sat) {
  const double half_width_km = sat.visible_width / 2000.0;
  const double swing_rad = sat.side_swing_angle * 3.14159265358979323846 / 180.0;
  return half_width_km + w.config.pass_model.altitude_km * std::tan(swing_rad);
}

std::int64_t pass_crossing_s(const World& w) {
  return static_cast<std::int64_t>(std::ceil(w.region_km.y / w.config.pass_model.ground_speed_kms));
}

Point task_location(const World& w, TaskId id) {
  const Task* t = w.find_task(id);
  if (!t) throw std::logic_error("schedule references unknown task " + std::to_string(id));
  return t->location;
}

}  // namespace

std::vector<VisibilityWindow> satellite_windows(const World& w, const Resource& sat, const Task& task) {
  if (sat.kind != ResourceKind::satellite)
    throw std::invalid_argument("satellite_windows called on non-satellite resource");
  std::vector<VisibilityWindow> out;
  const double reach = swath_reach_km(w, sat);
  const std::int64_t crossing = pass_crossing_s(w);
  for (const auto& pass : sat.passes) {
    if (std::abs(task.location.x - pass.track_x) > reach) continue;
    std::int64_t start = std::max(pass.start, task.window_start);
    std::int64_t end = std::min({pass.start + crossing, task.window_end, w.horizon_s});
    if (start < end) out.push_back({sat.id, task.id, start, end});
  }
  return out;
}

namespace {

InsertionResult fail(InsertFail why) {
  InsertionResult r;
  r.feasible = false;
  r.violated = why;
  return r;
}

InsertionResult can_insert_satellite(const World& w, const Resource& sat, const Task& task) {
  auto windows = satellite_windows(w, sat, task);
  if (windows.empty()) return fail(InsertFail::no_visibility);
  const std::int64_t dur = task.required_duration;
  InsertionResult best;
  for (const auto& win : windows) {
    work::add(1);
    std::int64_t cand = std::max(win.start, w.clock_s);
    for (const auto& st : sat.schedule) {
      if (st.exec_start < cand + dur && st.exec_end > cand) cand = st.exec_end;
    }
    if (cand + dur > win.end) continue;
    if (!best.feasible || cand < best.exec_start) {
      best.feasible = true;
      best.exec_start = cand;
      best.added_distance = 0.0;
      std::size_t pos = 0;
      while (pos < sat.schedule.size() && sat.schedule[pos].exec_start < cand) ++pos;
      best.position = pos;
    }
  }
  if (!best.feasible) return fail(InsertFail::no_time_slot);
  return best;
}

InsertionResult can_insert_mobile(const World& w, const Resource& res, const Task& task) {
  const std::int64_t dur = task.required_duration;

  // Entries already started are fixed; insertion happens among pending ones.
  std::size_t first_pos = 0;
  while (first_pos < res.schedule.size() && res.schedule[first_pos].state != TaskState::pending) ++first_pos;

  Point anchor_loc = res.position;
  std::int64_t anchor_t = w.clock_s;
  if (first_pos > 0) {
    const auto& last_fixed = res.schedule[first_pos - 1];
    anchor_loc = task_location(w, last_fixed.task_id);
    anchor_t = std::max(w.clock_s, last_fixed.exec_end);
  }

  InsertionResult best;
  bool timing_ok_somewhere = false;
  for (std::size_t p = first_pos; p <= res.schedule.size(); ++p) {
    work::add(1);
    Point prev_loc = anchor_loc;
    std::int64_t prev_t = anchor_t;
    if (p > first_pos) {
      const auto& prev = res.schedule[p - 1];
      prev_loc = task_location(w, prev.task_id);
      prev_t = prev.exec_end;
    }
    const double leg_in = travel_distance(prev_loc, task.location);
    const std::int64_t arrival = prev_t + travel_time_s(leg_in, res.cruise_speed);
    const std::int64_t es = std::max(arrival, task.window_start);
    if (es + dur > task.window_end) continue;
    double added = leg_in;
    if (p < res.schedule.size()) {
      const auto& next = res.schedule[p];
      Point next_loc = task_location(w, next.task_id);
      const double leg_out = travel_distance(task.location, next_loc);
      if (es + dur + travel_time_s(leg_out, res.cruise_speed) > next.exec_start) continue;
      added += leg_out - travel_distance(prev_loc, next_loc);
    }
    timing_ok_somewhere = true;
    if (added > res.endurance_remaining + 1e-9) continue;
    if (!best.feasible || added < best.added_distance - 1e-12) {
      best.feasible = true;
      best.position = p;
      best.exec_start = es;
      best.added_distance = added;
    }
  }
  if (!best.feasible) return fail(timing_ok_somewhere ? InsertFail::mileage_budget : InsertFail::no_time_slot);
  return best;
}

}  // namespace

InsertionResult can_insert(const World& w, const Resource& res, const Task& task) {
  for (const auto& st : res.schedule)
    if (st.task_id == task.id) return fail(InsertFail::already_scheduled);
  if (res.failed) return fail(InsertFail::no_time_slot);
  if (!res.bands.count(task.required_band)) return fail(InsertFail::band_mismatch);
  if (task.required_resolution < res.max_resolution) return fail(InsertFail::resolution);
  if (task.required_duration > res.duration_remaining) return fail(InsertFail::duration_budget);
  if (res.poweron_remaining < 1) return fail(InsertFail::poweron_budget);
  if (res.kind == ResourceKind::satellite) return can_insert_satellite(w, res, task);
  return can_insert_mobile(w, res, task);
}

ConflictSet conflicting_tasks(const World& w, const Resource& res, const Task& task) {
  ConflictSet out;
  InsertionResult ir = can_insert(w, res, task);
  if (ir.feasible) return out;
  switch (ir.violated) {
    case InsertFail::already_scheduled:
    case InsertFail::band_mismatch:
    case InsertFail::resolution:
    case InsertFail::no_visibility:
      out.inherently_infeasible = true;
      return out;
    default:
      break;
  }

  Resource copy = res;
  while (true) {
    std::vector<const ScheduledTask*> pending;
    for (const auto& st : copy.schedule)
      if (st.state == TaskState::pending) pending.push_back(&st);
    if (pending.empty()) {
      out.inherently_infeasible = true;
      out.tasks.clear();
      return out;
    }

    std::vector<const ScheduledTask*> candidates;
    const bool time_violation = ir.violated == InsertFail::no_time_slot;
    if (time_violation) {
      for (const auto* st : pending)
        if (st->exec_start < task.window_end && st->exec_end > task.window_start) candidates.push_back(st);
    }
    if (candidates.empty()) candidates = pending;

    const ScheduledTask* victim = nullptr;
    double victim_weight = std::numeric_limits<double>::infinity();
    for (const auto* st : candidates) {
      const Task* t = w.find_task(st->task_id);
      const double weight = t ? t->weight : 0.0;
      if (!victim || weight < victim_weight - 1e-12 ||
          (std::abs(weight - victim_weight) <= 1e-12 && st->task_id < victim->task_id)) {
        victim = st;
        victim_weight = weight;
      }
    }
    out.tasks.insert(victim->task_id);
    reclaim_scheduled(copy, victim->task_id);
    ir = can_insert(w, copy, task);
    if (ir.feasible) return out;
  }
}

std::vector<Violation> validate_schedule(const World& w, const Resource& res) {
  std::vector<Violation> out;
  auto add = [&](const std::string& code, const std::string& msg) { out.push_back({code, msg}); };
  const std::string rid = std::to_string(res.id);

  std::int64_t dur_sum = 0;
  double dist_sum = 0.0;
  Point prev_loc = res.position;
  std::int64_t prev_end = 0;
  for (std::size_t i = 0; i < res.schedule.size(); ++i) {
    const auto& st = res.schedule[i];
    const Task* t = w.find_task(st.task_id);
    if (!t) {
      add("replay.task_ref", "resource " + rid + " schedules unknown task " + std::to_string(st.task_id));
      continue;
    }
    if (st.exec_end - st.exec_start != t->required_duration)
      add("replay.duration", "task " + std::to_string(t->id) + " wrong exec duration");
    if (st.exec_start < t->window_start || st.exec_end > t->window_end)
      add("replay.window", "task " + std::to_string(t->id) + " outside window");
    if (!matches_sensor(res, *t))
      add("replay.sensor", "task " + std::to_string(t->id) + " sensor mismatch on resource " + rid);
    if (st.exec_start < prev_end)
      add("replay.overlap", "resource " + rid + " has overlapping entries");
    if (res.mobile()) {
      const std::int64_t arrival = prev_end + travel_time_s(travel_distance(prev_loc, t->location), res.cruise_speed);
      if (st.exec_start < arrival)
        add("replay.travel", "task " + std::to_string(t->id) + " starts before travel completes");
      prev_loc = t->location;
    } else {
      bool inside = false;
      for (const auto& win : satellite_windows(w, res, *t))
        if (win.start <= st.exec_start && st.exec_end <= win.end) inside = true;
      if (!inside) add("replay.visibility", "task " + std::to_string(t->id) + " outside satellite visibility");
    }
    prev_end = st.exec_end;
    dur_sum += st.exec_end - st.exec_start;
    dist_sum += st.flight_distance_in;
    if (st.flight_distance_in < -1e-9)
      add("replay.distance", "task " + std::to_string(t->id) + " negative flight distance");
  }

  if (res.duration_remaining != res.duration_initial - dur_sum)
    add("replay.duration_budget", "resource " + rid + " duration budget not conserved");
  if (res.poweron_remaining != res.poweron_initial - static_cast<std::int64_t>(res.schedule.size()))
    add("replay.poweron_budget", "resource " + rid + " power-on budget not conserved");
  if (std::abs(res.endurance_remaining - (res.endurance_initial - dist_sum)) > 1e-9)
    add("replay.mileage_budget", "resource " + rid + " mileage budget not conserved");
  if (res.duration_remaining < 0 || res.poweron_remaining < 0 || res.endurance_remaining < -1e-9)
    add("replay.budget_negative", "resource " + rid + " has negative remaining budget");
  return out;
}

}  // namespace obsnet
