#include "obsnet/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace obsnet {

const char* to_string(Band b) {
  switch (b) {
    case Band::optical: return "optical";
    case Band::infrared: return "infrared";
    case Band::sar: return "sar";
  }
  return "?";
}

const char* to_string(ResourceKind k) {
  switch (k) {
    case ResourceKind::satellite: return "satellite";
    case ResourceKind::uav: return "uav";
    case ResourceKind::airship: return "airship";
  }
  return "?";
}

const char* to_string(TaskState s) {
  switch (s) {
    case TaskState::pending: return "pending";
    case TaskState::executing: return "executing";
    case TaskState::done: return "done";
    case TaskState::reclaimed: return "reclaimed";
  }
  return "?";
}

Band band_from_string(const std::string& s) {
  if (s == "optical") return Band::optical;
  if (s == "infrared") return Band::infrared;
  if (s == "sar") return Band::sar;
  throw std::invalid_argument("unknown band: " + s);
}

ResourceKind kind_from_string(const std::string& s) {
  if (s == "satellite") return ResourceKind::satellite;
  if (s == "uav") return ResourceKind::uav;
  if (s == "airship") return ResourceKind::airship;
  throw std::invalid_argument("unknown resource kind: " + s);
}

TaskState state_from_string(const std::string& s) {
  if (s == "pending") return TaskState::pending;
  if (s == "executing") return TaskState::executing;
  if (s == "done") return TaskState::done;
  if (s == "reclaimed") return TaskState::reclaimed;
  throw std::invalid_argument("unknown task state: " + s);
}

Resource* World::find_resource(ResourceId id) {
  for (auto& r : resources)
    if (r.id == id) return &r;
  return nullptr;
}

const Resource* World::find_resource(ResourceId id) const {
  for (const auto& r : resources)
    if (r.id == id) return &r;
  return nullptr;
}

PlanningCenter* World::find_center(CenterId id) {
  for (auto& c : centers)
    if (c.id == id) return &c;
  return nullptr;
}

const PlanningCenter* World::find_center(CenterId id) const {
  for (const auto& c : centers)
    if (c.id == id) return &c;
  return nullptr;
}

const Task* World::find_task(TaskId id) const {
  auto it = tasks.find(id);
  return it == tasks.end() ? nullptr : &it->second;
}

namespace {

void add(std::vector<Violation>& out, std::string code, std::string msg) {
  out.push_back({std::move(code), std::move(msg)});
}

}  // namespace

std::vector<Violation> validate_scenario(const World& w) {
  std::vector<Violation> out;
  if (w.horizon_s <= 0) add(out, "horizon", "horizon_s must be positive");
  if (w.region_km.x <= 0 || w.region_km.y <= 0) add(out, "region", "region_km must be positive");

  std::set<CenterId> center_ids;
  for (const auto& c : w.centers) {
    if (!center_ids.insert(c.id).second)
      add(out, "center.duplicate", "duplicate center id " + std::to_string(c.id));
    for (CenterId p : c.peer_center_ids)
      if (p == c.id) add(out, "center.peer", "center " + std::to_string(c.id) + " lists itself as peer");
  }
  for (const auto& c : w.centers)
    for (CenterId p : c.peer_center_ids)
      if (!center_ids.count(p))
        add(out, "center.peer_ref", "center " + std::to_string(c.id) + " references missing peer " + std::to_string(p));

  std::set<TaskId> task_ids;
  for (const auto& [id, t] : w.tasks) {
    if (id != t.id) add(out, "task.key", "task map key mismatch for " + std::to_string(id));
    task_ids.insert(t.id);
    if (t.weight < 0.0 || t.weight > 1.0)
      add(out, "task.weight", "task " + std::to_string(t.id) + " weight outside [0,1]");
    if (t.window_start >= t.window_end)
      add(out, "task.window", "task " + std::to_string(t.id) + " has empty time window");
    if (t.window_end > w.horizon_s)
      add(out, "task.window", "task " + std::to_string(t.id) + " window exceeds horizon");
    if (t.required_duration <= 0)
      add(out, "task.duration", "task " + std::to_string(t.id) + " requires nonpositive duration");
    if (t.required_resolution <= 0.0)
      add(out, "task.resolution", "task " + std::to_string(t.id) + " requires nonpositive resolution");
  }

  std::map<ResourceId, CenterId> owner;
  for (const auto& c : w.centers)
    for (ResourceId rid : c.resource_ids) {
      if (owner.count(rid))
        add(out, "resource.multi_center", "resource " + std::to_string(rid) + " listed by two centers");
      owner[rid] = c.id;
    }

  std::set<ResourceId> resource_ids;
  for (const auto& r : w.resources) {
    if (!resource_ids.insert(r.id).second)
      add(out, "resource.duplicate", "duplicate resource id " + std::to_string(r.id));
    if (!center_ids.count(r.center_id))
      add(out, "resource.center_ref", "resource " + std::to_string(r.id) + " references missing center " + std::to_string(r.center_id));
    auto it = owner.find(r.id);
    if (it == owner.end())
      add(out, "resource.unowned", "resource " + std::to_string(r.id) + " not listed by any center");
    else if (it->second != r.center_id)
      add(out, "resource.owner_mismatch", "resource " + std::to_string(r.id) + " center_id disagrees with owning center");
    if (r.endurance_remaining < 0 || r.duration_remaining < 0 || r.poweron_remaining < 0)
      add(out, "resource.budget", "resource " + std::to_string(r.id) + " has a negative budget");
    if (r.mobile() && r.cruise_speed <= 0)
      add(out, "resource.speed", "resource " + std::to_string(r.id) + " mobile with nonpositive cruise speed");
    if (r.bands.empty())
      add(out, "resource.bands", "resource " + std::to_string(r.id) + " has no bands");
    if (r.max_resolution <= 0)
      add(out, "resource.resolution", "resource " + std::to_string(r.id) + " has nonpositive max resolution");
    for (ResourceId n : r.neighbors)
      if (const Resource* nr = w.find_resource(n); !nr || nr->center_id != r.center_id)
        add(out, "resource.neighbor", "resource " + std::to_string(r.id) + " neighbor " + std::to_string(n) + " missing or in another center");
    std::int64_t prev_end = 0;
    for (const auto& st : r.schedule) {
      if (st.resource_id != r.id)
        add(out, "schedule.owner", "schedule entry on resource " + std::to_string(r.id) + " claims resource " + std::to_string(st.resource_id));
      if (!task_ids.count(st.task_id))
        add(out, "schedule.task_ref", "resource " + std::to_string(r.id) + " schedules missing task " + std::to_string(st.task_id));
      if (st.exec_start < prev_end)
        add(out, "schedule.order", "resource " + std::to_string(r.id) + " schedule not time-ordered");
      prev_end = st.exec_end;
      if (const Task* t = w.find_task(st.task_id)) {
        if (st.exec_start < t->window_start || st.exec_end > t->window_end)
          add(out, "schedule.window", "task " + std::to_string(st.task_id) + " scheduled outside its window");
        if (st.exec_end - st.exec_start != t->required_duration)
          add(out, "schedule.duration", "task " + std::to_string(st.task_id) + " scheduled with wrong duration");
      }
    }
  }

  std::set<TaskId> seen;
  for (const auto& r : w.resources)
    for (const auto& st : r.schedule)
      if (!seen.insert(st.task_id).second)
        add(out, "schedule.double_booking", "task " + std::to_string(st.task_id) + " scheduled twice");

  return out;
}

void commit_scheduled(Resource& res, const ScheduledTask& entry) {
  auto pos = std::upper_bound(res.schedule.begin(), res.schedule.end(), entry,
                              [](const ScheduledTask& a, const ScheduledTask& b) { return a.exec_start < b.exec_start; });
  res.schedule.insert(pos, entry);
  res.duration_remaining -= entry.exec_end - entry.exec_start;
  res.poweron_remaining -= 1;
  res.endurance_remaining -= entry.flight_distance_in;
}

bool reclaim_scheduled(Resource& res, TaskId task_id) {
  for (auto it = res.schedule.begin(); it != res.schedule.end(); ++it) {
    if (it->task_id != task_id) continue;
    if (it->state != TaskState::pending) return false;
    res.duration_remaining += it->exec_end - it->exec_start;
    res.poweron_remaining += 1;
    res.endurance_remaining += it->flight_distance_in;
    res.schedule.erase(it);
    return true;
  }
  return false;
}

void refresh_neighbors(World& w) {
  for (auto& r : w.resources) r.neighbors.clear();
  for (std::size_t i = 0; i < w.resources.size(); ++i) {
    Resource& a = w.resources[i];
    if (a.failed) continue;
    for (std::size_t j = i + 1; j < w.resources.size(); ++j) {
      Resource& b = w.resources[j];
      if (b.failed || a.center_id != b.center_id) continue;
      Point pa = position_at(w, a, w.clock_s);
      Point pb = position_at(w, b, w.clock_s);
      if (travel_distance(pa, pb) <= w.config.comm_radius_km) {
        a.neighbors.insert(b.id);
        b.neighbors.insert(a.id);
      }
    }
  }
}

void advance_clock(World& w, std::int64_t t) {
  if (t < w.clock_s) return;
  w.clock_s = t;
  for (auto& r : w.resources)
    for (auto& st : r.schedule) {
      if (st.state == TaskState::reclaimed) continue;
      if (st.exec_end <= t)
        st.state = TaskState::done;
      else if (st.exec_start <= t)
        st.state = TaskState::executing;
    }
}

Point position_at(const World& w, const Resource& res, std::int64_t t) {
  const ScheduledTask* last = nullptr;
  for (const auto& st : res.schedule) {
    if (st.exec_start <= t && st.state != TaskState::reclaimed) last = &st;
  }
  if (!last) return res.position;
  if (const Task* task = w.find_task(last->task_id)) return task->location;
  return res.position;
}

std::map<TaskId, ResourceId> assignment_map(const World& w) {
  std::map<TaskId, ResourceId> out;
  for (const auto& r : w.resources)
    for (const auto& st : r.schedule)
      if (st.state != TaskState::reclaimed) out[st.task_id] = r.id;
  return out;
}

std::vector<ScheduledTask> all_assignments(const World& w) {
  std::vector<ScheduledTask> out;
  for (const auto& r : w.resources)
    for (const auto& st : r.schedule)
      if (st.state != TaskState::reclaimed) out.push_back(st);
  return out;
}

}  // namespace obsnet
