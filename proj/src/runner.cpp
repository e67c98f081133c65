#include "obsnet/runner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "obsnet/feasibility.hpp"
#include "obsnet/metrics.hpp"
#include "obsnet/work_meter.hpp"

namespace obsnet {

Method method_from_string(const std::string& s) {
  if (s == "mca") return Method::mca;
  if (s == "ssa") return Method::ssa;
  if (s == "aus") return Method::aus;
  if (s == "tca") return Method::tca;
  if (s == "exact") return Method::exact;
  throw std::invalid_argument("unknown method: " + s);
}

const char* to_string(Method m) {
  switch (m) {
    case Method::mca: return "mca";
    case Method::ssa: return "ssa";
    case Method::aus: return "aus";
    case Method::tca: return "tca";
    case Method::exact: return "exact";
  }
  return "?";
}

RunOutput run_method(World& w, Method method, const std::vector<TaskId>& tasks,
                     const RunParams& params, Trace* trace) {
  RunOutput out;
  if (tasks.empty()) return out;
  std::vector<TaskId> ids = tasks;
  std::sort(ids.begin(), ids.end());

  BaselineParams base = params.baseline;
  base.seed = params.seed;

  const std::uint64_t before = work::read();
  switch (method) {
    case Method::mca: {
      McaParams mp;
      mp.fls = params.fls;
      mp.fls.rng_seed = params.seed;
      mp.negotiation_budget_s = w.config.negotiation_budget_s;
      mp.arrivals_enter_round2 = params.arrivals_enter_round2;
      ReplanRequest req = arrival_initiator(w, ids);
      McaResult r = run_mca(w, ids, req, mp, trace);
      out.scheme = std::move(r.scheme);
      out.level_units = r.level_work_units;
      break;
    }
    case Method::ssa:
      out.scheme = solve_ssa(w, ids, base);
      break;
    case Method::aus:
      out.scheme = solve_aus(w, ids, base);
      break;
    case Method::tca:
      out.scheme = solve_tca(w, ids, params.tca_k, base);
      break;
    case Method::exact:
      out.scheme = solve_exact_central(w, ids, base);
      break;
  }
  out.work_units = work::read() - before;
  return out;
}

namespace {

bool task_viable(const World& w, const Task& t) {
  const std::int64_t earliest = std::max(w.clock_s, t.window_start);
  return earliest + t.required_duration <= t.window_end;
}

// Global replanning for the centralized methods: reclaim every pending
// assignment and re-solve over everything still open.
std::vector<TaskId> reclaim_and_collect(World& w, const std::vector<TaskId>& triggered) {
  for (auto& r : w.resources) {
    std::vector<TaskId> pending;
    for (const auto& st : r.schedule)
      if (st.state == TaskState::pending) pending.push_back(st.task_id);
    for (TaskId id : pending) reclaim_scheduled(r, id);
  }
  std::set<TaskId> open(triggered.begin(), triggered.end());
  const auto assigned = assignment_map(w);
  for (const auto& [id, t] : w.tasks) {
    if (assigned.count(id)) continue;
    if (task_viable(w, t)) open.insert(id);
  }
  return {open.begin(), open.end()};
}

}  // namespace

std::vector<DynamicRow> run_dynamic(World& w, const std::vector<DisturbanceEvent>& events,
                                    Method method, const RunParams& params, Trace* trace) {
  std::vector<DynamicRow> rows;

  // Initial plan over the seeded tasks with the same method.
  std::vector<TaskId> initial;
  for (const auto& [id, t] : w.tasks) initial.push_back(id);
  if (!initial.empty()) run_method(w, method, initial, params, trace);

  int round = 0;
  for (const auto& event : events) {
    ++round;
    const std::size_t prev_pool = w.tasks.size();
    const auto old_assignments = assignment_map(w);

    ReplanRequest req = handle_disturbance(w, event);

    const std::uint64_t before = work::read();
    if (!req.tasks.empty()) {
      switch (method) {
        case Method::mca: {
          McaParams mp;
          mp.fls = params.fls;
          mp.fls.rng_seed = params.seed;
          mp.negotiation_budget_s = w.config.negotiation_budget_s;
          mp.arrivals_enter_round2 = params.arrivals_enter_round2;
          run_mca(w, req.tasks, req, mp, trace);
          break;
        }
        case Method::ssa: {
          BaselineParams base = params.baseline;
          base.seed = params.seed;
          solve_ssa(w, req.tasks, base);
          break;
        }
        case Method::aus:
        case Method::tca:
        case Method::exact: {
          BaselineParams base = params.baseline;
          base.seed = params.seed;
          const std::vector<TaskId> open = reclaim_and_collect(w, req.tasks);
          if (!open.empty()) {
            if (method == Method::aus)
              solve_aus(w, open, base);
            else if (method == Method::tca)
              solve_tca(w, open, params.tca_k, base);
            else
              solve_exact_central(w, open, base);
          }
          break;
        }
      }
    }
    const std::uint64_t work_units = work::read() - before;

    DynamicRow row;
    row.round = round;
    row.nt = static_cast<std::int64_t>(req.tasks.size());
    row.at = static_cast<std::int64_t>(w.tasks.size());
    row.tcr = tcr(all_assignments(w).size(), w.tasks.size());
    row.work_units = work_units;
    if (!old_assignments.empty()) row.rsc = rsc(old_assignments, assignment_map(w));
    row.occupancy = occupancy_rate(req.tasks.size(), prev_pool);
    row.aec_km = aec(w);
    rows.push_back(row);
  }
  return rows;
}

std::vector<Violation> validate_world(const World& w) {
  std::vector<Violation> out = validate_scenario(w);
  for (const auto& r : w.resources) {
    auto v = validate_schedule(w, r);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

}  // namespace obsnet
