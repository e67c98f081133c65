#include "obsnet/mca.hpp"

#include <algorithm>
#include <stdexcept>

#include "obsnet/feasibility.hpp"
#include "obsnet/work_meter.hpp"

namespace obsnet {

const char* to_string(DisturbanceEvent::Kind k) {
  switch (k) {
    case DisturbanceEvent::Kind::resource_failure: return "resource_failure";
    case DisturbanceEvent::Kind::weather_blackout: return "weather_blackout";
    case DisturbanceEvent::Kind::task_arrival: return "task_arrival";
    case DisturbanceEvent::Kind::task_change: return "task_change";
  }
  return "?";
}

namespace {

// Reclaims the given pending entries and returns their task ids per owner.
std::map<ResourceId, std::vector<TaskId>> reclaim_entries(World& w,
                                                          const std::vector<ScheduledTask>& entries) {
  std::map<ResourceId, std::vector<TaskId>> per_owner;
  for (const auto& st : entries) {
    Resource* res = w.find_resource(st.resource_id);
    if (res && reclaim_scheduled(*res, st.task_id)) per_owner[st.resource_id].push_back(st.task_id);
  }
  return per_owner;
}

ResourceId nearest_resource(const World& w, Point p) {
  ResourceId best = -1;
  double best_d = 0.0;
  for (const auto& r : w.resources) {
    if (r.failed) continue;
    const double d = travel_distance(position_at(w, r, w.clock_s), p);
    if (best == -1 || d < best_d - 1e-12 || (std::abs(d - best_d) <= 1e-12 && r.id < best)) {
      best = r.id;
      best_d = d;
    }
  }
  return best;
}

ReplanRequest initiator_from_resource(const World& w, ResourceId rid) {
  ReplanRequest req;
  const Resource* res = w.find_resource(rid);
  if (res && !res->failed) {
    req.initiator_resource = rid;
    req.initiator_center = res->center_id;
    req.entry_round = 1;
  } else {
    req.initiator_resource.reset();
    req.initiator_center = res ? res->center_id : (w.centers.empty() ? 0 : w.centers.front().id);
    req.entry_round = 2;
  }
  return req;
}

}  // namespace

ReplanRequest handle_disturbance(World& w, const DisturbanceEvent& event) {
  if (event.time < w.clock_s) throw std::invalid_argument("disturbance lies in the past");
  advance_clock(w, event.time);

  ReplanRequest req;
  switch (event.kind) {
    case DisturbanceEvent::Kind::resource_failure: {
      Resource* res = w.find_resource(event.resource_id);
      if (!res) throw std::invalid_argument("unknown resource in disturbance: " + std::to_string(event.resource_id));
      std::vector<ScheduledTask> affected;
      for (const auto& st : res->schedule)
        if (st.state == TaskState::pending) affected.push_back(st);
      reclaim_entries(w, affected);
      res->failed = true;
      refresh_neighbors(w);
      for (const auto& st : affected) req.tasks.push_back(st.task_id);
      std::sort(req.tasks.begin(), req.tasks.end());
      req.initiator_resource.reset();  // the failed node cannot tender
      req.initiator_center = res->center_id;
      req.entry_round = 2;
      return req;
    }
    case DisturbanceEvent::Kind::weather_blackout: {
      std::vector<ScheduledTask> affected;
      for (const auto& r : w.resources)
        for (const auto& st : r.schedule) {
          if (st.state != TaskState::pending) continue;
          if (st.exec_start >= event.interval_end || st.exec_end <= event.interval_start) continue;
          const Task* t = w.find_task(st.task_id);
          if (!t) continue;
          if (travel_distance(t->location, event.region_center) <= event.region_radius_km)
            affected.push_back(st);
        }
      auto per_owner = reclaim_entries(w, affected);
      refresh_neighbors(w);
      for (const auto& st : affected) req.tasks.push_back(st.task_id);
      std::sort(req.tasks.begin(), req.tasks.end());
      if (req.tasks.empty()) return req;
      // initiator: the resource that lost the most tasks, ties to lower id
      ResourceId initiator = per_owner.begin()->first;
      std::size_t most = per_owner.begin()->second.size();
      for (const auto& [rid, lost] : per_owner)
        if (lost.size() > most) {
          initiator = rid;
          most = lost.size();
        }
      return [&] {
        ReplanRequest r2 = initiator_from_resource(w, initiator);
        r2.tasks = req.tasks;
        return r2;
      }();
    }
    case DisturbanceEvent::Kind::task_arrival: {
      if (event.new_tasks.empty()) return req;
      for (const Task& t : event.new_tasks) {
        if (w.tasks.count(t.id)) throw std::invalid_argument("arriving task id already exists: " + std::to_string(t.id));
        w.tasks[t.id] = t;
        req.tasks.push_back(t.id);
      }
      refresh_neighbors(w);
      return arrival_initiator(w, req.tasks);
    }
    case DisturbanceEvent::Kind::task_change: {
      const Task& changed = event.modified_task;
      auto it = w.tasks.find(changed.id);
      if (it == w.tasks.end()) throw std::invalid_argument("task_change for unknown task: " + std::to_string(changed.id));
      ResourceId holder = -1;
      for (const auto& r : w.resources)
        for (const auto& st : r.schedule)
          if (st.task_id == changed.id && st.state == TaskState::pending) holder = r.id;
      if (holder >= 0) {
        Resource* res = w.find_resource(holder);
        reclaim_scheduled(*res, changed.id);
      }
      it->second = changed;
      refresh_neighbors(w);
      req.tasks.push_back(changed.id);
      ReplanRequest r2 = holder >= 0 ? initiator_from_resource(w, holder)
                                     : initiator_from_resource(w, nearest_resource(w, changed.location));
      r2.tasks = req.tasks;
      return r2;
    }
  }
  return req;
}

ReplanRequest arrival_initiator(const World& w, const std::vector<TaskId>& tasks) {
  ReplanRequest req;
  req.tasks = tasks;
  std::sort(req.tasks.begin(), req.tasks.end());
  Point centroid{0.0, 0.0};
  std::size_t n = 0;
  for (TaskId id : req.tasks)
    if (const Task* t = w.find_task(id)) {
      centroid.x += t->location.x;
      centroid.y += t->location.y;
      ++n;
    }
  if (n == 0) {
    req.entry_round = 2;
    req.initiator_center = w.centers.empty() ? 0 : w.centers.front().id;
    return req;
  }
  centroid.x /= static_cast<double>(n);
  centroid.y /= static_cast<double>(n);
  const ResourceId rid = nearest_resource(w, centroid);
  if (rid >= 0) {
    ReplanRequest r2 = initiator_from_resource(w, rid);
    r2.tasks = req.tasks;
    return r2;
  }
  req.entry_round = 2;
  req.initiator_center = w.centers.empty() ? 0 : w.centers.front().id;
  return req;
}

namespace {

std::vector<Task> lookup_tasks(const World& w, const std::vector<TaskId>& ids) {
  std::vector<Task> out;
  for (TaskId id : ids)
    if (const Task* t = w.find_task(id)) out.push_back(*t);
  return out;
}

AwardPolicy fls_policy(const McaParams& params) {
  AwardPolicy policy;
  policy.solver = AwardPolicy::Solver::fls;
  policy.fls = params.fls;
  return policy;
}

// Runs one announce/collect/award/execute round and commits the winners.
struct RoundResult {
  std::set<TaskId> allocated;
  ContractId contract_id = 0;
  std::vector<ScheduledTask> committed;
};

RoundResult run_round(World& w, std::int64_t tenderer, const std::vector<Task>& tasks,
                      ContractType type, const std::vector<BidderHandle>& bidders,
                      const McaParams& params, Trace* trace) {
  RoundResult result;
  if (tasks.empty() || bidders.empty()) return result;
  const std::int64_t deadline = std::min(w.horizon_s, w.clock_s + params.negotiation_budget_s);
  TaskDocument doc = announce(w, tenderer, tasks, type, deadline, trace);
  result.contract_id = doc.contract_id;
  CollectedBids collected = collect_bids(w, doc, bidders, trace);
  AwardResult awarded = award(w, doc, collected.bids, fls_policy(params), trace);
  ExecuteResult exec = execute_contract(w, awarded.contract, trace);
  if (exec.voided) return result;
  for (const auto& st : exec.committed) {
    result.allocated.insert(st.task_id);
    result.committed.push_back(st);
  }
  return result;
}

}  // namespace

Bid center_composite_bid(World& w, const PlanningCenter& center, const TaskDocument& doc,
                         const McaParams& /*params*/, Trace* trace) {
  Bid bid;
  bid.bidder_id = center.id;
  bid.is_center = true;
  bid.document.contract_id = doc.contract_id;
  bid.document.bid = false;

  const std::vector<Task> tasks = document_tasks(doc);
  std::vector<BidderHandle> handles;
  for (ResourceId rid : center.resource_ids) {
    const Resource* res = w.find_resource(rid);
    if (!res || res->failed) continue;
    handles.push_back({rid, [rid](const World& world, const TaskDocument& d) {
                         return make_resource_bid(world, *world.find_resource(rid), d);
                       }});
  }
  if (handles.empty()) return bid;

  // Internal tender: winners stay tentative until the inter-center award.
  TaskDocument internal = announce(w, center.id, tasks, ContractType::center_round, doc.expire_time, trace);
  CollectedBids collected = collect_bids(w, internal, handles, trace);
  AwardPolicy policy;
  policy.solver = AwardPolicy::Solver::exact;
  AwardResult awarded = award(w, internal, collected.bids, policy, trace);
  if (awarded.contract.winners.empty()) return bid;

  bid.document.bid = true;
  for (const auto& winner : awarded.contract.winners)
    for (const auto& bundle : winner.parts) {
      bid.price += bundle.price;
      for (const auto& item : bundle.items) bid.tasks.insert(item.task_id);
      bid.document.task_sequences.push_back(bundle.resulting_sequence);
      for (const auto& item : bundle.items) {
        Band band = Band::optical;
        for (const Task& t : tasks)
          if (t.id == item.task_id) band = t.required_band;
        const Resource* res = w.find_resource(bundle.bidder_id);
        bid.document.execution_scheme.push_back(
            {item.task_id, item.insertion.exec_start, res ? res->max_resolution : 0.0, band});
      }
      bid.parts.push_back(bundle);
    }
  bid.document.bid_price = bid.price;
  bid.document.indicators_status["feasible"] = true;
  return bid;
}

McaResult run_mca(World& w, const std::vector<TaskId>& task_ids, const ReplanRequest& initiator,
                  const McaParams& params, Trace* trace) {
  if (task_ids.empty()) throw std::invalid_argument("run_mca requires a nonempty task set");
  McaResult result;
  std::set<TaskId> remaining(task_ids.begin(), task_ids.end());
  for (TaskId id : task_ids)
    if (!w.find_task(id)) throw std::invalid_argument("run_mca given unknown task " + std::to_string(id));
  refresh_neighbors(w);

  auto record_round = [&](int level, std::int64_t tenderer, const RoundResult& rr) {
    RoundOutcome outcome;
    outcome.level = level;
    outcome.tenderer_id = tenderer;
    outcome.allocated.assign(rr.allocated.begin(), rr.allocated.end());
    for (TaskId t : rr.allocated) {
      remaining.erase(t);
      result.scheme.provenance[t] = {level, "mca", rr.contract_id};
    }
    outcome.remaining.assign(remaining.begin(), remaining.end());
    result.rounds.push_back(outcome);
    for (const auto& st : rr.committed) result.scheme.assignments.push_back(st);
    if (trace) {
      nlohmann::json payload;
      payload["level"] = level;
      payload["tenderer"] = tenderer;
      payload["allocated"] = rr.allocated.size();
      payload["remaining"] = remaining.size();
      trace->event(w.clock_s, "round_outcome", rr.contract_id, payload);
    }
  };

  int entry_round = initiator.initiator_resource ? initiator.entry_round : 2;
  if (params.arrivals_enter_round2) entry_round = std::max(entry_round, 2);

  auto remaining_tasks = [&] {
    return lookup_tasks(w, std::vector<TaskId>(remaining.begin(), remaining.end()));
  };

  // Round 1: the initiating resource tenders to its communicable neighbors.
  CenterId center_id = initiator.initiator_center;
  if (initiator.initiator_resource) {
    if (const Resource* r_i = w.find_resource(*initiator.initiator_resource)) {
      center_id = r_i->center_id;
      if (entry_round <= 1 && !r_i->neighbors.empty()) {
        std::vector<BidderHandle> handles;
        for (ResourceId rid : r_i->neighbors)
          handles.push_back({rid, [rid](World& world, const TaskDocument& d) {
                               return make_resource_bid(world, *world.find_resource(rid), d);
                             }});
        const std::uint64_t before = work::read();
        RoundResult rr = run_round(w, r_i->id, remaining_tasks(), ContractType::neighbor_round, handles,
                                   params, trace);
        result.level_work_units[0] = work::read() - before;
        record_round(1, r_i->id, rr);
      }
    }
  }

  // Round 2: the planning center tenders to all of its resources.
  if (!remaining.empty()) {
    if (const PlanningCenter* center = w.find_center(center_id)) {
      std::vector<BidderHandle> handles;
      for (ResourceId rid : center->resource_ids) {
        const Resource* res = w.find_resource(rid);
        if (!res || res->failed) continue;
        handles.push_back({rid, [rid](World& world, const TaskDocument& d) {
                             return make_resource_bid(world, *world.find_resource(rid), d);
                           }});
      }
      const std::uint64_t before = work::read();
      RoundResult rr = run_round(w, center_id, remaining_tasks(), ContractType::center_round, handles,
                                 params, trace);
      result.level_work_units[1] = work::read() - before;
      record_round(2, center_id, rr);
    }
  }

  // Round 3: peer planning centers answer with composite bids.
  if (!remaining.empty()) {
    std::vector<BidderHandle> handles;
    for (const auto& center : w.centers) {
      if (center.id == center_id) continue;
      const CenterId cid = center.id;
      handles.push_back({cid, [cid, &params, trace](World& world, const TaskDocument& d) {
                           return center_composite_bid(world, *world.find_center(cid), d, params, trace);
                         }});
    }
    const std::uint64_t before = work::read();
    RoundResult rr = run_round(w, center_id, remaining_tasks(), ContractType::inter_center_round, handles,
                               params, trace);
    result.level_work_units[2] = work::read() - before;
    record_round(3, center_id, rr);
  }

  result.scheme.unassigned = remaining;
  return result;
}

}  // namespace obsnet
