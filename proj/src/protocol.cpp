#include "obsnet/protocol.hpp"

#include <algorithm>
#include <stdexcept>

#include "obsnet/rng.hpp"

namespace obsnet {

const char* to_string(ContractType t) {
  switch (t) {
    case ContractType::neighbor_round: return "neighbor_round";
    case ContractType::center_round: return "center_round";
    case ContractType::inter_center_round: return "inter_center_round";
  }
  return "?";
}

std::vector<Task> document_tasks(const TaskDocument& doc) {
  std::vector<Task> out;
  out.reserve(doc.task_info.size());
  for (std::size_t i = 0; i < doc.task_info.size(); ++i) {
    const auto& info = doc.task_info[i];
    Task t;
    t.id = info.id;
    t.location = info.location;
    t.window_start = info.window_start;
    t.window_end = info.window_end;
    t.required_duration = info.duration_s;
    t.required_band = doc.task_requirement[i].first;
    t.required_resolution = doc.task_requirement[i].second;
    t.weight = doc.task_weight[i];
    out.push_back(t);
  }
  return out;
}

double link_latency_s(const World& w, std::int64_t tenderer, std::int64_t bidder) {
  if (w.config.max_link_latency_s <= 0.0) return 0.0;
  Rng rng(mix_seed(mix_seed(w.seed, 0x6c696e6bull + static_cast<std::uint64_t>(tenderer)),
                   static_cast<std::uint64_t>(bidder)));
  return rng.uniform(0.0, w.config.max_link_latency_s);
}

TaskDocument announce(World& w, std::int64_t tenderer_id, const std::vector<Task>& tasks,
                      ContractType type, std::int64_t deadline, Trace* trace) {
  if (tasks.empty()) throw std::invalid_argument("announce requires a nonempty task set");
  if (deadline > w.horizon_s) throw std::invalid_argument("bid deadline lies beyond the horizon");

  TaskDocument doc;
  doc.contract_id = w.next_contract_id++;
  doc.contract_type = type;
  doc.tenderer_id = tenderer_id;
  doc.expire_time = deadline;
  for (const Task& t : tasks) {
    doc.task_info.push_back({t.id, "task-" + std::to_string(t.id), t.window_start, t.window_end,
                             t.required_duration, t.location});
    doc.task_requirement.emplace_back(t.required_band, t.required_resolution);
    doc.task_weight.push_back(t.weight);
  }
  const auto& bw = w.config.weights;
  doc.quote_requirement = {0.0, static_cast<double>(tasks.size()) * (bw.lambda1 + bw.lambda2)};

  if (trace) {
    nlohmann::json payload;
    payload["tenderer"] = tenderer_id;
    payload["type"] = to_string(type);
    payload["n_tasks"] = tasks.size();
    payload["expire"] = deadline;
    trace->event(w.clock_s, "announce", doc.contract_id, payload);
  }
  return doc;
}

Bid make_resource_bid(const World& w, const Resource& res, const TaskDocument& doc) {
  Bid bid;
  bid.bidder_id = res.id;
  bid.is_center = false;
  bid.document.contract_id = doc.contract_id;

  const std::vector<Task> announced = document_tasks(doc);
  Bundle bundle = build_bundle(w, res, announced, w.config.weights);
  if (bundle.items.empty()) {
    bid.document.bid = false;
    bid.document.indicators_status["feasible"] = false;
    return bid;
  }

  bid.document.bid = true;
  bid.document.indicators_status["feasible"] = true;
  bool clamped = false;
  double price = bundle.price;
  if (price < doc.quote_requirement.first) {
    price = doc.quote_requirement.first;
    clamped = true;
  }
  if (price > doc.quote_requirement.second) {
    price = doc.quote_requirement.second;
    clamped = true;
  }
  bid.document.indicators_status["price_in_quote_range"] = !clamped;
  bundle.price = price;
  bid.document.bid_price = price;
  for (const auto& item : bundle.items) {
    Band band = Band::optical;
    for (const Task& t : announced)
      if (t.id == item.task_id) band = t.required_band;
    bid.document.execution_scheme.push_back({item.task_id, item.insertion.exec_start, res.max_resolution, band});
  }
  bid.document.task_sequences.push_back(bundle.resulting_sequence);

  bid.price = bundle.price;
  for (const auto& item : bundle.items) bid.tasks.insert(item.task_id);
  bid.parts.push_back(std::move(bundle));
  return bid;
}

CollectedBids collect_bids(World& w, const TaskDocument& doc,
                           const std::vector<BidderHandle>& bidders, Trace* trace) {
  std::vector<BidderHandle> order = bidders;
  std::sort(order.begin(), order.end(),
            [](const BidderHandle& a, const BidderHandle& b) { return a.id < b.id; });

  CollectedBids out;
  for (const auto& handle : order) {
    Bid bid = handle.respond(w, doc);
    bid.document.contract_id = doc.contract_id;
    const double arrival = static_cast<double>(w.clock_s) + link_latency_s(w, doc.tenderer_id, handle.id);
    const bool late = arrival > static_cast<double>(doc.expire_time);
    if (late) bid.document.indicators_status["on_time"] = false;
    if (trace) {
      nlohmann::json payload;
      payload["bidder"] = handle.id;
      payload["bid"] = bid.document.bid && !late;
      payload["price"] = bid.price;
      payload["n_tasks"] = bid.tasks.size();
      trace->event(w.clock_s, "bid", doc.contract_id, payload);
    }
    out.documents.push_back(bid.document);
    if (late || !bid.document.bid || bid.tasks.empty()) continue;
    out.bids.push_back(std::move(bid));
  }
  return out;
}

AwardResult award(World& w, const TaskDocument& doc, const std::vector<Bid>& bids,
                  const AwardPolicy& policy, Trace* trace) {
  AwardResult result;
  result.contract.contract_id = doc.contract_id;
  result.contract.signed_at = w.clock_s;
  for (const auto& info : doc.task_info) result.unallocated.insert(info.id);
  if (bids.empty()) {
    if (trace)
      trace->event(w.clock_s, "award", doc.contract_id, {{"winners", 0}, {"value", 0.0}});
    return result;
  }

  std::vector<std::set<TaskId>> gt;
  std::vector<double> vt;
  for (const auto& bid : bids) {
    gt.push_back(bid.tasks);
    vt.push_back(bid.price);
  }
  WdpInstance inst = make_instance(std::move(gt), std::move(vt));

  WdpSolution sol;
  if (policy.solver == AwardPolicy::Solver::exact) {
    sol = solve_exact(inst, policy.exact);
  } else {
    FlsParams params = policy.fls;
    params.rng_seed = mix_seed(mix_seed(w.seed, params.rng_seed),
                               static_cast<std::uint64_t>(doc.contract_id));
    sol = solve_fls(inst, params);
  }

  for (std::size_t e = 0; e < bids.size(); ++e) {
    if (!sol.selected[e]) continue;
    result.contract.winners.push_back(bids[e]);
    for (TaskId t : bids[e].tasks) result.unallocated.erase(t);
  }
  result.value = sol.value;

  if (trace) {
    nlohmann::json payload;
    payload["winners"] = result.contract.winners.size();
    payload["value"] = sol.value;
    payload["unallocated"] = result.unallocated.size();
    trace->event(w.clock_s, "award", doc.contract_id, payload);
  }
  return result;
}

ExecuteResult execute_contract(World& w, const Contract& contract, Trace* trace) {
  ExecuteResult result;
  if (w.executed_contracts.count(contract.contract_id)) return result;  // replay is a no-op

  // Dry run on clones first so a stale bundle voids the contract without
  // touching the world.
  struct PlannedEntry {
    ResourceId resource_id;
    ScheduledTask entry;
  };
  std::vector<PlannedEntry> plan;
  std::map<ResourceId, Resource> clones;
  bool ok = true;
  for (const auto& winner : contract.winners) {
    for (const auto& bundle : winner.parts) {
      const Resource* live = w.find_resource(bundle.bidder_id);
      if (!live || live->failed) {
        ok = false;
        break;
      }
      auto [it, fresh] = clones.emplace(live->id, *live);
      Resource& clone = it->second;
      for (const auto& item : bundle.items) {
        const Task* task = w.find_task(item.task_id);
        if (!task) {
          ok = false;
          break;
        }
        InsertionResult ir = can_insert(w, clone, *task);
        if (!ir.feasible) {
          ok = false;
          break;
        }
        ScheduledTask st;
        st.task_id = task->id;
        st.resource_id = clone.id;
        st.exec_start = ir.exec_start;
        st.exec_end = ir.exec_start + task->required_duration;
        st.flight_distance_in = clone.kind == ResourceKind::satellite ? 0.0 : ir.added_distance;
        st.state = TaskState::pending;
        commit_scheduled(clone, st);
        plan.push_back({clone.id, st});
      }
      if (!ok) break;
    }
    if (!ok) break;
  }

  if (!ok) {
    result.voided = true;
    for (const auto& winner : contract.winners)
      result.returned.insert(winner.tasks.begin(), winner.tasks.end());
    if (trace)
      trace->event(w.clock_s, "execute", contract.contract_id,
                   {{"voided", true}, {"returned", result.returned.size()}});
    return result;
  }

  for (const auto& pe : plan) {
    Resource* res = w.find_resource(pe.resource_id);
    commit_scheduled(*res, pe.entry);
    result.committed.push_back(pe.entry);
    if (trace) {
      nlohmann::json payload;
      payload["resource"] = pe.resource_id;
      payload["task"] = pe.entry.task_id;
      payload["exec_start"] = pe.entry.exec_start;
      payload["exec_end"] = pe.entry.exec_end;
      payload["cd_km"] = pe.entry.flight_distance_in;
      trace->event(w.clock_s, "execute", contract.contract_id, payload);
    }
  }
  w.executed_contracts.insert(contract.contract_id);
  return result;
}

}  // namespace obsnet
