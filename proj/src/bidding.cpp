#include "obsnet/bidding.hpp"

#include <algorithm>
#include <cmath>

namespace obsnet {

std::vector<double> conflict_degrees(const std::vector<double>& sums) {
  std::vector<double> out(sums.size(), 0.0);
  double max_sum = 0.0;
  for (double s : sums) max_sum = std::max(max_sum, s);
  if (max_sum <= 0.0) return out;
  for (std::size_t i = 0; i < sums.size(); ++i) out[i] = sums[i] / max_sum;
  return out;
}

double consumption_degree(std::int64_t d_ej, std::int64_t d_e, std::int64_t r_ej, std::int64_t r_e,
                          double cd_ej, double l_e, const BidWeights& w) {
  auto ratio_int = [](std::int64_t demand, std::int64_t budget, bool& over) -> double {
    if (demand == 0) return 0.0;
    if (budget <= 0 || demand > budget) {
      over = true;
      return 0.0;
    }
    return static_cast<double>(demand) / static_cast<double>(budget);
  };
  bool over = false;
  const double dr = ratio_int(d_ej, d_e, over);
  const double rr = ratio_int(r_ej, r_e, over);
  double cr = 0.0;
  if (cd_ej > 0.0) {
    if (l_e <= 0.0 || cd_ej > l_e)
      over = true;
    else
      cr = cd_ej / l_e;
  }
  if (over) return 1.0;
  const double s = w.alpha * dr + w.beta * rr + w.gamma * cr;
  return s * s;
}

double bundle_price(const std::vector<BundleItem>& items, const BidWeights& w) {
  double v = 0.0;
  for (const auto& item : items)
    v += w.lambda1 * (1.0 - item.conflict_degree) + w.lambda2 * (1.0 - item.consumption_degree);
  return v;
}

Bundle build_bundle(const World& world, const Resource& res, const std::vector<Task>& announced,
                    const BidWeights& w) {
  Bundle bundle;
  bundle.bidder_id = res.id;

  std::vector<Task> order = announced;
  std::sort(order.begin(), order.end(), [](const Task& a, const Task& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.window_start != b.window_start) return a.window_start < b.window_start;
    return a.id < b.id;
  });

  Resource working = res;
  for (const Task& task : order) {
    InsertionResult ir = can_insert(world, working, task);
    if (!ir.feasible) continue;

    BundleItem item;
    item.task_id = task.id;
    item.duration_s = task.required_duration;
    item.poweron = 1;
    item.flight_km = res.kind == ResourceKind::satellite ? 0.0 : ir.added_distance;
    item.insertion = ir;

    ConflictSet conflicts = conflicting_tasks(world, res, task);
    for (TaskId cid : conflicts.tasks)
      if (const Task* ct = world.find_task(cid)) item.conflict_weights.push_back(ct->weight);
    item.conflict_weight_sum = 0.0;
    for (double cw : item.conflict_weights) item.conflict_weight_sum += cw;

    // f_ej is priced against the bid-time budgets of the original schedule.
    item.consumption_degree =
        consumption_degree(item.duration_s, res.duration_remaining, item.poweron, res.poweron_remaining,
                           item.flight_km, res.kind == ResourceKind::satellite ? 0.0 : res.endurance_remaining, w);

    ScheduledTask st;
    st.task_id = task.id;
    st.resource_id = res.id;
    st.exec_start = ir.exec_start;
    st.exec_end = ir.exec_start + task.required_duration;
    st.flight_distance_in = item.flight_km;
    st.state = TaskState::pending;
    commit_scheduled(working, st);

    bundle.items.push_back(std::move(item));
  }

  std::vector<double> sums;
  sums.reserve(bundle.items.size());
  for (const auto& item : bundle.items) sums.push_back(item.conflict_weight_sum);
  const std::vector<double> degrees = conflict_degrees(sums);
  for (std::size_t i = 0; i < bundle.items.size(); ++i) bundle.items[i].conflict_degree = degrees[i];

  bundle.price = bundle_price(bundle.items, w);
  for (const auto& st : working.schedule) bundle.resulting_sequence.push_back(st.task_id);
  return bundle;
}

}  // namespace obsnet
