#include "obsnet/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "obsnet/bidding.hpp"
#include "obsnet/feasibility.hpp"
#include "obsnet/rng.hpp"
#include "obsnet/work_meter.hpp"

namespace obsnet {

namespace {

std::vector<Task> ordered_tasks(const World& w, const std::vector<TaskId>& ids) {
  std::vector<Task> tasks;
  for (TaskId id : ids)
    if (const Task* t = w.find_task(id)) tasks.push_back(*t);
  std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.id < b.id;
  });
  return tasks;
}

// Single-task bid: price from the pricing model, insertion from the live
// schedule. Infeasible resources do not bid.
struct SingleBid {
  bool feasible = false;
  double price = 0.0;
  InsertionResult insertion;
};

SingleBid single_task_bid(const World& w, const Resource& res, const Task& task) {
  SingleBid bid;
  InsertionResult ir = can_insert(w, res, task);
  if (!ir.feasible) return bid;
  BundleItem item;
  item.task_id = task.id;
  item.duration_s = task.required_duration;
  item.poweron = 1;
  item.flight_km = res.kind == ResourceKind::satellite ? 0.0 : ir.added_distance;
  item.insertion = ir;
  item.conflict_weight_sum = 0.0;  // feasible insertion means no conflicts
  item.conflict_degree = 0.0;
  item.consumption_degree =
      consumption_degree(item.duration_s, res.duration_remaining, 1, res.poweron_remaining, item.flight_km,
                         res.kind == ResourceKind::satellite ? 0.0 : res.endurance_remaining, w.config.weights);
  bid.feasible = true;
  bid.price = bundle_price({item}, w.config.weights);
  bid.insertion = ir;
  return bid;
}

void commit_task(Resource& res, const Task& task, const InsertionResult& ir,
                 AllocationScheme& scheme, const std::string& method) {
  ScheduledTask st;
  st.task_id = task.id;
  st.resource_id = res.id;
  st.exec_start = ir.exec_start;
  st.exec_end = ir.exec_start + task.required_duration;
  st.flight_distance_in = res.kind == ResourceKind::satellite ? 0.0 : ir.added_distance;
  st.state = TaskState::pending;
  commit_scheduled(res, st);
  scheme.assignments.push_back(st);
  scheme.provenance[task.id] = {0, method, 0};
}

int kind_rank(ResourceKind k) {
  switch (k) {
    case ResourceKind::airship: return 0;
    case ResourceKind::uav: return 1;
    case ResourceKind::satellite: return 2;
  }
  return 3;
}

}  // namespace

AllocationScheme solve_ssa(World& w, const std::vector<TaskId>& ids, const BaselineParams&) {
  AllocationScheme scheme;
  for (const Task& task : ordered_tasks(w, ids)) {
    Resource* best = nullptr;
    SingleBid best_bid;
    for (auto& res : w.resources) {
      if (res.failed) continue;
      SingleBid bid = single_task_bid(w, res, task);
      if (!bid.feasible) continue;
      if (!best || bid.price > best_bid.price + 1e-12) {
        best = &res;
        best_bid = bid;
      }
    }
    if (best)
      commit_task(*best, task, best_bid.insertion, scheme, "ssa");
    else
      scheme.unassigned.insert(task.id);
  }
  return scheme;
}

AllocationScheme solve_aus(World& w, const std::vector<TaskId>& ids, const BaselineParams&) {
  AllocationScheme scheme;
  for (const Task& task : ordered_tasks(w, ids)) {
    Resource* best = nullptr;
    SingleBid best_bid;
    int best_rank = std::numeric_limits<int>::max();
    for (auto& res : w.resources) {
      if (res.failed) continue;
      const int rank = kind_rank(res.kind);
      if (best && rank > best_rank) continue;
      SingleBid bid = single_task_bid(w, res, task);
      if (!bid.feasible) continue;
      if (!best || rank < best_rank || bid.price > best_bid.price + 1e-12) {
        best = &res;
        best_bid = bid;
        best_rank = rank;
      }
    }
    if (best)
      commit_task(*best, task, best_bid.insertion, scheme, "aus");
    else
      scheme.unassigned.insert(task.id);
  }
  return scheme;
}

AllocationScheme solve_exact_central(World& w, const std::vector<TaskId>& ids, const BaselineParams& params) {
  if (ids.size() > params.max_exact_tasks)
    throw CentralSizeError("centralized exact model refuses " + std::to_string(ids.size()) +
                           " tasks (cap " + std::to_string(params.max_exact_tasks) + ")");

  AllocationScheme scheme;
  std::vector<Task> announced;
  for (TaskId id : ids)
    if (const Task* t = w.find_task(id)) announced.push_back(*t);
  std::sort(announced.begin(), announced.end(), [](const Task& a, const Task& b) { return a.id < b.id; });
  if (announced.empty()) return scheme;

  // Candidate bundles: per resource the greedy bundle plus all single-task
  // bundles, keeping the instance polynomial in |T|.
  struct Candidate {
    ResourceId resource_id;
    std::vector<TaskId> tasks;
    double price;
  };
  std::vector<Candidate> candidates;
  std::vector<std::set<TaskId>> gt;
  std::vector<double> vt;
  for (const auto& res : w.resources) {
    if (res.failed) continue;
    Bundle greedy = build_bundle(w, res, announced, w.config.weights);
    if (!greedy.items.empty()) {
      Candidate c;
      c.resource_id = res.id;
      for (const auto& item : greedy.items) c.tasks.push_back(item.task_id);
      c.price = greedy.price;
      gt.emplace_back(c.tasks.begin(), c.tasks.end());
      vt.push_back(c.price);
      candidates.push_back(std::move(c));
    }
    for (const Task& task : announced) {
      SingleBid bid = single_task_bid(w, res, task);
      if (!bid.feasible) continue;
      candidates.push_back({res.id, {task.id}, bid.price});
      gt.push_back({task.id});
      vt.push_back(bid.price);
    }
  }

  WdpInstance inst = make_instance(std::move(gt), std::move(vt));
  WdpSolution sol = solve_exact(inst, params.exact);

  std::set<TaskId> assigned;
  for (std::size_t e = 0; e < candidates.size(); ++e) {
    if (!sol.selected[e]) continue;
    Resource* res = w.find_resource(candidates[e].resource_id);
    for (TaskId tid : candidates[e].tasks) {
      const Task* task = w.find_task(tid);
      InsertionResult ir = can_insert(w, *res, *task);
      if (!ir.feasible) continue;  // jointly infeasible with earlier winners
      commit_task(*res, *task, ir, scheme, "exact");
      assigned.insert(tid);
    }
  }
  for (const Task& task : announced)
    if (!assigned.count(task.id)) scheme.unassigned.insert(task.id);
  return scheme;
}

AllocationScheme solve_tca(World& w, const std::vector<TaskId>& ids, std::size_t k,
                           const BaselineParams& params) {
  AllocationScheme scheme;
  std::vector<TaskId> sorted_ids = ids;
  std::sort(sorted_ids.begin(), sorted_ids.end());
  if (sorted_ids.empty()) return scheme;

  std::vector<Point> points;
  for (TaskId id : sorted_ids) points.push_back(w.find_task(id)->location);
  KmeansResult clusters = kmeans(points, k, params.seed);

  struct ClusterBucket {
    Point centroid;
    std::vector<TaskId> tasks;
  };
  std::vector<ClusterBucket> buckets(clusters.k);
  for (std::size_t c = 0; c < clusters.k; ++c) buckets[c].centroid = clusters.centroids[c];
  for (std::size_t i = 0; i < sorted_ids.size(); ++i)
    buckets[clusters.assignment[i]].tasks.push_back(sorted_ids[i]);

  std::sort(buckets.begin(), buckets.end(), [](const ClusterBucket& a, const ClusterBucket& b) {
    if (a.centroid.x != b.centroid.x) return a.centroid.x < b.centroid.x;
    return a.centroid.y < b.centroid.y;
  });

  for (const auto& bucket : buckets) {
    if (bucket.tasks.empty()) continue;
    AllocationScheme part = solve_exact_central(w, bucket.tasks, params);
    for (auto& st : part.assignments) scheme.assignments.push_back(st);
    for (TaskId t : part.unassigned) scheme.unassigned.insert(t);
    for (auto& [tid, prov] : part.provenance) scheme.provenance[tid] = {0, "tca", 0};
  }
  return scheme;
}

KmeansResult kmeans(const std::vector<Point>& points, std::size_t k, std::uint64_t seed) {
  if (points.empty()) throw std::invalid_argument("kmeans requires at least one point");
  if (k < 1) throw std::invalid_argument("kmeans requires k >= 1");
  KmeansResult result;
  result.k = std::min(k, points.size());

  // Farthest-point seeding from a seeded first pick.
  Rng rng(mix_seed(seed, 0x6b6d65616e73ull));
  std::vector<std::size_t> centers{rng.pick_index(points.size())};
  while (centers.size() < result.k) {
    std::size_t farthest = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t c : centers) nearest = std::min(nearest, travel_distance(points[i], points[c]));
      if (nearest > best + 1e-12) {
        best = nearest;
        farthest = i;
      }
    }
    centers.push_back(farthest);
  }
  for (std::size_t c : centers) result.centroids.push_back(points[c]);

  result.assignment.assign(points.size(), 0);
  for (int iter = 0; iter < 50; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      work::add(1);
      std::size_t best_c = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < result.k; ++c) {
        const double d = travel_distance(points[i], result.centroids[c]);
        if (d < best_d - 1e-12) {
          best_d = d;
          best_c = c;
        }
      }
      if (result.assignment[i] != best_c) {
        result.assignment[i] = best_c;
        changed = true;
      }
    }

    std::vector<Point> sums(result.k, Point{0.0, 0.0});
    std::vector<std::size_t> counts(result.k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      sums[result.assignment[i]].x += points[i].x;
      sums[result.assignment[i]].y += points[i].y;
      ++counts[result.assignment[i]];
    }
    for (std::size_t c = 0; c < result.k; ++c) {
      if (counts[c] == 0) {
        // Re-seed an empty cluster from the point farthest from its centroid.
        std::size_t farthest = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
          const double d = travel_distance(points[i], result.centroids[result.assignment[i]]);
          if (d > best + 1e-12) {
            best = d;
            farthest = i;
          }
        }
        result.centroids[c] = points[farthest];
        result.assignment[farthest] = c;
        changed = true;
        continue;
      }
      result.centroids[c] = {sums[c].x / static_cast<double>(counts[c]),
                             sums[c].y / static_cast<double>(counts[c])};
    }
    if (!changed) break;
  }
  return result;
}

}  // namespace obsnet
