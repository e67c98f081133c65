#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "obsnet/model.hpp"
#include "obsnet/wdp.hpp"

namespace obsnet {

struct BaselineParams {
  ExactParams exact;
  std::size_t max_exact_tasks = 400;  // centralized model refuses above this
  std::uint64_t seed = 0;
};

class CentralSizeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Sequential single-item auction: tasks in weight-descending order, each to
// the highest single-task bidder, committed immediately.
AllocationScheme solve_ssa(World& world, const std::vector<TaskId>& tasks, const BaselineParams& params);

// Class-priority allocation: airship, then UAV, then satellite; price decides
// only within a class.
AllocationScheme solve_aus(World& world, const std::vector<TaskId>& tasks, const BaselineParams& params);

// Centralized set-packing model solved exactly: every resource contributes
// its greedy bundle plus all single-task bundles; winners execute. Serves as
// the MCP/BCP stand-in and the acceptance oracle.
AllocationScheme solve_exact_central(World& world, const std::vector<TaskId>& tasks,
                                     const BaselineParams& params);

// Task-clustering allocation: k-means on task locations, clusters handled by
// the centralized exact model in centroid-x order against the evolving world.
AllocationScheme solve_tca(World& world, const std::vector<TaskId>& tasks, std::size_t k,
                           const BaselineParams& params);

struct KmeansResult {
  std::vector<std::size_t> assignment;  // point index -> cluster
  std::vector<Point> centroids;
  std::size_t k = 0;
};

// Lloyd iterations with farthest-point seeding; deterministic under seed.
// k larger than the point count is reduced with a warning on the result.
KmeansResult kmeans(const std::vector<Point>& points, std::size_t k, std::uint64_t seed);

}  // namespace obsnet
