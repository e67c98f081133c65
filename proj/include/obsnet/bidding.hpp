#pragma once

#include <cstdint>
#include <vector>

#include "obsnet/feasibility.hpp"
#include "obsnet/model.hpp"

namespace obsnet {

struct BundleItem {
  TaskId task_id = 0;
  std::vector<double> conflict_weights;  // W_ej
  double conflict_weight_sum = 0.0;      // SW_ej
  double conflict_degree = 0.0;          // g_ej
  std::int64_t duration_s = 0;           // D_ej
  std::int64_t poweron = 0;              // R_ej
  double flight_km = 0.0;                // cd_ej
  double consumption_degree = 0.0;       // f_ej
  InsertionResult insertion;
};

struct Bundle {
  ResourceId bidder_id = 0;
  std::vector<BundleItem> items;                // BT_e
  double price = 0.0;                           // V_e
  std::vector<TaskId> resulting_sequence;       // bidder's schedule after acceptance
};

// g_ej = SW_ej / max_j SW_ej; all zero when no item conflicts at all.
std::vector<double> conflict_degrees(const std::vector<double>& conflict_weight_sums);

// f_ej per the squared weighted-ratio model; 1 when any demand exceeds its
// remaining budget. A zero budget with zero demand contributes 0.
double consumption_degree(std::int64_t demand_duration_s, std::int64_t remaining_duration_s,
                          std::int64_t demand_poweron, std::int64_t remaining_poweron,
                          double demand_flight_km, double remaining_flight_km, const BidWeights& w);

// V_e = sum over items of lambda1*(1-g) + lambda2*(1-f).
double bundle_price(const std::vector<BundleItem>& items, const BidWeights& w);

// Greedy bundle construction: announced tasks sorted by weight descending
// (ties: earlier window start, then lower id) and accepted through tentative
// insertion on a working copy of the schedule. Conflict weights are taken
// against the original schedule.
Bundle build_bundle(const World& world, const Resource& res, const std::vector<Task>& announced,
                    const BidWeights& w);

}  // namespace obsnet
