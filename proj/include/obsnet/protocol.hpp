#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "obsnet/bidding.hpp"
#include "obsnet/model.hpp"
#include "obsnet/trace.hpp"
#include "obsnet/wdp.hpp"

namespace obsnet {

enum class ContractType { neighbor_round, center_round, inter_center_round };

const char* to_string(ContractType t);

struct TaskInfoEntry {
  TaskId id = 0;
  std::string name;
  std::int64_t window_start = 0;
  std::int64_t window_end = 0;
  std::int64_t duration_s = 0;  // execution time
  Point location;
};

// Tender announcement wire message.
struct TaskDocument {
  ContractId contract_id = 0;
  ContractType contract_type = ContractType::neighbor_round;
  std::vector<TaskInfoEntry> task_info;
  std::vector<std::pair<Band, double>> task_requirement;  // aligned with task_info
  std::vector<double> task_weight;                        // aligned with task_info
  std::int64_t expire_time = 0;                           // bid deadline, s
  std::pair<double, double> quote_requirement{0.0, 0.0};  // [min_price, max_price]
  std::int64_t tenderer_id = 0;
};

struct ExecutionEntry {
  TaskId task_id = 0;
  std::int64_t exec_start = 0;
  double resolution_m = 0.0;
  Band band = Band::optical;
};

// Bid response wire message.
struct BidDocument {
  ContractId contract_id = 0;
  bool bid = false;
  std::vector<ExecutionEntry> execution_scheme;
  double bid_price = 0.0;
  std::vector<std::vector<TaskId>> task_sequences;
  std::map<std::string, bool> indicators_status;
};

// One bid as handled by the awarding stage: resources answer with a single
// bundle, planning centers with a composite of internally winning bundles.
struct Bid {
  std::int64_t bidder_id = 0;
  bool is_center = false;
  std::vector<Bundle> parts;  // one bundle per executing resource
  double price = 0.0;
  std::set<TaskId> tasks;
  BidDocument document;
};

// Bidders may run their own internal tenders while responding (planning
// centers do), so they receive the live world.
struct BidderHandle {
  std::int64_t id = 0;
  std::function<Bid(World&, const TaskDocument&)> respond;
};

struct Contract {
  ContractId contract_id = 0;
  std::vector<Bid> winners;  // bidder-id order
  std::int64_t signed_at = 0;
};

struct AwardPolicy {
  enum class Solver { fls, exact } solver = Solver::fls;
  FlsParams fls;
  ExactParams exact;
};

// Reconstructs announced Task values from the wire document.
std::vector<Task> document_tasks(const TaskDocument& doc);

// Deterministic per-link latency in seconds, drawn from the scenario seed.
double link_latency_s(const World& world, std::int64_t tenderer, std::int64_t bidder);

TaskDocument announce(World& world, std::int64_t tenderer_id, const std::vector<Task>& tasks,
                      ContractType type, std::int64_t deadline, Trace* trace = nullptr);

// Standard resource bidder: greedy bundle over the announced tasks. Prices
// outside the quote range are clamped and flagged in indicators_status.
Bid make_resource_bid(const World& world, const Resource& res, const TaskDocument& doc);

struct CollectedBids {
  std::vector<Bid> bids;               // bid=true, bidder-id order
  std::vector<BidDocument> documents;  // every response, bidder-id order
};

CollectedBids collect_bids(World& world, const TaskDocument& doc,
                           const std::vector<BidderHandle>& bidders, Trace* trace = nullptr);

struct AwardResult {
  Contract contract;
  std::set<TaskId> unallocated;
  double value = 0.0;
};

AwardResult award(World& world, const TaskDocument& doc, const std::vector<Bid>& bids,
                  const AwardPolicy& policy, Trace* trace = nullptr);

struct ExecuteResult {
  bool voided = false;
  std::vector<ScheduledTask> committed;
  std::set<TaskId> returned;  // tasks handed back on voiding
};

// Revalidates and commits the awarded bundles. Idempotent per contract id;
// any stale bundle voids the whole contract.
ExecuteResult execute_contract(World& world, const Contract& contract, Trace* trace = nullptr);

}  // namespace obsnet
