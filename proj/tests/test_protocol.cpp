#include "doctest.h"
#include "helpers.hpp"
#include "obsnet/protocol.hpp"

using namespace obsnet;
using namespace obsnet::testing;

TEST_SUITE_BEGIN("protocol");

namespace {

World two_bidder_world() {
  World w = empty_world();
  add_resource(w, make_uav(0, 0, {0.0, 0.0}));
  add_resource(w, make_uav(1, 0, {10.0, 0.0}));
  refresh_neighbors(w);
  return w;
}

std::vector<Task> sample_tasks(World& w, int n) {
  std::vector<Task> tasks;
  for (TaskId id = 0; id < n; ++id)
    tasks.push_back(add_task(w, make_task(100 + id, {5.0 + id, 0.0}, 0.5, 0, 7200, 60)));
  return tasks;
}

BidderHandle resource_handle(ResourceId rid) {
  return {rid, [rid](World& world, const TaskDocument& d) {
            return make_resource_bid(world, *world.find_resource(rid), d);
          }};
}

}  // namespace

TEST_CASE("announce builds a well-formed document") {
  World w = two_bidder_world();
  auto tasks = sample_tasks(w, 3);
  TaskDocument doc = announce(w, 0, tasks, ContractType::neighbor_round, 60);
  CHECK(doc.task_info.size() == 3);
  CHECK(doc.task_requirement.size() == 3);
  CHECK(doc.task_weight.size() == 3);
  CHECK(doc.quote_requirement.second == doctest::Approx(3.0));

  TaskDocument doc2 = announce(w, 0, tasks, ContractType::neighbor_round, 60);
  CHECK(doc2.contract_id != doc.contract_id);

  CHECK_THROWS_AS(announce(w, 0, {}, ContractType::neighbor_round, 60), std::invalid_argument);
  CHECK_THROWS_AS(announce(w, 0, tasks, ContractType::neighbor_round, w.horizon_s + 1),
                  std::invalid_argument);
}

TEST_CASE("collect_bids gathers feasible bidders in id order") {
  World w = two_bidder_world();
  auto tasks = sample_tasks(w, 2);
  TaskDocument doc = announce(w, 0, tasks, ContractType::neighbor_round, 60);
  CollectedBids collected = collect_bids(w, doc, {resource_handle(1), resource_handle(0)});
  REQUIRE(collected.bids.size() == 2);
  CHECK(collected.bids[0].bidder_id == 0);
  CHECK(collected.bids[1].bidder_id == 1);
  CHECK(collected.documents.size() == 2);
}

TEST_CASE("bidders that cannot serve any task are recorded as bid=false") {
  World w = two_bidder_world();
  World w2 = w;
  std::vector<Task> tasks;
  tasks.push_back(add_task(w2, make_task(200, {5.0, 0.0}, 0.5, 0, 7200, 60, Band::sar)));
  TaskDocument doc = announce(w2, 0, tasks, ContractType::neighbor_round, 60);
  CollectedBids collected = collect_bids(w2, doc, {resource_handle(0), resource_handle(1)});
  CHECK(collected.bids.empty());
  REQUIRE(collected.documents.size() == 2);
  CHECK_FALSE(collected.documents[0].bid);
  CHECK(collected.documents[0].bid_price == 0.0);
  CHECK(collected.documents[0].execution_scheme.empty());
}

TEST_CASE("late bids are dropped by the deadline filter") {
  World w = two_bidder_world();
  w.config.max_link_latency_s = 40.0;
  auto tasks = sample_tasks(w, 2);
  // expire_time equal to the clock leaves no room for any positive latency
  TaskDocument doc = announce(w, 0, tasks, ContractType::neighbor_round, 0);
  CollectedBids collected = collect_bids(w, doc, {resource_handle(0), resource_handle(1)});
  std::size_t expected = 0;
  for (ResourceId rid : {0, 1})
    if (link_latency_s(w, 0, rid) <= 0.0) ++expected;
  CHECK(collected.bids.size() == expected);

  w.config.max_link_latency_s = 0.0;
  TaskDocument doc2 = announce(w, 0, tasks, ContractType::neighbor_round, 0);
  CHECK(collect_bids(w, doc2, {resource_handle(0), resource_handle(1)}).bids.size() == 2);
}

TEST_CASE("award on an empty bid set leaves all tasks unallocated") {
  World w = two_bidder_world();
  auto tasks = sample_tasks(w, 2);
  TaskDocument doc = announce(w, 0, tasks, ContractType::neighbor_round, 60);
  AwardResult result = award(w, doc, {}, AwardPolicy{});
  CHECK(result.contract.winners.empty());
  CHECK(result.unallocated.size() == 2);
}

TEST_CASE("award selects the value-maximizing conflict-free bids") {
  World w = two_bidder_world();
  auto tasks = sample_tasks(w, 4);
  TaskDocument doc = announce(w, 0, tasks, ContractType::neighbor_round, 60);
  // hand-crafted bids mirroring the four-bid winner determination example
  auto fake_bid = [](std::int64_t id, std::set<TaskId> ts, double price) {
    Bid b;
    b.bidder_id = id;
    b.tasks = std::move(ts);
    b.price = price;
    b.document.bid = true;
    b.document.bid_price = price;
    return b;
  };
  std::vector<Bid> bids{fake_bid(0, {100, 101}, 1.5), fake_bid(1, {101, 102}, 1.4),
                        fake_bid(2, {102}, 0.6), fake_bid(3, {103}, 0.3)};
  AwardPolicy policy;
  policy.solver = AwardPolicy::Solver::exact;
  AwardResult result = award(w, doc, bids, policy);
  CHECK(result.value == doctest::Approx(2.4));
  CHECK(result.unallocated.empty());
  REQUIRE(result.contract.winners.size() == 3);
}

TEST_CASE("execute commits, is idempotent, and voids on drift") {
  World w = two_bidder_world();
  auto tasks = sample_tasks(w, 2);
  TaskDocument doc = announce(w, 0, tasks, ContractType::neighbor_round, 60);
  CollectedBids collected = collect_bids(w, doc, {resource_handle(0), resource_handle(1)});
  AwardResult awarded = award(w, doc, collected.bids, AwardPolicy{});
  REQUIRE_FALSE(awarded.contract.winners.empty());

  SUBCASE("schedules grow by the awarded counts and replay is a no-op") {
    ExecuteResult exec = execute_contract(w, awarded.contract);
    CHECK_FALSE(exec.voided);
    CHECK(exec.committed.size() == 2 - awarded.unallocated.size());
    const auto before = all_assignments(w).size();
    ExecuteResult again = execute_contract(w, awarded.contract);
    CHECK(again.committed.empty());
    CHECK(all_assignments(w).size() == before);
  }

  SUBCASE("a failed winner voids the contract and returns the tasks") {
    w.find_resource(awarded.contract.winners[0].bidder_id)->failed = true;
    ExecuteResult exec = execute_contract(w, awarded.contract);
    CHECK(exec.voided);
    CHECK_FALSE(exec.returned.empty());
    CHECK(all_assignments(w).empty());
  }
}

TEST_CASE("prices outside the quote range are clamped and flagged") {
  World w = two_bidder_world();
  auto tasks = sample_tasks(w, 2);
  TaskDocument doc = announce(w, 0, tasks, ContractType::neighbor_round, 60);
  doc.quote_requirement = {0.0, 0.5};  // tighter than the analytic range
  Bid bid = make_resource_bid(w, *w.find_resource(0), doc);
  REQUIRE(bid.document.bid);
  CHECK(bid.price == doctest::Approx(0.5));
  CHECK_FALSE(bid.document.indicators_status.at("price_in_quote_range"));
}

TEST_SUITE_END();
