#include "doctest.h"
#include "helpers.hpp"
#include "obsnet/mca.hpp"
#include "obsnet/runner.hpp"
#include "oracles.hpp"

using namespace obsnet;
using namespace obsnet::testing;

TEST_SUITE_BEGIN("mca");

namespace {

// One center with the initiator and a neighbor, a second center with ample
// capacity, a third center with one airship.
World three_level_world(std::int64_t neighbor_duration = 10000) {
  World w = empty_world();
  add_resource(w, make_uav(0, 0, {0.0, 0.0}));                          // initiator
  add_resource(w, make_uav(1, 0, {5.0, 0.0}, 1000.0, neighbor_duration));  // neighbor
  add_resource(w, make_uav(2, 1, {1.0, 1.0}, 1000.0, 10000));
  add_resource(w, make_airship(3, 2, {2.0, 2.0}));
  refresh_neighbors(w);
  return w;
}

}  // namespace

TEST_CASE("resource failure reclaims pending work and escalates to the center") {
  World w = three_level_world();
  Resource& r = *w.find_resource(1);
  for (TaskId id = 0; id < 4; ++id) {
    Task t = add_task(w, make_task(id, {5.0, 0.0}, 0.5, 0, 21600, 50));
    InsertionResult ir = can_insert(w, r, t);
    REQUIRE(ir.feasible);
    ScheduledTask st;
    st.task_id = id;
    st.resource_id = r.id;
    st.exec_start = ir.exec_start;
    st.exec_end = ir.exec_start + 50;
    st.flight_distance_in = ir.added_distance;
    commit_scheduled(r, st);
  }
  const std::int64_t dur_before = r.duration_initial;

  DisturbanceEvent ev;
  ev.kind = DisturbanceEvent::Kind::resource_failure;
  ev.time = 10;
  ev.resource_id = 1;
  ReplanRequest req = handle_disturbance(w, ev);
  CHECK(req.tasks.size() == 4);
  CHECK_FALSE(req.initiator_resource.has_value());
  CHECK(req.initiator_center == 0);
  CHECK(req.entry_round == 2);
  CHECK(w.find_resource(1)->failed);
  CHECK(w.find_resource(1)->duration_remaining == dur_before);  // budgets restored
  CHECK(w.find_resource(1)->schedule.empty());
}

TEST_CASE("a blackout touching no schedule triggers nothing") {
  World w = three_level_world();
  DisturbanceEvent ev;
  ev.kind = DisturbanceEvent::Kind::weather_blackout;
  ev.time = 0;
  ev.region_center = {100.0, 100.0};
  ev.region_radius_km = 10.0;
  ev.interval_start = 0;
  ev.interval_end = 1000;
  ReplanRequest req = handle_disturbance(w, ev);
  CHECK(req.tasks.empty());
}

TEST_CASE("unknown ids in events are rejected") {
  World w = three_level_world();
  DisturbanceEvent ev;
  ev.kind = DisturbanceEvent::Kind::resource_failure;
  ev.time = 0;
  ev.resource_id = 99;
  CHECK_THROWS_AS(handle_disturbance(w, ev), std::invalid_argument);
}

TEST_CASE("tasks fully absorbed by a neighbor stop after round one") {
  World w = three_level_world();
  std::vector<TaskId> ids;
  for (TaskId id = 0; id < 3; ++id) {
    add_task(w, make_task(id, {5.0, 0.5}, 0.5, 0, 21600, 50));
    ids.push_back(id);
  }
  ReplanRequest req;
  req.tasks = ids;
  req.initiator_resource = 0;
  req.initiator_center = 0;
  McaParams params;
  McaResult result = run_mca(w, ids, req, params);
  CHECK(result.scheme.unassigned.empty());
  REQUIRE(result.rounds.size() == 1);
  CHECK(result.rounds[0].level == 1);
  for (TaskId id : ids) {
    REQUIRE(result.scheme.provenance.count(id));
    CHECK(result.scheme.provenance.at(id).round == 1);
  }
}

TEST_CASE("an initiator without neighbors skips round one") {
  World w = three_level_world();
  w.find_resource(1)->position = {190.0, 190.0};  // out of comm radius
  refresh_neighbors(w);
  std::vector<TaskId> ids{0};
  add_task(w, make_task(0, {1.0, 1.0}, 0.5, 0, 21600, 50));
  ReplanRequest req;
  req.tasks = ids;
  req.initiator_resource = 0;
  req.initiator_center = 0;
  McaResult result = run_mca(w, ids, req, McaParams{});
  REQUIRE_FALSE(result.rounds.empty());
  CHECK(result.rounds.front().level == 2);
}

TEST_CASE("per-round allocation counts match the capacity oracle") {
  // neighbor capacity is exactly two 100 s tasks; the center absorbs the rest
  World w = three_level_world(250);
  std::vector<TaskId> ids;
  std::vector<Task> tasks;
  for (TaskId id = 0; id < 20; ++id) {
    Task t = add_task(w, make_task(id, {5.0, 0.0}, 0.5 + 0.01 * static_cast<double>(id), 0, 21600, 100));
    ids.push_back(id);
    tasks.push_back(t);
  }
  const std::size_t neighbor_capacity = oracle_max_insertable(w, *w.find_resource(1), tasks);
  CHECK(neighbor_capacity == 2);

  ReplanRequest req;
  req.tasks = ids;
  req.initiator_resource = 0;
  req.initiator_center = 0;
  McaResult result = run_mca(w, ids, req, McaParams{});

  std::size_t round1 = 0, round2 = 0, round3 = 0;
  for (const auto& [tid, prov] : result.scheme.provenance) {
    if (prov.round == 1) ++round1;
    if (prov.round == 2) ++round2;
    if (prov.round == 3) ++round3;
  }
  CHECK(round1 == neighbor_capacity);
  CHECK(round2 == 20 - neighbor_capacity);  // the big center resource takes the rest
  CHECK(round3 == 0);
  CHECK(result.scheme.unassigned.empty());
  CHECK(validate_world(w).empty());
}

TEST_CASE("remaining sets shrink monotonically across rounds") {
  World w = three_level_world(250);
  std::vector<TaskId> ids;
  for (TaskId id = 0; id < 10; ++id) {
    add_task(w, make_task(id, {5.0, 0.0}, 0.5, 0, 21600, 100));
    ids.push_back(id);
  }
  ReplanRequest req;
  req.tasks = ids;
  req.initiator_resource = 0;
  req.initiator_center = 0;
  McaResult result = run_mca(w, ids, req, McaParams{});
  std::size_t prev = ids.size();
  for (const auto& round : result.rounds) {
    CHECK(round.remaining.size() <= prev);
    prev = round.remaining.size();
  }
  // every input task is either assigned with provenance or unassigned
  for (TaskId id : ids) {
    const bool assigned = result.scheme.provenance.count(id) > 0;
    const bool unassigned = result.scheme.unassigned.count(id) > 0;
    CHECK(assigned != unassigned);
  }
}

TEST_CASE("composite center bids") {
  McaParams params;
  SUBCASE("a single capable resource passes its bundle through") {
    World w = empty_world();
    add_resource(w, make_uav(0, 0, {0.0, 0.0}));
    add_resource(w, make_uav(1, 1, {3.0, 0.0}));
    refresh_neighbors(w);
    std::vector<Task> tasks{add_task(w, make_task(7, {3.0, 1.0}, 0.5, 0, 21600, 60))};
    TaskDocument doc = announce(w, 0, tasks, ContractType::inter_center_round, 60);
    Bid bid = center_composite_bid(w, *w.find_center(1), doc, params);
    REQUIRE(bid.document.bid);
    CHECK(bid.tasks == std::set<TaskId>{7});
    REQUIRE(bid.parts.size() == 1);
    CHECK(bid.parts[0].bidder_id == 1);
  }

  SUBCASE("disjoint-capability resources bid their union at the summed price") {
    World w = empty_world();
    add_resource(w, make_uav(0, 0, {0.0, 0.0}));
    Resource optical_only = make_uav(1, 1, {3.0, 0.0});
    optical_only.bands = {Band::optical};
    add_resource(w, optical_only);
    Resource ir_only = make_uav(2, 1, {4.0, 0.0});
    ir_only.bands = {Band::infrared};
    add_resource(w, ir_only);
    refresh_neighbors(w);
    std::vector<Task> tasks{add_task(w, make_task(7, {3.0, 1.0}, 0.5, 0, 21600, 60, Band::optical)),
                            add_task(w, make_task(8, {4.0, 1.0}, 0.5, 0, 21600, 60, Band::infrared))};
    TaskDocument doc = announce(w, 0, tasks, ContractType::inter_center_round, 60);
    Bid bid = center_composite_bid(w, *w.find_center(1), doc, params);
    REQUIRE(bid.document.bid);
    CHECK(bid.tasks == std::set<TaskId>{7, 8});
    CHECK(bid.parts.size() == 2);
    double sum = 0.0;
    for (const auto& part : bid.parts) sum += part.price;
    CHECK(bid.price == doctest::Approx(sum));
  }

  SUBCASE("conflicting internal bundles resolve to the exact-WDP winner") {
    World w = empty_world();
    add_resource(w, make_uav(0, 0, {0.0, 0.0}));
    add_resource(w, make_uav(1, 1, {3.0, 0.0}, 1000.0, 60));   // capacity one task
    add_resource(w, make_uav(2, 1, {10.0, 0.0}, 1000.0, 60));  // farther, lower price
    refresh_neighbors(w);
    std::vector<Task> tasks{add_task(w, make_task(7, {3.0, 1.0}, 0.5, 3600, 21600, 60))};
    TaskDocument doc = announce(w, 0, tasks, ContractType::inter_center_round, 60);
    Bid bid = center_composite_bid(w, *w.find_center(1), doc, params);
    REQUIRE(bid.document.bid);
    REQUIRE(bid.parts.size() == 1);
    CHECK(bid.parts[0].bidder_id == 1);  // nearer bidder consumes less, prices higher
  }
}

TEST_CASE("third round reaches peer centers") {
  // initiator center has no capacity at all; a peer airship must take over
  World w = empty_world();
  add_resource(w, make_uav(0, 0, {0.0, 0.0}, 1000.0, 0));  // no duration budget
  add_resource(w, make_airship(1, 1, {10.0, 10.0}));
  refresh_neighbors(w);
  std::vector<TaskId> ids{0};
  add_task(w, make_task(0, {12.0, 10.0}, 0.5, 0, 21600, 60));
  ReplanRequest req;
  req.tasks = ids;
  req.initiator_resource = 0;
  req.initiator_center = 0;
  McaResult result = run_mca(w, ids, req, McaParams{});
  REQUIRE(result.scheme.provenance.count(0));
  CHECK(result.scheme.provenance.at(0).round == 3);
  CHECK(w.find_resource(1)->schedule.size() == 1);
  CHECK(validate_world(w).empty());
}

TEST_SUITE_END();
