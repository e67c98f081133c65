#include "doctest.h"
#include "helpers.hpp"
#include "obsnet/bidding.hpp"
#include "obsnet/rng.hpp"

using namespace obsnet;
using namespace obsnet::testing;

TEST_SUITE_BEGIN("bidding");

TEST_CASE("conflict degrees normalize by the bundle maximum") {
  CHECK(conflict_degrees({1.0, 0.5}) == std::vector<double>{1.0, 0.5});
  CHECK(conflict_degrees({0.0, 0.0, 0.0}) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(conflict_degrees({0.3}) == std::vector<double>{1.0});
  CHECK(conflict_degrees({}).empty());
}

TEST_CASE("conflict degrees are scale invariant") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> sums;
    const std::int64_t n = rng.uniform_int(1, 6);
    for (std::int64_t i = 0; i < n; ++i) sums.push_back(rng.uniform(0.0, 3.0));
    const double c = rng.uniform(0.1, 10.0);
    std::vector<double> scaled = sums;
    for (double& s : scaled) s *= c;
    const auto a = conflict_degrees(sums);
    const auto b = conflict_degrees(scaled);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("consumption degree follows the squared weighted-ratio model") {
  const BidWeights w;
  SUBCASE("hand-evaluated interior case") {
    // ratios 0.5, 0.25, 0.25 with weights 1/3 give (1/3)^2
    CHECK(consumption_degree(50, 100, 1, 4, 25.0, 100.0, w) == doctest::Approx(1.0 / 9.0));
  }
  SUBCASE("zero consumption") { CHECK(consumption_degree(0, 100, 0, 4, 0.0, 100.0, w) == 0.0); }
  SUBCASE("over-budget demand saturates to one") {
    CHECK(consumption_degree(200, 100, 1, 4, 0.0, 100.0, w) == 1.0);
  }
  SUBCASE("positive demand on a zero budget saturates to one") {
    CHECK(consumption_degree(10, 0, 0, 4, 0.0, 100.0, w) == 1.0);
    CHECK(consumption_degree(0, 100, 0, 4, 5.0, 0.0, w) == 1.0);
  }
  SUBCASE("zero demand on a zero budget contributes nothing") {
    CHECK(consumption_degree(0, 0, 0, 0, 0.0, 0.0, w) == 0.0);
  }
}

TEST_CASE("bundle price sums the per-item terms") {
  const BidWeights w;
  BundleItem item;
  item.conflict_degree = 0.2;
  item.consumption_degree = 0.1;
  CHECK(bundle_price({item}, w) == doctest::Approx(0.85));
  item.conflict_degree = 1.0;
  item.consumption_degree = 1.0;
  CHECK(bundle_price({item}, w) == doctest::Approx(0.0));
  CHECK(bundle_price({}, w) == 0.0);
}

TEST_CASE("price is monotone in the degrees") {
  const BidWeights w;
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<BundleItem> items(static_cast<std::size_t>(rng.uniform_int(1, 5)));
    for (auto& item : items) {
      item.conflict_degree = rng.uniform();
      item.consumption_degree = rng.uniform();
    }
    const double before = bundle_price(items, w);
    auto& target = items[rng.pick_index(items.size())];
    target.conflict_degree *= rng.uniform();
    target.consumption_degree *= rng.uniform();
    CHECK(bundle_price(items, w) >= before - 1e-12);
  }
}

TEST_CASE("build_bundle accepts a single feasible task") {
  World w = empty_world();
  Resource& r = add_resource(w, make_uav(0, 0, {0.0, 0.0}));
  Task t = add_task(w, make_task(1, {5.0, 0.0}, 0.5, 0, 3600, 60));
  Bundle b = build_bundle(w, r, {t}, w.config.weights);
  REQUIRE(b.items.size() == 1);
  CHECK(b.items[0].task_id == 1);
  CHECK(b.items[0].conflict_degree == 0.0);
  CHECK(b.price > 0.0);
}

TEST_CASE("mutually exclusive announcements keep the heavier task") {
  World w = empty_world();
  Resource& r = add_resource(w, make_uav(0, 0, {0.0, 0.0}));
  // same tight window, sites far enough apart that both cannot be chained
  Task heavy = add_task(w, make_task(1, {10.0, 0.0}, 0.9, 100, 200, 80));
  Task light = add_task(w, make_task(2, {10.0, 40.0}, 0.4, 100, 200, 80));
  Bundle b = build_bundle(w, r, {heavy, light}, w.config.weights);
  REQUIRE(b.items.size() == 1);
  CHECK(b.items[0].task_id == 1);
}

TEST_CASE("greedy order fills exactly the budgeted capacity") {
  World w = empty_world();
  Resource& r = add_resource(w, make_uav(0, 0, {0.0, 0.0}, 1000.0, 300));
  std::vector<Task> announced;
  const double weights[] = {0.9, 0.8, 0.7, 0.6, 0.5};
  for (TaskId id = 0; id < 5; ++id)
    announced.push_back(add_task(w, make_task(id, {0.0, 0.0}, weights[id], 0, 21600, 100)));
  Bundle b = build_bundle(w, r, announced, w.config.weights);
  REQUIRE(b.items.size() == 3);  // duration budget 300 admits three 100 s tasks
  CHECK(b.items[0].task_id == 0);
  CHECK(b.items[1].task_id == 1);
  CHECK(b.items[2].task_id == 2);
}

TEST_CASE("accepted bundles replay end to end on a fresh copy") {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    World w = empty_world();
    Resource& r = add_resource(w, make_uav(0, 0, {rng.uniform(0, 20), rng.uniform(0, 20)},
                                           rng.uniform(20, 80), rng.uniform_int(200, 800),
                                           rng.uniform_int(2, 6)));
    std::vector<Task> announced;
    const std::int64_t n = rng.uniform_int(1, 8);
    for (TaskId id = 0; id < n; ++id)
      announced.push_back(add_task(w, make_task(id, {rng.uniform(0, 30), rng.uniform(0, 30)}, rng.uniform(),
                                                rng.uniform_int(0, 2000), rng.uniform_int(4000, 21600),
                                                rng.uniform_int(20, 120))));
    Bundle b = build_bundle(w, r, announced, w.config.weights);
    Resource replay = r;
    for (const auto& item : b.items) {
      InsertionResult ir = can_insert(w, replay, *w.find_task(item.task_id));
      REQUIRE(ir.feasible);
      ScheduledTask st;
      st.task_id = item.task_id;
      st.resource_id = replay.id;
      st.exec_start = ir.exec_start;
      st.exec_end = ir.exec_start + w.find_task(item.task_id)->required_duration;
      st.flight_distance_in = ir.added_distance;
      commit_scheduled(replay, st);
    }
    CHECK(validate_schedule(w, replay).empty());
  }
}

TEST_SUITE_END();
