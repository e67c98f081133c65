#include "doctest.h"
#include "helpers.hpp"
#include "obsnet/model.hpp"
#include "obsnet/scenario.hpp"

using namespace obsnet;
using namespace obsnet::testing;

TEST_SUITE_BEGIN("model");

namespace {

World small_world() {
  World w = empty_world();
  add_resource(w, make_uav(0, 0, {10.0, 10.0}));
  add_resource(w, make_airship(1, 1, {50.0, 50.0}));
  add_task(w, make_task(100, {12.0, 10.0}, 0.7, 0, 3600, 60));
  add_task(w, make_task(101, {60.0, 40.0}, 0.4, 1800, 7200, 120));
  refresh_neighbors(w);
  return w;
}

}  // namespace

TEST_CASE("well-formed scenario validates clean") {
  World w = small_world();
  CHECK(validate_scenario(w).empty());
}

TEST_CASE("weight outside [0,1] is a single weight violation") {
  World w = small_world();
  w.tasks[100].weight = 1.5;
  auto report = validate_scenario(w);
  REQUIRE(report.size() == 1);
  CHECK(report[0].code == "task.weight");
}

TEST_CASE("dangling center reference is reported") {
  World w = small_world();
  w.resources[0].center_id = 99;
  auto report = validate_scenario(w);
  bool found = false;
  for (const auto& v : report)
    if (v.code == "resource.center_ref") found = true;
  CHECK(found);
}

TEST_CASE("validate_scenario is pure and idempotent") {
  World w = small_world();
  const World before = w;
  auto a = validate_scenario(w);
  auto b = validate_scenario(w);
  CHECK(a.size() == b.size());
  CHECK(w == before);
}

TEST_CASE("scenario JSON round-trip preserves structure") {
  World w = small_world();
  const std::string text = scenario_to_json(w);
  World loaded = scenario_from_json(text, "test");
  CHECK(loaded == w);
  CHECK(scenario_to_json(loaded) == text);
}

TEST_CASE("commit and reclaim restore budgets exactly") {
  World w = small_world();
  Resource& r = w.resources[0];
  const Resource before = r;
  ScheduledTask st;
  st.task_id = 100;
  st.resource_id = r.id;
  st.exec_start = 100;
  st.exec_end = 160;
  st.flight_distance_in = 2.0;
  commit_scheduled(r, st);
  CHECK(r.duration_remaining == before.duration_remaining - 60);
  CHECK(r.poweron_remaining == before.poweron_remaining - 1);
  CHECK(r.endurance_remaining == doctest::Approx(before.endurance_remaining - 2.0));
  REQUIRE(reclaim_scheduled(r, 100));
  CHECK(r == before);
}

TEST_CASE("reclaim refuses started work") {
  World w = small_world();
  Resource& r = w.resources[0];
  ScheduledTask st;
  st.task_id = 100;
  st.resource_id = r.id;
  st.exec_start = 100;
  st.exec_end = 160;
  commit_scheduled(r, st);
  advance_clock(w, 120);
  CHECK(r.schedule[0].state == TaskState::executing);
  CHECK_FALSE(reclaim_scheduled(r, 100));
  advance_clock(w, 200);
  CHECK(r.schedule[0].state == TaskState::done);
  CHECK_FALSE(reclaim_scheduled(r, 100));
}

TEST_CASE("neighbors stay within center and radius") {
  World w = empty_world();
  w.config.comm_radius_km = 30.0;
  add_resource(w, make_uav(0, 0, {0.0, 0.0}));
  add_resource(w, make_uav(1, 0, {20.0, 0.0}));
  add_resource(w, make_uav(2, 0, {80.0, 0.0}));
  add_resource(w, make_uav(3, 1, {21.0, 0.0}));  // other center, in range
  refresh_neighbors(w);
  CHECK(w.resources[0].neighbors == std::set<ResourceId>{1});
  CHECK(w.resources[1].neighbors == std::set<ResourceId>{0});
  CHECK(w.resources[2].neighbors.empty());
  CHECK(w.resources[3].neighbors.empty());
}

TEST_SUITE_END();
