#include "obsnet/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "obsnet/metrics.hpp"
#include "obsnet/runner.hpp"
#include "obsnet/scenario.hpp"
#include "obsnet/work_meter.hpp"

namespace obsnet {

namespace {

namespace fs = std::filesystem;

struct CommonFlags {
  std::string out = ".";
  std::uint64_t seed = 0;
  double rho = 0.9;
  double sigma = 0.2;
  int y = 10;
  std::size_t k = 10;
};

ScenarioConfig profile_config(const std::string& profile) {
  if (profile == "table1") return ScenarioConfig::table1();
  if (profile == "table2") return ScenarioConfig::table2();
  throw CLI::ValidationError("--profile", "unknown profile: " + profile);
}

RunParams make_params(const CommonFlags& flags) {
  RunParams p;
  p.fls.rho = flags.rho;
  p.fls.sigma = flags.sigma;
  p.fls.y = flags.y;
  p.tca_k = flags.k;
  p.seed = flags.seed;
  return p;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

Trace make_trace(const fs::path& out_dir) {
  Trace trace;
  const TraceLevel level = trace_level_from_env();
  if (level != TraceLevel::off) trace.open((out_dir / "trace.ndjson").string(), level);
  return trace;
}

void ensure_valid(const World& w) {
  const auto violations = validate_world(w);
  if (violations.empty()) return;
  std::cerr << "invariant violations:\n";
  for (const auto& v : violations) std::cerr << "  [" << v.code << "] " << v.message << "\n";
  throw std::logic_error("post-run validation failed");
}

ResultRow static_row(const std::string& method, std::uint64_t seed, std::size_t n_tasks,
                     const World& w, const RunOutput& run) {
  ResultRow row;
  row.method = method;
  row.seed = seed;
  row.n_tasks = static_cast<std::int64_t>(n_tasks);
  row.round = 0;
  row.tcr = n_tasks == 0 ? 0.0 : tcr(all_assignments(w).size(), n_tasks);
  row.runtime_ms = work::to_ms(run.work_units);
  row.aec_km = aec(w);
  if (method == "mca") {
    row.level1_ms = work::to_ms(run.level_units[0]);
    row.level2_ms = work::to_ms(run.level_units[1]);
    row.level3_ms = work::to_ms(run.level_units[2]);
  }
  return row;
}

int cmd_generate(const std::string& profile, std::optional<std::int64_t> tasks, const CommonFlags& flags) {
  ScenarioConfig cfg = profile_config(profile);
  cfg.seed = flags.seed;
  fs::create_directories(flags.out);
  if (profile == "table2") {
    if (tasks) cfg.initial_tasks = *tasks;
    DynamicScenario scenario = generate_dynamic(cfg);
    save_scenario(scenario.world, (fs::path(flags.out) / "scenario.json").string());
    save_events(scenario.events, (fs::path(flags.out) / "events.json").string());
  } else {
    if (tasks) cfg.task_count = *tasks;
    World w = generate_static(cfg);
    save_scenario(w, (fs::path(flags.out) / "scenario.json").string());
  }
  return 0;
}

int cmd_run(const std::string& scenario_path, const std::string& method_name, const CommonFlags& flags) {
  World w = load_scenario(scenario_path);
  const Method method = method_from_string(method_name);
  RunParams params = make_params(flags);

  fs::create_directories(flags.out);
  Trace trace = make_trace(flags.out);

  std::vector<TaskId> ids;
  for (const auto& [id, t] : w.tasks) ids.push_back(id);

  work::reset();
  RunOutput run = run_method(w, method, ids, params, &trace);
  ensure_valid(w);

  auto csv = open_out(fs::path(flags.out) / "results.csv");
  write_csv_header(csv);
  write_csv_row(csv, static_row(method_name, flags.seed, ids.size(), w, run));
  return 0;
}

int cmd_sweep(const std::string& profile, const std::vector<std::int64_t>& task_grid, int seeds,
              const std::vector<std::string>& methods, const CommonFlags& flags) {
  fs::create_directories(flags.out);
  Trace trace = make_trace(flags.out);
  auto csv = open_out(fs::path(flags.out) / "results.csv");
  write_csv_header(csv);

  for (const std::string& method_name : methods) {
    const Method method = method_from_string(method_name);
    for (std::int64_t n : task_grid) {
      for (int s = 0; s < seeds; ++s) {
        ScenarioConfig cfg = profile_config(profile);
        cfg.seed = flags.seed + static_cast<std::uint64_t>(s);
        cfg.task_count = n;
        World w = generate_static(cfg);

        CommonFlags cell = flags;
        cell.seed = cfg.seed;
        RunParams params = make_params(cell);

        std::vector<TaskId> ids;
        for (const auto& [id, t] : w.tasks) ids.push_back(id);
        work::reset();
        RunOutput run = run_method(w, method, ids, params, &trace);
        ensure_valid(w);
        write_csv_row(csv, static_row(method_name, cfg.seed, ids.size(), w, run));
      }
    }
  }
  return 0;
}

int cmd_dynamic(const std::string& profile, const std::string& scenario_path, const std::string& events_path,
                const std::string& method_name, const CommonFlags& flags) {
  World w;
  std::vector<DisturbanceEvent> events;
  if (!scenario_path.empty()) {
    w = load_scenario(scenario_path);
    if (!events_path.empty()) events = load_events(events_path);
  } else {
    ScenarioConfig cfg = profile_config(profile);
    cfg.seed = flags.seed;
    DynamicScenario scenario = generate_dynamic(cfg);
    w = std::move(scenario.world);
    events = std::move(scenario.events);
  }

  const Method method = method_from_string(method_name);
  RunParams params = make_params(flags);

  fs::create_directories(flags.out);
  Trace trace = make_trace(flags.out);

  work::reset();
  const std::vector<DynamicRow> rows = run_dynamic(w, events, method, params, &trace);
  ensure_valid(w);

  auto csv = open_out(fs::path(flags.out) / "results.csv");
  write_csv_header(csv);
  for (const auto& r : rows) {
    ResultRow row;
    row.method = method_name;
    row.seed = flags.seed;
    row.n_tasks = r.at;
    row.round = r.round;
    row.tcr = r.tcr;
    row.runtime_ms = work::to_ms(r.work_units);
    row.aec_km = r.aec_km;
    row.rsc = r.rsc;
    row.occupancy = r.occupancy;
    row.nt = r.nt;
    write_csv_row(csv, row);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Deterministic simulator for dynamic task planning across heterogeneous "
               "Earth-observation resources"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* gen = app.add_subcommand("generate", "Write scenario (and events) JSON for a profile");
  std::string gen_profile;
  std::optional<std::int64_t> gen_tasks;
  gen->add_option("--profile", gen_profile, "table1 or table2")->required();
  gen->add_option("--tasks", gen_tasks, "override the task count");
  gen->add_option("--seed", flags.seed, "scenario seed");
  gen->add_option("--out", flags.out, "output directory");

  auto* run = app.add_subcommand("run", "Run one method on a scenario file");
  std::string run_scenario, run_method_name;
  run->add_option("--scenario", run_scenario, "scenario.json path")->required();
  run->add_option("--method", run_method_name, "mca|ssa|aus|tca|exact")->required();
  run->add_option("--seed", flags.seed, "run seed");
  run->add_option("--out", flags.out, "output directory");
  run->add_option("--k", flags.k, "cluster count for tca");
  run->add_option("--rho", flags.rho, "FLS probability");
  run->add_option("--sigma", flags.sigma, "FLS floating price interval");
  run->add_option("--y", flags.y, "FLS stall-iteration limit");

  auto* sweep = app.add_subcommand("sweep", "Run a method/task-count/seed grid");
  std::string sweep_profile = "table2";
  std::vector<std::int64_t> sweep_tasks{50, 100, 150, 200};
  std::vector<std::string> sweep_methods{"mca", "ssa", "aus", "tca", "exact"};
  int sweep_seeds = 3;
  sweep->add_option("--profile", sweep_profile, "table1 or table2");
  sweep->add_option("--tasks", sweep_tasks, "task-count grid")->delimiter(',');
  sweep->add_option("--methods", sweep_methods, "methods to run")->delimiter(',');
  sweep->add_option("--seeds", sweep_seeds, "number of seeds (base..base+n-1)");
  sweep->add_option("--seed", flags.seed, "base seed");
  sweep->add_option("--out", flags.out, "output directory");
  sweep->add_option("--k", flags.k, "cluster count for tca");
  sweep->add_option("--rho", flags.rho, "FLS probability");
  sweep->add_option("--sigma", flags.sigma, "FLS floating price interval");
  sweep->add_option("--y", flags.y, "FLS stall-iteration limit");

  auto* dyn = app.add_subcommand("dynamic", "Replay a dynamic event schedule");
  std::string dyn_profile = "table2", dyn_scenario, dyn_events, dyn_method_name;
  dyn->add_option("--profile", dyn_profile, "profile when generating in-memory");
  dyn->add_option("--scenario", dyn_scenario, "scenario.json path (overrides --profile)");
  dyn->add_option("--events", dyn_events, "events.json path");
  dyn->add_option("--method", dyn_method_name, "mca|ssa|aus|tca|exact")->required();
  dyn->add_option("--seed", flags.seed, "run seed");
  dyn->add_option("--out", flags.out, "output directory");
  dyn->add_option("--k", flags.k, "cluster count for tca");
  dyn->add_option("--rho", flags.rho, "FLS probability");
  dyn->add_option("--sigma", flags.sigma, "FLS floating price interval");
  dyn->add_option("--y", flags.y, "FLS stall-iteration limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_profile, gen_tasks, flags);
    if (run->parsed()) return cmd_run(run_scenario, run_method_name, flags);
    if (sweep->parsed()) return cmd_sweep(sweep_profile, sweep_tasks, sweep_seeds, sweep_methods, flags);
    if (dyn->parsed()) return cmd_dynamic(dyn_profile, dyn_scenario, dyn_events, dyn_method_name, flags);
  } catch (const CentralSizeError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const WdpSizeError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace obsnet
