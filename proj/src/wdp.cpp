#include "obsnet/wdp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "obsnet/rng.hpp"
#include "obsnet/work_meter.hpp"

namespace obsnet {

namespace {
constexpr double kEps = 1e-9;
}

std::vector<std::vector<char>> build_conflict_matrix(const std::vector<std::set<TaskId>>& bundles) {
  const std::size_t n = bundles.size();
  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  std::map<TaskId, std::vector<std::size_t>> holders;
  for (std::size_t e = 0; e < n; ++e)
    for (TaskId t : bundles[e]) holders[t].push_back(e);
  for (const auto& [task, es] : holders) {
    for (std::size_t i = 0; i < es.size(); ++i)
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        work::add(1);
        m[es[i]][es[j]] = 1;
        m[es[j]][es[i]] = 1;
      }
  }
  return m;
}

WdpInstance make_instance(std::vector<std::set<TaskId>> bundles, std::vector<double> prices) {
  if (bundles.size() != prices.size())
    throw std::invalid_argument("GT and VT have different lengths");
  for (double v : prices)
    if (v < 0.0) throw std::invalid_argument("bundle prices must be nonnegative");
  WdpInstance inst;
  inst.conflict = build_conflict_matrix(bundles);
  inst.bundles = std::move(bundles);
  inst.prices = std::move(prices);
  return inst;
}

double solution_value(const WdpInstance& inst, const std::vector<char>& selected) {
  double v = 0.0;
  for (std::size_t e = 0; e < inst.size(); ++e)
    if (selected[e]) v += inst.prices[e];
  return v;
}

bool is_feasible(const WdpInstance& inst, const std::vector<char>& selected) {
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (!selected[i]) continue;
    for (std::size_t j = i + 1; j < inst.size(); ++j)
      if (selected[j] && inst.conflict[i][j]) return false;
  }
  return true;
}

namespace {

std::set<TaskId> selected_tasks(const WdpInstance& inst, const std::vector<char>& selected) {
  std::set<TaskId> out;
  for (std::size_t e = 0; e < inst.size(); ++e)
    if (selected[e]) out.insert(inst.bundles[e].begin(), inst.bundles[e].end());
  return out;
}

// Shared branch-and-bound state. The bound distributes each bundle's price
// over its tasks and caps the attainable residue by the best per-task
// density, which stays valid under any partial selection.
struct BnbState {
  const WdpInstance& inst;
  std::vector<int> conflict_count;
  std::map<TaskId, double> density_max;
  std::map<TaskId, int> cover_count;
  double uncovered_sum = 0.0;

  explicit BnbState(const WdpInstance& i) : inst(i), conflict_count(i.size(), 0) {
    for (std::size_t e = 0; e < inst.size(); ++e) {
      const double d = inst.bundles[e].empty() ? 0.0 : inst.prices[e] / static_cast<double>(inst.bundles[e].size());
      for (TaskId t : inst.bundles[e]) {
        auto [it, fresh] = density_max.emplace(t, d);
        if (!fresh) it->second = std::max(it->second, d);
      }
    }
    for (const auto& [t, d] : density_max) {
      cover_count[t] = 0;
      uncovered_sum += d;
    }
  }

  void select(std::size_t e) {
    for (std::size_t j = 0; j < inst.size(); ++j)
      if (inst.conflict[e][j]) ++conflict_count[j];
    for (TaskId t : inst.bundles[e])
      if (cover_count[t]++ == 0) uncovered_sum -= density_max[t];
  }

  void deselect(std::size_t e) {
    for (std::size_t j = 0; j < inst.size(); ++j)
      if (inst.conflict[e][j]) --conflict_count[j];
    for (TaskId t : inst.bundles[e])
      if (--cover_count[t] == 0) uncovered_sum += density_max[t];
  }
};

struct ValueSearch {
  BnbState state;
  std::vector<std::size_t> order;  // price-descending
  std::vector<char> chosen;
  double best = 0.0;
  bool have_best = false;

  explicit ValueSearch(const WdpInstance& inst) : state(inst), chosen(inst.size(), 0) {
    order.resize(inst.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (inst.prices[a] != inst.prices[b]) return inst.prices[a] > inst.prices[b];
      return a < b;
    });
  }

  void run(std::size_t depth, double value) {
    work::add(1);
    if (have_best && value + state.uncovered_sum <= best + kEps) return;
    if (depth == order.size()) {
      if (!have_best || value > best + kEps) {
        best = value;
        have_best = true;
      }
      return;
    }
    const std::size_t e = order[depth];
    if (state.conflict_count[e] == 0) {
      chosen[e] = 1;
      state.select(e);
      run(depth + 1, value + state.inst.prices[e]);
      state.deselect(e);
      chosen[e] = 0;
    }
    run(depth + 1, value);
  }
};

// Finds the lexicographically smallest selection reaching the target value:
// indices in natural order, exclude branch first, stop at the first hit.
struct LexSearch {
  BnbState state;
  std::vector<char> current;
  std::vector<char> found;
  double target;
  bool done = false;

  LexSearch(const WdpInstance& inst, double target_value)
      : state(inst), current(inst.size(), 0), target(target_value) {}

  void run(std::size_t depth, double value) {
    if (done) return;
    work::add(1);
    if (value + state.uncovered_sum < target - kEps) return;
    if (depth == current.size()) {
      if (value >= target - kEps) {
        found = current;
        done = true;
      }
      return;
    }
    run(depth + 1, value);
    if (done) return;
    if (state.conflict_count[depth] == 0) {
      current[depth] = 1;
      state.select(depth);
      run(depth + 1, value + state.inst.prices[depth]);
      state.deselect(depth);
      current[depth] = 0;
    }
  }
};

}  // namespace

WdpSolution solve_exact(const WdpInstance& inst, const ExactParams& params) {
  if (inst.size() > params.max_bundles)
    throw WdpSizeError("wdp instance has " + std::to_string(inst.size()) + " bundles, exceeding the cap of " +
                       std::to_string(params.max_bundles));
  WdpSolution sol;
  sol.selected.assign(inst.size(), 0);
  if (inst.size() == 0) return sol;

  ValueSearch search(inst);
  search.run(0, 0.0);

  LexSearch lex(inst, search.best);
  lex.run(0, 0.0);

  sol.selected = lex.found.empty() ? std::vector<char>(inst.size(), 0) : lex.found;
  sol.value = solution_value(inst, sol.selected);
  sol.tasks = selected_tasks(inst, sol.selected);
  return sol;
}

WdpSolution solve_fls(const WdpInstance& inst, const FlsParams& params) {
  if (params.rho < 0.0 || params.rho > 1.0) throw std::invalid_argument("rho must be in [0,1]");
  if (params.sigma < 0.0) throw std::invalid_argument("sigma must be nonnegative");
  if (params.y <= 0) throw std::invalid_argument("y must be positive");

  const std::size_t n = inst.size();
  WdpSolution sol;
  sol.selected.assign(n, 0);
  if (n == 0) return sol;

  Rng rng(params.rng_seed);
  std::vector<char> current(n, 0);
  std::vector<int> conflict_count(n, 0);
  double current_value = 0.0;
  std::vector<char> best = current;
  double best_value = 0.0;

  auto add_member = [&](std::size_t e) {
    current[e] = 1;
    current_value += inst.prices[e];
    for (std::size_t j = 0; j < n; ++j)
      if (inst.conflict[e][j]) ++conflict_count[j];
  };
  auto drop_member = [&](std::size_t e) {
    current[e] = 0;
    current_value -= inst.prices[e];
    for (std::size_t j = 0; j < n; ++j)
      if (inst.conflict[e][j]) --conflict_count[j];
  };

  int stall = 0;
  std::int64_t iterations = 0;
  while (stall < params.y) {
    if (iterations++ >= params.hard_iteration_cap) {
      sol.hit_iteration_cap = true;
      break;
    }
    work::add(n);

    // Q_B: bundles compatible with the candidate solution C.
    std::size_t greedy_pick = n;
    for (std::size_t e = 0; e < n; ++e) {
      if (current[e] || conflict_count[e] != 0) continue;
      if (greedy_pick == n || inst.prices[e] > inst.prices[greedy_pick]) greedy_pick = e;
    }

    if (greedy_pick != n) {
      add_member(greedy_pick);
    } else {
      std::vector<std::size_t> temb;  // TemB = GT - C
      for (std::size_t e = 0; e < n; ++e)
        if (!current[e]) temb.push_back(e);
      if (!temb.empty()) {
        std::size_t pick;
        if (rng.uniform() < params.rho) {
          double vmax = 0.0;
          for (std::size_t e : temb) vmax = std::max(vmax, inst.prices[e]);
          std::vector<std::size_t> fb;
          for (std::size_t e : temb)
            if (std::abs(vmax - inst.prices[e]) <= params.sigma + kEps) fb.push_back(e);
          pick = fb[rng.pick_index(fb.size())];
        } else {
          pick = temb[rng.pick_index(temb.size())];
        }
        std::vector<std::size_t> evict;
        for (std::size_t e = 0; e < n; ++e)
          if (current[e] && inst.conflict[pick][e]) evict.push_back(e);
        add_member(pick);
        for (std::size_t e : evict) drop_member(e);
      }
    }

    if (current_value >= best_value - kEps) {
      if (current_value > best_value + kEps)
        stall = 0;
      else
        ++stall;
      best = current;
      best_value = std::max(best_value, current_value);
    } else {
      ++stall;
    }
  }

  sol.selected = best;
  sol.value = solution_value(inst, sol.selected);
  sol.tasks = selected_tasks(inst, sol.selected);
  return sol;
}

std::string dump_instance(const WdpInstance& inst) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["bundles"] = nlohmann::json::array();
  for (const auto& b : inst.bundles) j["bundles"].push_back(b);
  j["prices"] = inst.prices;
  return j.dump(2);
}

WdpInstance load_instance(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
    throw std::runtime_error("unsupported wdp instance schema version");
  std::vector<std::set<TaskId>> bundles;
  for (const auto& b : j.at("bundles")) bundles.push_back(b.get<std::set<TaskId>>());
  auto prices = j.at("prices").get<std::vector<double>>();
  return make_instance(std::move(bundles), std::move(prices));
}

}  // namespace obsnet
