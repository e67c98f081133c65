#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "obsnet/model.hpp"

namespace obsnet {

// Bidding-task collection GT, price vector VT and the symmetric conflict
// matrix M_con. Bundles conflict iff they share at least one task id.
struct WdpInstance {
  std::vector<std::set<TaskId>> bundles;  // GT
  std::vector<double> prices;             // VT
  std::vector<std::vector<char>> conflict;  // M_con

  std::size_t size() const { return bundles.size(); }
};

std::vector<std::vector<char>> build_conflict_matrix(const std::vector<std::set<TaskId>>& bundles);

WdpInstance make_instance(std::vector<std::set<TaskId>> bundles, std::vector<double> prices);

struct WdpSolution {
  std::vector<char> selected;  // X
  double value = 0.0;
  std::set<TaskId> tasks;  // C_best[T]
  bool hit_iteration_cap = false;
};

double solution_value(const WdpInstance& inst, const std::vector<char>& selected);
bool is_feasible(const WdpInstance& inst, const std::vector<char>& selected);

struct FlsParams {
  double rho = 0.9;    // probability of the float-interval move
  double sigma = 0.2;  // floating price interval
  int y = 10;          // stall-iteration limit
  std::uint64_t rng_seed = 0;
  std::int64_t hard_iteration_cap = 10000;
};

struct ExactParams {
  std::size_t max_bundles = 10000;
};

class WdpSizeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Branch and bound over the set-packing model; equals exhaustive enumeration
// on the objective and returns the lexicographically smallest optimal X.
// Refuses instances larger than params.max_bundles.
WdpSolution solve_exact(const WdpInstance& inst, const ExactParams& params = {});

// Float interval-based local search. Always returns a feasible selection;
// deterministic for a fixed rng_seed.
WdpSolution solve_fls(const WdpInstance& inst, const FlsParams& params);

// JSON round-trip used for reproducible oracle instances.
std::string dump_instance(const WdpInstance& inst);
WdpInstance load_instance(const std::string& text);

}  // namespace obsnet
