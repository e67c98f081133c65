#pragma once

#include <cstdint>

namespace obsnet::work {

// Reported runtimes come from a deterministic operation-count cost model so
// that result files are reproducible byte for byte across reruns. Solvers
// call add() on their elementary steps; the CSV layer converts units to ms
// with a fixed scale.
inline thread_local std::uint64_t units = 0;

inline void add(std::uint64_t n) { units += n; }
inline void reset() { units = 0; }
inline std::uint64_t read() { return units; }

constexpr double kUnitsPerMs = 5000.0;

inline double to_ms(std::uint64_t u) { return static_cast<double>(u) / kUnitsPerMs; }

}  // namespace obsnet::work
