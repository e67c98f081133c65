#pragma once

#include <cmath>

namespace obsnet {

// Planar region coordinates in km.
struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

inline double travel_distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace obsnet
