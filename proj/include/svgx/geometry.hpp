#pragma once

#include <functional>
#include <optional>

#include "svgx/ir.hpp"

namespace svgx {

struct Point {
  double x = 0, y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Box {
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  bool valid = false;

  void include(double x, double y);
  void include(const Box& other);
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

/// Visits each command of `path` with its absolute form and the current
/// point before it. Absolute form keeps the op (H stays H) and turns every
/// coordinate argument into an absolute one; a leading relative moveto is
/// treated as absolute.
void for_each_absolute(const PathData& path,
                       const std::function<void(const PathCmd& absolute, Point current)>& visit);

/// Tight geometric bounds (curve extrema, not control hulls).
Box path_bounds(const PathData& path);

/// Object bounding box of a geometry node, untransformed. Text has none.
std::optional<Box> element_bounds(const Node& node);

}  // namespace svgx
