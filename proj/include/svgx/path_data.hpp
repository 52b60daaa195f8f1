#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace svgx {

enum class PathOp : unsigned char {
  MoveTo,
  LineTo,
  HLineTo,
  VLineTo,
  CurveTo,
  SmoothCurveTo,
  QuadTo,
  SmoothQuadTo,
  Arc,
  ClosePath,
};

inline constexpr std::size_t kPathOpCount = 10;

/// Argument count per op: 2,2,1,1,6,4,4,2,7,0.
std::size_t arity(PathOp op);

/// Lowercase SVG command letter ('m', 'l', ... 'z').
char command_letter(PathOp op);

struct PathCmd {
  PathOp op = PathOp::MoveTo;
  bool relative = false;
  std::array<double, 7> args{};

  std::span<const double> values() const { return {args.data(), arity(op)}; }
  std::span<double> values() { return {args.data(), arity(op)}; }

  friend bool operator==(const PathCmd& a, const PathCmd& b);
};

using PathData = std::vector<PathCmd>;

/// Parses an SVG `d` string. Accepts comma/whitespace separators, implicit
/// command repetition, compact arc flags, and materializes the implicit
/// LineTo that follows MoveTo coordinate pairs. Throws Error{BadPathData}
/// carrying the byte offset of the first unparseable character.
PathData parse_path_data(std::string_view text);

/// Canonical text: command letter, then arguments joined by single spaces;
/// commands are concatenated ("M0 0l10 10z").
std::string format_path_data(const PathData& path);

/// Space-joined argument list of one command ("10 -3.25").
std::string format_path_args(const PathCmd& cmd);

}  // namespace svgx
