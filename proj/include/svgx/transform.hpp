#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace svgx {

/// 2-D affine map [a c e; b d f; 0 0 1], SVG matrix() argument order.
struct Affine {
  double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

  static Affine translate(double tx, double ty) { return {1, 0, 0, 1, tx, ty}; }
  static Affine scale(double sx, double sy) { return {sx, 0, 0, sy, 0, 0}; }

  /// this * rhs (rhs applied first).
  Affine operator*(const Affine& rhs) const;
  double apply_x(double x, double y) const { return a * x + c * y + e; }
  double apply_y(double x, double y) const { return b * x + d * y + f; }
  double determinant() const { return a * d - b * c; }
  std::optional<Affine> inverse() const;

  friend bool operator==(const Affine&, const Affine&) = default;
};

enum class TransformKind : unsigned char { Matrix, Translate, Scale, Rotate, SkewX, SkewY };

struct TransformOp {
  TransformKind kind = TransformKind::Matrix;
  std::vector<double> args;

  friend bool operator==(const TransformOp&, const TransformOp&) = default;
};

/// An SVG transform list kept in its written structure; only the numbers
/// are ever rewritten.
struct TransformList {
  std::vector<TransformOp> ops;

  friend bool operator==(const TransformList&, const TransformList&) = default;
};

std::optional<TransformList> parse_transform(std::string_view text);
std::string format_transform(const TransformList& list);
Affine to_affine(const TransformOp& op);
Affine to_affine(const TransformList& list);

/// Rewrites `list` into the list L' with scale(s) * L == L' * scale(s):
/// translation components and rotation centres are multiplied by `s`,
/// linear parts stay as written.
TransformList conjugate_by_scale(const TransformList& list, double s);

}  // namespace svgx
