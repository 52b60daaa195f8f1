#include "svgx/transform.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "svgx/number.hpp"

namespace svgx {

namespace {

struct KindName {
  TransformKind kind;
  std::string_view name;
  std::size_t min_args;
  std::size_t max_args;
};

constexpr std::array<KindName, 6> kKinds{{
    {TransformKind::Matrix, "matrix", 6, 6},
    {TransformKind::Translate, "translate", 1, 2},
    {TransformKind::Scale, "scale", 1, 2},
    {TransformKind::Rotate, "rotate", 1, 3},
    {TransformKind::SkewX, "skewX", 1, 1},
    {TransformKind::SkewY, "skewY", 1, 1},
}};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

Affine Affine::operator*(const Affine& r) const {
  return {a * r.a + c * r.b,     b * r.a + d * r.b,     a * r.c + c * r.d,
          b * r.c + d * r.d,     a * r.e + c * r.f + e, b * r.e + d * r.f + f};
}

std::optional<Affine> Affine::inverse() const {
  const double det = determinant();
  if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
  const double ia = d / det, ib = -b / det, ic = -c / det, id = a / det;
  return Affine{ia, ib, ic, id, -(ia * e + ic * f), -(ib * e + id * f)};
}

std::optional<TransformList> parse_transform(std::string_view text) {
  TransformList list;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (is_space(text[pos]) || text[pos] == ',')) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    const KindName* match = nullptr;
    for (const auto& k : kKinds) {
      if (text.substr(pos, k.name.size()) == k.name) {
        match = &k;
        break;
      }
    }
    if (!match) return std::nullopt;
    pos += match->name.size();
    while (pos < text.size() && is_space(text[pos])) ++pos;
    if (pos >= text.size() || text[pos] != '(') return std::nullopt;
    ++pos;
    TransformOp op{match->kind, {}};
    while (true) {
      while (pos < text.size() && is_space(text[pos])) ++pos;
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      if (!op.args.empty()) skip_separators(text, pos);
      auto v = scan_number(text, pos);
      if (!v) return std::nullopt;
      op.args.push_back(*v);
    }
    const auto n = op.args.size();
    if (n < match->min_args || n > match->max_args) return std::nullopt;
    if (op.kind == TransformKind::Rotate && n == 2) return std::nullopt;
    list.ops.push_back(std::move(op));
    skip_ws();
  }
  return list;
}

std::string format_transform(const TransformList& list) {
  std::string s;
  for (const auto& op : list.ops) {
    if (!s.empty()) s += ' ';
    s += kKinds[static_cast<std::size_t>(op.kind)].name;
    s += '(';
    for (std::size_t i = 0; i < op.args.size(); ++i) {
      if (i) s += ' ';
      s += format_number(op.args[i]);
    }
    s += ')';
  }
  return s;
}

Affine to_affine(const TransformOp& op) {
  const auto& v = op.args;
  switch (op.kind) {
    case TransformKind::Matrix:
      return {v[0], v[1], v[2], v[3], v[4], v[5]};
    case TransformKind::Translate:
      return Affine::translate(v[0], v.size() > 1 ? v[1] : 0.0);
    case TransformKind::Scale:
      return Affine::scale(v[0], v.size() > 1 ? v[1] : v[0]);
    case TransformKind::Rotate: {
      const double r = radians(v[0]);
      const Affine rot{std::cos(r), std::sin(r), -std::sin(r), std::cos(r), 0, 0};
      if (v.size() == 3) {
        return Affine::translate(v[1], v[2]) * rot * Affine::translate(-v[1], -v[2]);
      }
      return rot;
    }
    case TransformKind::SkewX:
      return {1, 0, std::tan(radians(v[0])), 1, 0, 0};
    case TransformKind::SkewY:
      return {1, std::tan(radians(v[0])), 0, 1, 0, 0};
  }
  return {};
}

Affine to_affine(const TransformList& list) {
  Affine m;
  for (const auto& op : list.ops) m = m * to_affine(op);
  return m;
}

TransformList conjugate_by_scale(const TransformList& list, double s) {
  TransformList out = list;
  for (auto& op : out.ops) {
    switch (op.kind) {
      case TransformKind::Matrix:
        op.args[4] *= s;
        op.args[5] *= s;
        break;
      case TransformKind::Translate:
        for (auto& v : op.args) v *= s;
        break;
      case TransformKind::Rotate:
        if (op.args.size() == 3) {
          op.args[1] *= s;
          op.args[2] *= s;
        }
        break;
      case TransformKind::Scale:
      case TransformKind::SkewX:
      case TransformKind::SkewY:
        break;
    }
  }
  return out;
}

}  // namespace svgx
