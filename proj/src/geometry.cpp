#include "svgx/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace svgx {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cubic_at(double p0, double p1, double p2, double p3, double t) {
  const double u = 1 - t;
  return u * u * u * p0 + 3 * u * u * t * p1 + 3 * u * t * t * p2 + t * t * t * p3;
}

double quad_at(double p0, double p1, double p2, double t) {
  const double u = 1 - t;
  return u * u * p0 + 2 * u * t * p1 + t * t * p2;
}

// Parameters in (0,1) where the cubic's derivative along one axis vanishes.
void cubic_extrema(double p0, double p1, double p2, double p3, double out[2], int& n) {
  n = 0;
  const double a = -p0 + 3 * p1 - 3 * p2 + p3;
  const double b = 2 * (p0 - 2 * p1 + p2);
  const double c = p1 - p0;
  auto push = [&](double t) {
    if (t > 0 && t < 1) out[n++] = t;
  };
  if (std::abs(a) < 1e-12) {
    if (std::abs(b) > 1e-12) push(-c / b);
    return;
  }
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return;
  const double sq = std::sqrt(disc);
  push((-b + sq) / (2 * a));
  push((-b - sq) / (2 * a));
}

bool angle_in_sweep(double theta, double start, double sweep) {
  double rel = std::fmod(theta - start, kTwoPi);
  if (sweep >= 0) {
    if (rel < 0) rel += kTwoPi;
    return rel <= sweep;
  }
  if (rel > 0) rel -= kTwoPi;
  return rel >= sweep;
}

double vector_angle(double ux, double uy, double vx, double vy) {
  return std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
}

void arc_bounds(Point from, const PathCmd& arc, Box& box) {
  const double x2 = arc.args[5], y2 = arc.args[6];
  box.include(x2, y2);
  double rx = std::abs(arc.args[0]), ry = std::abs(arc.args[1]);
  if (rx == 0 || ry == 0 || (from.x == x2 && from.y == y2)) return;
  const double phi = arc.args[2] * std::numbers::pi / 180.0;
  const double cphi = std::cos(phi), sphi = std::sin(phi);
  const double dx = (from.x - x2) / 2, dy = (from.y - y2) / 2;
  const double x1p = cphi * dx + sphi * dy;
  const double y1p = -sphi * dx + cphi * dy;
  const double lambda = (x1p * x1p) / (rx * rx) + (y1p * y1p) / (ry * ry);
  if (lambda > 1) {
    const double s = std::sqrt(lambda);
    rx *= s;
    ry *= s;
  }
  const double num = rx * rx * ry * ry - rx * rx * y1p * y1p - ry * ry * x1p * x1p;
  const double den = rx * rx * y1p * y1p + ry * ry * x1p * x1p;
  double coef = den == 0 ? 0 : std::sqrt(std::max(0.0, num / den));
  const bool large = arc.args[3] != 0, sweep_flag = arc.args[4] != 0;
  if (large == sweep_flag) coef = -coef;
  const double cxp = coef * rx * y1p / ry;
  const double cyp = -coef * ry * x1p / rx;
  const double cx = cphi * cxp - sphi * cyp + (from.x + x2) / 2;
  const double cy = sphi * cxp + cphi * cyp + (from.y + y2) / 2;
  const double theta1 = vector_angle(1, 0, (x1p - cxp) / rx, (y1p - cyp) / ry);
  double dtheta = vector_angle((x1p - cxp) / rx, (y1p - cyp) / ry, (-x1p - cxp) / rx,
                               (-y1p - cyp) / ry);
  if (!sweep_flag && dtheta > 0) dtheta -= kTwoPi;
  if (sweep_flag && dtheta < 0) dtheta += kTwoPi;

  auto point_at = [&](double t) {
    box.include(cx + rx * cphi * std::cos(t) - ry * sphi * std::sin(t),
                cy + rx * sphi * std::cos(t) + ry * cphi * std::sin(t));
  };
  const double tx = std::atan2(-ry * sphi, rx * cphi);
  const double ty = std::atan2(ry * cphi, rx * sphi);
  for (double t : {tx, tx + std::numbers::pi, ty, ty + std::numbers::pi}) {
    if (angle_in_sweep(t, theta1, dtheta)) point_at(t);
  }
}

}  // namespace

void Box::include(double x, double y) {
  if (!valid) {
    min_x = max_x = x;
    min_y = max_y = y;
    valid = true;
    return;
  }
  min_x = std::min(min_x, x);
  max_x = std::max(max_x, x);
  min_y = std::min(min_y, y);
  max_y = std::max(max_y, y);
}

void Box::include(const Box& other) {
  if (!other.valid) return;
  include(other.min_x, other.min_y);
  include(other.max_x, other.max_y);
}

void for_each_absolute(const PathData& path,
                       const std::function<void(const PathCmd&, Point)>& visit) {
  Point cur, start;
  for (const auto& cmd : path) {
    PathCmd abs = cmd;
    abs.relative = false;
    if (cmd.relative) {
      switch (cmd.op) {
        case PathOp::HLineTo:
          abs.args[0] += cur.x;
          break;
        case PathOp::VLineTo:
          abs.args[0] += cur.y;
          break;
        case PathOp::Arc:
          abs.args[5] += cur.x;
          abs.args[6] += cur.y;
          break;
        case PathOp::ClosePath:
          break;
        default:
          for (std::size_t i = 0; i + 1 < arity(cmd.op); i += 2) {
            abs.args[i] += cur.x;
            abs.args[i + 1] += cur.y;
          }
      }
    }
    visit(abs, cur);
    switch (abs.op) {
      case PathOp::MoveTo:
        cur = {abs.args[0], abs.args[1]};
        start = cur;
        break;
      case PathOp::ClosePath:
        cur = start;
        break;
      case PathOp::HLineTo:
        cur.x = abs.args[0];
        break;
      case PathOp::VLineTo:
        cur.y = abs.args[0];
        break;
      default: {
        const auto n = arity(abs.op);
        cur = {abs.args[n - 2], abs.args[n - 1]};
      }
    }
  }
}

Box path_bounds(const PathData& path) {
  Box box;
  Point prev_ctrl;
  PathOp prev_op = PathOp::MoveTo;
  for_each_absolute(path, [&](const PathCmd& c, Point cur) {
    const auto& a = c.args;
    Point ctrl = cur;
    switch (c.op) {
      case PathOp::MoveTo:
      case PathOp::LineTo:
      case PathOp::SmoothQuadTo:
        if (c.op == PathOp::SmoothQuadTo) {
          const bool reflect = prev_op == PathOp::QuadTo || prev_op == PathOp::SmoothQuadTo;
          const Point p1 = reflect ? Point{2 * cur.x - prev_ctrl.x, 2 * cur.y - prev_ctrl.y} : cur;
          const double px[3] = {cur.x, p1.x, a[0]}, py[3] = {cur.y, p1.y, a[1]};
          for (const double* p : {px, py}) {
            const double den = p[0] - 2 * p[1] + p[2];
            if (std::abs(den) > 1e-12) {
              const double t = (p[0] - p[1]) / den;
              if (t > 0 && t < 1) box.include(quad_at(px[0], px[1], px[2], t), quad_at(py[0], py[1], py[2], t));
            }
          }
          ctrl = p1;
        }
        box.include(a[0], a[1]);
        break;
      case PathOp::HLineTo:
        box.include(cur.x, cur.y);
        box.include(a[0], cur.y);
        break;
      case PathOp::VLineTo:
        box.include(cur.x, cur.y);
        box.include(cur.x, a[0]);
        break;
      case PathOp::CurveTo:
      case PathOp::SmoothCurveTo: {
        Point p1, p2, p3;
        if (c.op == PathOp::CurveTo) {
          p1 = {a[0], a[1]};
          p2 = {a[2], a[3]};
          p3 = {a[4], a[5]};
        } else {
          const bool reflect = prev_op == PathOp::CurveTo || prev_op == PathOp::SmoothCurveTo;
          p1 = reflect ? Point{2 * cur.x - prev_ctrl.x, 2 * cur.y - prev_ctrl.y} : cur;
          p2 = {a[0], a[1]};
          p3 = {a[2], a[3]};
        }
        box.include(cur.x, cur.y);
        box.include(p3.x, p3.y);
        double ts[2];
        int n = 0;
        cubic_extrema(cur.x, p1.x, p2.x, p3.x, ts, n);
        for (int i = 0; i < n; ++i)
          box.include(cubic_at(cur.x, p1.x, p2.x, p3.x, ts[i]), cubic_at(cur.y, p1.y, p2.y, p3.y, ts[i]));
        cubic_extrema(cur.y, p1.y, p2.y, p3.y, ts, n);
        for (int i = 0; i < n; ++i)
          box.include(cubic_at(cur.x, p1.x, p2.x, p3.x, ts[i]), cubic_at(cur.y, p1.y, p2.y, p3.y, ts[i]));
        ctrl = p2;
        break;
      }
      case PathOp::QuadTo: {
        const double px[3] = {cur.x, a[0], a[2]}, py[3] = {cur.y, a[1], a[3]};
        box.include(cur.x, cur.y);
        box.include(a[2], a[3]);
        for (const double* p : {px, py}) {
          const double den = p[0] - 2 * p[1] + p[2];
          if (std::abs(den) > 1e-12) {
            const double t = (p[0] - p[1]) / den;
            if (t > 0 && t < 1) box.include(quad_at(px[0], px[1], px[2], t), quad_at(py[0], py[1], py[2], t));
          }
        }
        ctrl = {a[0], a[1]};
        break;
      }
      case PathOp::Arc:
        box.include(cur.x, cur.y);
        arc_bounds(cur, c, box);
        break;
      case PathOp::ClosePath:
        break;
    }
    prev_ctrl = ctrl;
    prev_op = c.op;
  });
  return box;
}

std::optional<Box> element_bounds(const Node& node) {
  auto num = [&](AttrName n) { return node.number(n).value_or(0.0); };
  Box box;
  switch (node.kind) {
    case ElementKind::Rect:
      box.include(num(AttrName::X), num(AttrName::Y));
      box.include(num(AttrName::X) + num(AttrName::Width), num(AttrName::Y) + num(AttrName::Height));
      return box;
    case ElementKind::Circle: {
      const double r = num(AttrName::R);
      box.include(num(AttrName::Cx) - r, num(AttrName::Cy) - r);
      box.include(num(AttrName::Cx) + r, num(AttrName::Cy) + r);
      return box;
    }
    case ElementKind::Ellipse: {
      const double rx = num(AttrName::Rx), ry = num(AttrName::Ry);
      box.include(num(AttrName::Cx) - rx, num(AttrName::Cy) - ry);
      box.include(num(AttrName::Cx) + rx, num(AttrName::Cy) + ry);
      return box;
    }
    case ElementKind::Line:
      box.include(num(AttrName::X1), num(AttrName::Y1));
      box.include(num(AttrName::X2), num(AttrName::Y2));
      return box;
    case ElementKind::Polygon:
    case ElementKind::Polyline:
      if (const auto* v = node.find(AttrName::Points)) {
        const auto& c = std::get<Points>(*v).coords;
        for (std::size_t i = 0; i + 1 < c.size(); i += 2) box.include(c[i], c[i + 1]);
      }
      if (!box.valid) return std::nullopt;
      return box;
    case ElementKind::Path:
      if (const auto* v = node.find(AttrName::D)) {
        box = path_bounds(std::get<PathData>(*v));
        if (box.valid) return box;
      }
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace svgx
