#pragma once

// Typed intermediate representation of an SVG document and its canonical
// single-line XML form.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "svgx/path_data.hpp"
#include "svgx/transform.hpp"

namespace svgx {

enum class ElementKind : unsigned char {
  Path,
  Circle,
  Rect,
  Ellipse,
  Polygon,
  Line,
  Polyline,
  Text,
  LinearGradient,
  RadialGradient,
  Stop,
  Group,
};

inline constexpr std::size_t kElementKindCount = 12;

/// The 30 attribute names, in canonical serialization order.
enum class AttrName : unsigned char {
  Id,
  D,
  Fill,
  StrokeWidth,
  StrokeLinecap,
  Stroke,
  Opacity,
  Transform,
  GradientTransform,
  Offset,
  Width,
  Height,
  Cx,
  Cy,
  Rx,
  Ry,
  R,
  Points,
  X1,
  Y1,
  X2,
  Y2,
  X,
  Y,
  Fr,
  Fx,
  Fy,
  Href,
  Rotate,
  FontSize,
};

inline constexpr std::size_t kAttrNameCount = 30;

std::string_view tag_name(ElementKind kind);
std::optional<ElementKind> element_kind_from_tag(std::string_view tag);
std::string_view attr_name_text(AttrName name);
std::optional<AttrName> attr_name_from_text(std::string_view text);

bool is_geometry(ElementKind kind);
bool is_gradient(ElementKind kind);
bool is_container(ElementKind kind);

struct Number {
  double value = 0;
  friend bool operator==(const Number&, const Number&) = default;
};

/// `#rrggbb` or `none` (rgb == nullopt).
struct Color {
  std::optional<std::uint32_t> rgb;

  static Color none() { return {}; }
  static Color hex(std::uint32_t v) { return {v & 0xFFFFFFu}; }
  bool is_none() const { return !rgb.has_value(); }
  friend bool operator==(const Color&, const Color&) = default;
};

struct Points {
  std::vector<double> coords;  // x0 y0 x1 y1 ...
  friend bool operator==(const Points&, const Points&) = default;
};

struct Text {
  std::string value;
  friend bool operator==(const Text&, const Text&) = default;
};

/// Link to an element id; printed as `url(#id)` in paint attributes and as
/// `#id` in href.
struct Reference {
  std::string id;
  friend bool operator==(const Reference&, const Reference&) = default;
};

using AttrValue = std::variant<Number, Color, PathData, Points, Text, Reference, TransformList>;

struct Attribute {
  AttrName name;
  AttrValue value;
  friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct Node {
  ElementKind kind = ElementKind::Group;
  std::vector<Attribute> attrs;  // sorted by AttrName, unique
  std::vector<Node> children;
  std::string text;              // character data of <text>
  bool in_defs = false;          // parsed from a non-rendering <defs> subtree

  const AttrValue* find(AttrName name) const;
  AttrValue* find(AttrName name);
  bool has(AttrName name) const { return find(name) != nullptr; }
  void set(AttrName name, AttrValue value);
  bool erase(AttrName name);
  std::optional<double> number(AttrName name) const;

  friend bool operator==(const Node&, const Node&) = default;
};

struct ViewBox {
  double min_x = 0, min_y = 0, width = 0, height = 0;
  friend bool operator==(const ViewBox&, const ViewBox&) = default;
};

struct SvgDocument {
  ViewBox view_box;
  std::vector<Node> elements;
  friend bool operator==(const SvgDocument&, const SvgDocument&) = default;
};

/// Attribute value text exactly as it appears in the canonical XML (before
/// XML escaping). This is also the literal payload used by the token codec.
std::string format_value(AttrName name, const AttrValue& value);

/// Deterministic single-line XML: fixed attribute order, minimal numbers,
/// no declaration or comments, root carries only viewBox.
std::string canonical_serialize(const SvgDocument& doc);

std::string xml_escape(std::string_view text);

/// Element counts keyed by SVG tag name ("path", "g", ...), all depths.
std::map<std::string, std::size_t> count_elements(const SvgDocument& doc);

/// Number of geometry primitives (the eight drawable kinds) under `nodes`.
std::size_t count_primitives(const std::vector<Node>& nodes);

/// Throws Error{UnsupportedNode} naming the first violated structural rule.
void check_invariants(const SvgDocument& doc);

}  // namespace svgx
