#include "svgx/ir.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "svgx/error.hpp"
#include "svgx/number.hpp"

namespace svgx {

namespace {

constexpr std::array<std::string_view, kElementKindCount> kTags{
    "path",     "circle", "rect",           "ellipse",        "polygon", "line",
    "polyline", "text",   "linearGradient", "radialGradient", "stop",    "g"};

constexpr std::array<std::string_view, kAttrNameCount> kAttrNames{
    "id",     "d",      "fill", "stroke-width", "stroke-linecap", "stroke",
    "opacity", "transform", "gradientTransform", "offset", "width", "height",
    "cx",     "cy",     "rx",   "ry",           "r",              "points",
    "x1",     "y1",     "x2",   "y2",           "x",              "y",
    "fr",     "fx",     "fy",   "href",         "rotate",         "font-size"};

std::string hex_color(std::uint32_t rgb) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%06x", static_cast<unsigned>(rgb & 0xFFFFFFu));
  return buf;
}

// Names differ from the token on <stop>: the paint attributes carry the
// stop colour and opacity.
std::string_view xml_attr_name(ElementKind kind, AttrName name) {
  if (kind == ElementKind::Stop) {
    if (name == AttrName::Fill) return "stop-color";
    if (name == AttrName::Opacity) return "stop-opacity";
  }
  return attr_name_text(name);
}

void serialize_node(const Node& node, std::string& out);

void serialize_children(const std::vector<Node>& nodes, std::string& out) {
  bool in_defs = false;
  for (const auto& child : nodes) {
    if (child.in_defs != in_defs) {
      out += child.in_defs ? "<defs>" : "</defs>";
      in_defs = child.in_defs;
    }
    serialize_node(child, out);
  }
  if (in_defs) out += "</defs>";
}

void serialize_node(const Node& node, std::string& out) {
  const auto tag = tag_name(node.kind);
  out += '<';
  out += tag;
  for (const auto& attr : node.attrs) {
    out += ' ';
    out += xml_attr_name(node.kind, attr.name);
    out += "=\"";
    out += xml_escape(format_value(attr.name, attr.value));
    out += '"';
  }
  if (is_gradient(node.kind)) out += " gradientUnits=\"userSpaceOnUse\"";
  if (node.children.empty() && node.text.empty()) {
    out += "/>";
    return;
  }
  out += '>';
  out += xml_escape(node.text);
  serialize_children(node.children, out);
  out += "</";
  out += tag;
  out += '>';
}

bool value_matches(AttrName name, const AttrValue& v) {
  switch (name) {
    case AttrName::Id:
    case AttrName::StrokeLinecap:
      return std::holds_alternative<Text>(v);
    case AttrName::D:
      return std::holds_alternative<PathData>(v);
    case AttrName::Fill:
    case AttrName::Stroke:
      return std::holds_alternative<Color>(v) || std::holds_alternative<Reference>(v);
    case AttrName::Transform:
    case AttrName::GradientTransform:
      return std::holds_alternative<TransformList>(v);
    case AttrName::Points:
      return std::holds_alternative<Points>(v) && std::get<Points>(v).coords.size() % 2 == 0;
    case AttrName::Href:
      return std::holds_alternative<Reference>(v);
    case AttrName::Rotate:
      return std::holds_alternative<Number>(v) || std::holds_alternative<Text>(v);
    default:
      return std::holds_alternative<Number>(v);
  }
}

void check_node(const Node& node, const Node* parent) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::UnsupportedNode,
                std::string(tag_name(node.kind)) + ": " + what);
  };
  if (!node.children.empty() && !is_container(node.kind)) fail("only groups and gradients have children");
  if (node.kind == ElementKind::Stop && (!parent || !is_gradient(parent->kind)))
    fail("stop outside a gradient");
  if (parent && is_gradient(parent->kind) && node.kind != ElementKind::Stop)
    fail("gradients contain only stops");
  if (!node.text.empty() && node.kind != ElementKind::Text) fail("character data outside text");
  for (std::size_t i = 0; i < node.attrs.size(); ++i) {
    const auto& a = node.attrs[i];
    if (i > 0 && node.attrs[i - 1].name >= a.name) fail("attributes out of order");
    if (!value_matches(a.name, a.value))
      fail("wrong value type for " + std::string(attr_name_text(a.name)));
    if (auto* t = std::get_if<Text>(&a.value); t && t->value.empty())
      fail("empty text value");
    if (auto* n = std::get_if<Number>(&a.value); n && !std::isfinite(n->value))
      fail("non-finite number");
  }
  for (const auto& c : node.children) check_node(c, &node);
}

void count_into(const std::vector<Node>& nodes, std::map<std::string, std::size_t>& counts) {
  for (const auto& n : nodes) {
    ++counts[std::string(tag_name(n.kind))];
    count_into(n.children, counts);
  }
}

}  // namespace

std::string_view tag_name(ElementKind kind) { return kTags[static_cast<std::size_t>(kind)]; }

std::optional<ElementKind> element_kind_from_tag(std::string_view tag) {
  for (std::size_t i = 0; i < kTags.size(); ++i) {
    if (kTags[i] == tag) return static_cast<ElementKind>(i);
  }
  return std::nullopt;
}

std::string_view attr_name_text(AttrName name) {
  return kAttrNames[static_cast<std::size_t>(name)];
}

std::optional<AttrName> attr_name_from_text(std::string_view text) {
  for (std::size_t i = 0; i < kAttrNames.size(); ++i) {
    if (kAttrNames[i] == text) return static_cast<AttrName>(i);
  }
  return std::nullopt;
}

bool is_geometry(ElementKind kind) { return kind <= ElementKind::Text; }

bool is_gradient(ElementKind kind) {
  return kind == ElementKind::LinearGradient || kind == ElementKind::RadialGradient;
}

bool is_container(ElementKind kind) { return kind == ElementKind::Group || is_gradient(kind); }

const AttrValue* Node::find(AttrName name) const {
  auto it = std::lower_bound(attrs.begin(), attrs.end(), name,
                             [](const Attribute& a, AttrName n) { return a.name < n; });
  return (it != attrs.end() && it->name == name) ? &it->value : nullptr;
}

AttrValue* Node::find(AttrName name) {
  return const_cast<AttrValue*>(static_cast<const Node*>(this)->find(name));
}

void Node::set(AttrName name, AttrValue value) {
  auto it = std::lower_bound(attrs.begin(), attrs.end(), name,
                             [](const Attribute& a, AttrName n) { return a.name < n; });
  if (it != attrs.end() && it->name == name) {
    it->value = std::move(value);
  } else {
    attrs.insert(it, Attribute{name, std::move(value)});
  }
}

bool Node::erase(AttrName name) {
  auto it = std::lower_bound(attrs.begin(), attrs.end(), name,
                             [](const Attribute& a, AttrName n) { return a.name < n; });
  if (it == attrs.end() || it->name != name) return false;
  attrs.erase(it);
  return true;
}

std::optional<double> Node::number(AttrName name) const {
  if (const auto* v = find(name)) {
    if (const auto* n = std::get_if<Number>(v)) return n->value;
  }
  return std::nullopt;
}

std::string format_value(AttrName name, const AttrValue& value) {
  struct Visitor {
    AttrName name;
    std::string operator()(const Number& n) const { return format_number(n.value); }
    std::string operator()(const Color& c) const { return c.rgb ? hex_color(*c.rgb) : "none"; }
    std::string operator()(const PathData& p) const { return format_path_data(p); }
    std::string operator()(const Points& p) const {
      std::string s;
      for (std::size_t i = 0; i < p.coords.size(); ++i) {
        if (i) s += ' ';
        s += format_number(p.coords[i]);
      }
      return s;
    }
    std::string operator()(const Text& t) const { return t.value; }
    std::string operator()(const Reference& r) const {
      return name == AttrName::Href ? "#" + r.id : "url(#" + r.id + ")";
    }
    std::string operator()(const TransformList& t) const { return format_transform(t); }
  };
  return std::visit(Visitor{name}, value);
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string canonical_serialize(const SvgDocument& doc) {
  const auto& vb = doc.view_box;
  std::string out = "<svg viewBox=\"";
  out += format_number(vb.min_x) + ' ' + format_number(vb.min_y) + ' ' +
         format_number(vb.width) + ' ' + format_number(vb.height);
  out += "\">";
  serialize_children(doc.elements, out);
  out += "</svg>";
  return out;
}

std::map<std::string, std::size_t> count_elements(const SvgDocument& doc) {
  std::map<std::string, std::size_t> counts;
  count_into(doc.elements, counts);
  return counts;
}

std::size_t count_primitives(const std::vector<Node>& nodes) {
  std::size_t n = 0;
  for (const auto& node : nodes) {
    if (is_geometry(node.kind)) ++n;
    n += count_primitives(node.children);
  }
  return n;
}

void check_invariants(const SvgDocument& doc) {
  if (!(doc.view_box.width > 0) || !(doc.view_box.height > 0))
    throw Error(ErrorCode::UnsupportedNode, "viewBox must have positive size");
  for (const auto& n : doc.elements) check_node(n, nullptr);
}

}  // namespace svgx
