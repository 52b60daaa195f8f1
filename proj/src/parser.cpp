#include "svgx/parser.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "svgx/error.hpp"
#include "svgx/geometry.hpp"
#include "svgx/number.hpp"
#include "xml.hpp"

namespace svgx {

namespace {

using xml::XmlNode;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Length {
  double value = 0;
  bool percent = false;
};

// Number with an optional absolute unit or '%'. Font-relative units are
// rejected because their value depends on the rendering context.
std::optional<Length> parse_length_any(std::string_view text) {
  text = trim(text);
  std::size_t pos = 0;
  auto v = scan_number(text, pos);
  if (!v) return std::nullopt;
  const auto unit = trim(text.substr(pos));
  if (unit.empty() || unit == "px") return Length{*v, false};
  if (unit == "%") return Length{*v, true};
  if (unit == "pt") return Length{*v * 4.0 / 3.0, false};
  if (unit == "pc") return Length{*v * 16.0, false};
  if (unit == "in") return Length{*v * 96.0, false};
  if (unit == "cm") return Length{*v * 96.0 / 2.54, false};
  if (unit == "mm") return Length{*v * 96.0 / 25.4, false};
  return std::nullopt;
}

std::optional<double> parse_length(std::string_view text) {
  auto l = parse_length_any(text);
  if (!l || l->percent) return std::nullopt;
  return l->value;
}

// Opacity-like value: number or percentage mapped onto [0,1].
std::optional<double> parse_fraction(std::string_view text) {
  auto l = parse_length_any(text);
  if (!l) return std::nullopt;
  return l->percent ? l->value / 100.0 : l->value;
}

std::optional<std::string> href_target(std::string_view v) {
  v = trim(v);
  if (v.size() < 2 || v[0] != '#') return std::nullopt;
  return std::string(v.substr(1));
}

// url(#id) with optional quotes and trailing fallback.
std::optional<std::string> url_target(std::string_view v) {
  v = trim(v);
  if (!v.starts_with("url(")) return std::nullopt;
  const auto close = v.find(')');
  if (close == std::string_view::npos) return std::nullopt;
  auto inner = trim(v.substr(4, close - 4));
  if (inner.size() >= 2 && (inner.front() == '"' || inner.front() == '\'') && inner.back() == inner.front())
    inner = inner.substr(1, inner.size() - 2);
  return href_target(inner);
}

const std::string* href_attr(const XmlNode& x) {
  for (const auto& a : x.attrs) {
    if (xml::local_name(a.name) == "href" &&
        (xml::prefix(a.name).empty() || xml::prefix(a.name) == "xlink"))
      return &a.value;
  }
  return nullptr;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::size_t count_descendants(const XmlNode& x) {
  std::size_t n = 0;
  for (const auto& c : x.children) {
    if (c.type == xml::NodeType::Element) n += 1 + count_descendants(c);
  }
  return n;
}

void count_tags(const XmlNode& x, std::map<std::string, std::size_t>& counts) {
  for (const auto& c : x.children) {
    if (c.type != xml::NodeType::Element) continue;
    std::string key = xml::prefix(c.name) == "svg" ? std::string(xml::local_name(c.name)) : c.name;
    ++counts[key];
    count_tags(c, counts);
  }
}

std::string_view element_local(const XmlNode& x) {
  return xml::prefix(x.name).empty() || xml::prefix(x.name) == "svg" ? xml::local_name(x.name)
                                                                       : std::string_view{};
}

bool applicable(ElementKind kind, AttrName name) {
  using A = AttrName;
  using K = ElementKind;
  if (kind == K::Stop) return name == A::Id || name == A::Offset || name == A::Fill || name == A::Opacity;
  if (is_gradient(kind)) return false;  // gradient attributes are materialized separately
  switch (name) {
    case A::Id: case A::Fill: case A::StrokeWidth: case A::StrokeLinecap:
    case A::Stroke: case A::Opacity: case A::Transform:
      return true;
    case A::D: return kind == K::Path;
    case A::Cx: case A::Cy: return kind == K::Circle || kind == K::Ellipse;
    case A::R: return kind == K::Circle;
    case A::Rx: case A::Ry: return kind == K::Ellipse || kind == K::Rect;
    case A::Width: case A::Height: return kind == K::Rect;
    case A::X: case A::Y: return kind == K::Rect || kind == K::Text;
    case A::Points: return kind == K::Polygon || kind == K::Polyline;
    case A::X1: case A::Y1: case A::X2: case A::Y2: return kind == K::Line;
    case A::Rotate: return kind == K::Text;
    case A::FontSize: return kind == K::Text || kind == K::Group;
    default: return false;
  }
}

struct Context {
  bool in_defs = false;
  Color current_color = Color::hex(0);
};

class Builder {
 public:
  Builder(ParseResult& result, const std::map<std::string, const XmlNode*, std::less<>>& gradients)
      : r_(result), gradient_xml_(gradients) {}

  // Typed value for a presentation/geometry attribute, or nullopt when the
  // text cannot be represented.
  std::optional<AttrValue> coerce(AttrName name, std::string_view raw, const Context& ctx) {
    const auto v = trim(raw);
    if (v.empty()) return std::nullopt;
    switch (name) {
      case AttrName::Id:
        return Text{std::string(v)};
      case AttrName::D:
        return parse_path_data(v);  // BadPathData propagates
      case AttrName::Fill:
      case AttrName::Stroke: {
        if (v == "inherit") return std::nullopt;
        if (v == "currentColor" || v == "currentcolor") return ctx.current_color;
        if (auto id = url_target(v)) return Reference{*id};
        if (auto c = parse_color(v)) return *c;
        return std::nullopt;
      }
      case AttrName::StrokeLinecap:
        if (v == "butt" || v == "round" || v == "square") return Text{std::string(v)};
        return std::nullopt;
      case AttrName::Opacity:
      case AttrName::Offset:
        if (auto f = parse_fraction(v)) return Number{*f};
        return std::nullopt;
      case AttrName::Transform:
      case AttrName::GradientTransform:
        if (auto t = parse_transform(v)) return *t;
        return std::nullopt;
      case AttrName::Points: {
        Points pts;
        std::size_t pos = 0;
        while (true) {
          skip_separators(v, pos);
          if (pos >= v.size()) break;
          auto n = scan_number(v, pos);
          if (!n) break;
          pts.coords.push_back(*n);
        }
        // An odd trailing coordinate is ignored, as renderers do.
        if (pts.coords.size() % 2) pts.coords.pop_back();
        if (pts.coords.empty()) return std::nullopt;
        return pts;
      }
      case AttrName::Href:
        if (auto id = href_target(v)) return Reference{*id};
        return std::nullopt;
      case AttrName::Rotate: {
        if (auto n = parse_number(v)) return Number{*n};
        return Text{collapse_whitespace(v)};
      }
      default:
        if (auto n = parse_length(v)) return Number{*n};
        return std::nullopt;
    }
  }

  // Attributes of one element after namespace mapping and style splitting.
  // Unrepresentable ones are reported as dropped.
  Node make_node(ElementKind kind, const XmlNode& x, Context& ctx) {
    Node node;
    node.kind = kind;
    node.in_defs = ctx.in_defs && kind != ElementKind::Stop;
    const std::string tag(tag_name(kind));

    std::vector<std::pair<std::string, std::string>> decls;
    for (const auto& a : x.attrs) {
      const auto pfx = xml::prefix(a.name);
      const auto local = xml::local_name(a.name);
      if (a.name == "xmlns" || pfx == "xmlns") continue;
      if (pfx == "xlink" && local == "href") {
        decls.emplace_back("href", a.value);
      } else if (!pfx.empty()) {
        drop(tag, a.name, "unsupported attribute");
      } else if (a.name == "style") {
        split_style(a.value, decls);
      } else {
        decls.emplace_back(a.name, a.value);
      }
    }
    // Later declarations win: style properties follow attributes.
    for (const auto& [name, value] : decls) {
      if (name == "color") {
        if (auto c = parse_color(value); c && !c->is_none()) ctx.current_color = *c;
      }
    }
    for (const auto& [raw_name, value] : decls) {
      std::string name = raw_name;
      if (name == "color") continue;
      if (kind == ElementKind::Stop) {
        if (name == "stop-color") name = "fill";
        else if (name == "stop-opacity") name = "opacity";
        else if (name == "fill" || name == "opacity") {
          drop(tag, raw_name, "not applicable");
          continue;
        }
      }
      if (is_gradient(kind)) {
        if (name != "id" && name != "href" && name != "gradientUnits" && name != "gradientTransform" &&
            name != "x1" && name != "y1" && name != "x2" && name != "y2" && name != "cx" &&
            name != "cy" && name != "r" && name != "fx" && name != "fy" && name != "fr")
          drop(tag, raw_name, "unsupported attribute");
        continue;
      }
      auto attr = attr_name_from_text(name);
      if (!attr) {
        drop(tag, raw_name, "unsupported attribute");
        continue;
      }
      if (!applicable(kind, *attr)) {
        drop(tag, raw_name, "not applicable");
        continue;
      }
      auto typed = coerce(*attr, value, ctx);
      if (!typed) {
        if (*attr == AttrName::Fill || *attr == AttrName::Stroke) {
          // An explicit "inherit" is the same as no attribute.
          if (trim(value) == "inherit") continue;
        }
        drop(tag, raw_name, "invalid value");
        node.erase(*attr);
        continue;
      }
      if (auto* p = std::get_if<PathData>(&*typed); p && p->empty()) {
        node.erase(*attr);
        continue;
      }
      node.set(*attr, std::move(*typed));
    }
    if (const auto* id = x.attr("id"); id && !trim(*id).empty()) ids_.insert(std::string(trim(*id)));
    if (is_gradient(kind)) materialize_gradient(node, x);
    return node;
  }

  void drop(const std::string& element, const std::string& name, const std::string& reason) {
    r_.dropped_attributes.push_back({element, name, reason});
  }

  static void split_style(std::string_view style,
                          std::vector<std::pair<std::string, std::string>>& out) {
    std::size_t start = 0;
    while (start < style.size()) {
      auto end = style.find(';', start);
      if (end == std::string_view::npos) end = style.size();
      auto decl = style.substr(start, end - start);
      const auto colon = decl.find(':');
      if (colon != std::string_view::npos) {
        auto key = trim(decl.substr(0, colon));
        auto value = trim(decl.substr(colon + 1));
        if (auto bang = value.find("!important"); bang != std::string_view::npos)
          value = trim(value.substr(0, bang));
        if (!key.empty()) out.emplace_back(std::string(key), std::string(value));
      }
      start = end + 1;
    }
  }

  void foreign(const XmlNode& x, ForeignReason reason, bool skip_subtree) {
    ForeignNode f;
    f.tag_name = x.name;
    f.reason = reason;
    if (const auto* id = x.attr("id")) {
      f.id = std::string(trim(*id));
      if (!f.id.empty()) foreign_ids_.insert(f.id);
    }
    if (skip_subtree) {
      f.skipped_descendants = count_descendants(x);
      collect_ids(x);
    }
    r_.foreign.push_back(std::move(f));
  }

  void collect_ids(const XmlNode& x) {
    for (const auto& c : x.children) {
      if (c.type != xml::NodeType::Element) continue;
      if (const auto* id = c.attr("id"); id && !trim(*id).empty()) foreign_ids_.insert(std::string(trim(*id)));
      collect_ids(c);
    }
  }

  void misc(const XmlNode& c) {
    if (c.type == xml::NodeType::Comment) {
      r_.foreign.push_back({"#comment", ForeignReason::Comment, {}, 0});
    } else if (c.type == xml::NodeType::ProcessingInstruction) {
      r_.foreign.push_back({c.name, ForeignReason::Declaration, {}, 0});
    } else if (c.type == xml::NodeType::Doctype) {
      r_.foreign.push_back({"!DOCTYPE", ForeignReason::Doctype, {}, 0});
    }
  }

  // Builds the supported children of `x` into `out`.
  void children(const XmlNode& x, std::optional<ElementKind> parent, const Context& ctx,
                std::vector<Node>& out) {
    for (const auto& c : x.children) {
      if (c.type != xml::NodeType::Element) {
        misc(c);
        continue;
      }
      const auto local = element_local(c);
      if (local.empty()) {
        foreign(c, ForeignReason::EditorMetadata, true);
        continue;
      }
      const auto kind = element_kind_from_tag(local);
      const bool in_gradient = parent && is_gradient(*parent);
      if (kind && (*kind == ElementKind::Stop) == in_gradient) {
        Context inner = ctx;
        Node node = make_node(*kind, c, inner);
        if (*kind == ElementKind::Text) {
          std::string raw;
          text_content(c, raw);
          node.text = collapse_whitespace(raw);
        } else if (is_container(*kind)) {
          children(c, kind, inner, node.children);
        } else {
          for (const auto& gc : c.children) {
            if (gc.type == xml::NodeType::Element) foreign(gc, ForeignReason::UnsupportedTag, true);
            else misc(gc);
          }
        }
        out.push_back(std::move(node));
        continue;
      }
      if (in_gradient) {
        foreign(c, ForeignReason::UnsupportedTag, true);
      } else if (local == "defs") {
        foreign(c, ForeignReason::UnsupportedTag, false);
        Context inner = ctx;
        inner.in_defs = true;
        children(c, parent, inner, out);
      } else if (local == "a" || local == "switch") {
        foreign(c, ForeignReason::UnsupportedTag, false);
        children(c, parent, ctx, out);
      } else if (local == "style") {
        foreign(c, ForeignReason::StyleSheet, true);
      } else {
        foreign(c, ForeignReason::UnsupportedTag, true);
      }
    }
  }

  void text_content(const XmlNode& x, std::string& out) {
    for (const auto& c : x.children) {
      if (c.type == xml::NodeType::Text) {
        out += c.text;
      } else if (c.type == xml::NodeType::Element) {
        const auto local = element_local(c);
        if (local == "tspan" || local == "textPath") {
          foreign(c, ForeignReason::UnsupportedTag, false);
          text_content(c, out);
        } else {
          foreign(c, ForeignReason::UnsupportedTag, true);
        }
      } else {
        misc(c);
      }
    }
  }

  // Gradient geometry after resolving href inheritance, defaults,
  // percentages and the unit system.
  void materialize_gradient(Node& node, const XmlNode& x) {
    const bool radial = node.kind == ElementKind::RadialGradient;
    const auto* units = chain_attr(x, "gradientUnits");
    const bool obb = !(units && trim(*units) == "userSpaceOnUse");
    const double w = view_box_.width, h = view_box_.height;
    const double diag = std::sqrt((w * w + h * h) / 2.0);

    struct Coord {
      const char* name;
      AttrName attr;
      const char* fallback;  // nullptr: leave absent
      char axis;             // 'x', 'y' or 'r'
    };
    static constexpr Coord kLinear[] = {{"x1", AttrName::X1, "0%", 'x'},
                                        {"y1", AttrName::Y1, "0%", 'y'},
                                        {"x2", AttrName::X2, "100%", 'x'},
                                        {"y2", AttrName::Y2, "0%", 'y'}};
    static constexpr Coord kRadial[] = {{"cx", AttrName::Cx, "50%", 'x'},
                                        {"cy", AttrName::Cy, "50%", 'y'},
                                        {"r", AttrName::R, "50%", 'r'},
                                        {"fx", AttrName::Fx, nullptr, 'x'},
                                        {"fy", AttrName::Fy, nullptr, 'y'},
                                        {"fr", AttrName::Fr, nullptr, 'r'}};
    const std::span<const Coord> coords = radial ? std::span<const Coord>(kRadial)
                                                 : std::span<const Coord>(kLinear);
    for (const auto& c : coords) {
      const auto* raw = chain_attr(x, c.name);
      std::optional<Length> len;
      if (raw) len = parse_length_any(*raw);
      if (raw && !len) drop(std::string(tag_name(node.kind)), c.name, "invalid value");
      if (!len) {
        if (!c.fallback) continue;
        len = parse_length_any(c.fallback);
      }
      double v = len->value;
      if (len->percent) {
        v /= 100.0;
        if (!obb) v *= c.axis == 'x' ? w : c.axis == 'y' ? h : diag;
      }
      node.set(c.attr, Number{v});
    }
    if (const auto* t = chain_attr(x, "gradientTransform")) {
      if (auto list = parse_transform(*t); list && !list->ops.empty()) {
        node.set(AttrName::GradientTransform, *list);
      } else if (!list) {
        drop(std::string(tag_name(node.kind)), "gradientTransform", "invalid value");
      }
    }
    if (const auto* id = x.attr("id"); id && !trim(*id).empty()) {
      node.set(AttrName::Id, Text{std::string(trim(*id))});
      if (obb) obb_ids_.insert(std::string(trim(*id)));
    }
    bool own_stops = false;
    for (const auto& c : x.children) {
      if (c.type == xml::NodeType::Element && element_local(c) == "stop") own_stops = true;
    }
    if (!own_stops) {
      if (const auto* href = href_attr(x)) {
        if (auto id = href_target(*href)) node.set(AttrName::Href, Reference{*id});
      }
    }
  }

  const std::string* chain_attr(const XmlNode& start, std::string_view name) const {
    std::set<const XmlNode*> seen;
    const XmlNode* g = &start;
    while (g && seen.insert(g).second) {
      if (const auto* v = g->attr(name)) return v;
      const auto* href = href_attr(*g);
      if (!href) break;
      auto id = href_target(*href);
      if (!id) break;
      auto it = gradient_xml_.find(*id);
      g = it == gradient_xml_.end() ? nullptr : it->second;
    }
    return nullptr;
  }

  void set_view_box(const ViewBox& vb) { view_box_ = vb; }

  // Resolves paint references and converts objectBoundingBox gradients
  // to user space using each referencing element's bounds.
  void resolve_references(SvgDocument& doc) {
    std::map<std::string, Node*> gradients;
    index_gradients(doc.elements, gradients);

    struct Conversion {
      std::string source_id;
      std::string target_id;
      Box box;
    };
    std::vector<Conversion> conversions;
    std::set<std::string> used_ids = ids_;
    used_ids.insert(foreign_ids_.begin(), foreign_ids_.end());

    auto resolve = [&](Node& node, auto& self) -> void {
      for (auto paint : {AttrName::Fill, AttrName::Stroke}) {
        auto* v = node.find(paint);
        if (!v || !std::holds_alternative<Reference>(*v) || node.kind == ElementKind::Stop) continue;
        const std::string id = std::get<Reference>(*v).id;
        const std::string tag(tag_name(node.kind));
        if (gradients.count(id)) {
          if (!obb_ids_.count(id)) continue;
          auto box = element_bounds(node);
          if (!box) {
            drop(tag, std::string(attr_name_text(paint)), "objectBoundingBox paint without bounds");
            node.erase(paint);
            continue;
          }
          if (!(box->width() > 0) || !(box->height() > 0)) {
            node.set(paint, Color::none());
            continue;
          }
          std::string target;
          for (const auto& c : conversions) {
            if (c.source_id == id && c.box.min_x == box->min_x && c.box.min_y == box->min_y &&
                c.box.max_x == box->max_x && c.box.max_y == box->max_y)
              target = c.target_id;
          }
          if (target.empty()) {
            const bool first = std::none_of(conversions.begin(), conversions.end(),
                                            [&](const Conversion& c) { return c.source_id == id; });
            target = id;
            for (int k = 2; !first; ++k) {
              target = id + "-" + std::to_string(k);
              if (!used_ids.count(target)) break;
            }
            used_ids.insert(target);
            conversions.push_back({id, target, *box});
          }
          node.set(paint, Reference{target});
        } else if (foreign_ids_.count(id)) {
          drop(tag, std::string(attr_name_text(paint)), "unsupported paint server");
          node.erase(paint);
        }
      }
      if (is_gradient(node.kind)) {
        if (const auto* href = node.find(AttrName::Href)) {
          if (!gradients.count(std::get<Reference>(*href).id)) {
            drop(std::string(tag_name(node.kind)), "href", "unsupported link target");
            node.erase(AttrName::Href);
          }
        }
      }
      for (auto& c : node.children) self(c, self);
    };
    for (auto& n : doc.elements) resolve(n, resolve);

    // Clones first, from the unconverted originals.
    std::vector<std::pair<std::string, Node>> clones;
    for (const auto& c : conversions) {
      if (c.target_id == c.source_id) continue;
      Node copy = *gradients.at(c.source_id);
      copy.set(AttrName::Id, Text{c.target_id});
      to_user_space(copy, c.box);
      clones.emplace_back(c.source_id, std::move(copy));
    }
    for (const auto& c : conversions) {
      if (c.target_id == c.source_id) to_user_space(*gradients.at(c.source_id), c.box);
    }
    for (auto& [source, clone] : clones) insert_after(doc.elements, source, std::move(clone));
  }

  static void to_user_space(Node& gradient, const Box& box) {
    TransformList list;
    list.ops.push_back({TransformKind::Matrix,
                        {box.width(), 0, 0, box.height(), box.min_x, box.min_y}});
    if (const auto* v = gradient.find(AttrName::GradientTransform)) {
      const auto& old = std::get<TransformList>(*v);
      list.ops.insert(list.ops.end(), old.ops.begin(), old.ops.end());
    }
    gradient.set(AttrName::GradientTransform, std::move(list));
  }

  static void index_gradients(std::vector<Node>& nodes, std::map<std::string, Node*>& out) {
    for (auto& n : nodes) {
      if (is_gradient(n.kind)) {
        if (const auto* id = n.find(AttrName::Id)) out.emplace(std::get<Text>(*id).value, &n);
      }
      index_gradients(n.children, out);
    }
  }

  static bool insert_after(std::vector<Node>& nodes, const std::string& id, Node clone) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (is_gradient(nodes[i].kind)) {
        const auto* v = nodes[i].find(AttrName::Id);
        if (v && std::get<Text>(*v).value == id) {
          nodes.insert(nodes.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::move(clone));
          return true;
        }
      }
      if (insert_after(nodes[i].children, id, clone)) return true;
    }
    return false;
  }

 private:
  ParseResult& r_;
  const std::map<std::string, const XmlNode*, std::less<>>& gradient_xml_;
  ViewBox view_box_;
  std::set<std::string> ids_;
  std::set<std::string> foreign_ids_;
  std::set<std::string> obb_ids_;
};

void index_gradient_xml(const XmlNode& x, std::map<std::string, const XmlNode*, std::less<>>& out) {
  for (const auto& c : x.children) {
    if (c.type != xml::NodeType::Element) continue;
    const auto local = element_local(c);
    if (local == "linearGradient" || local == "radialGradient") {
      if (const auto* id = c.attr("id")) out.emplace(std::string(trim(*id)), &c);
    }
    index_gradient_xml(c, out);
  }
}

std::optional<ViewBox> parse_view_box(std::string_view v) {
  double vals[4];
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    if (i) skip_separators(v, pos);
    auto n = scan_number(v, pos);
    if (!n) return std::nullopt;
    vals[i] = *n;
  }
  if (!trim(v.substr(pos)).empty()) return std::nullopt;
  if (!(vals[2] > 0) || !(vals[3] > 0)) return std::nullopt;
  return ViewBox{vals[0], vals[1], vals[2], vals[3]};
}

}  // namespace

std::string_view to_string(ForeignReason reason) {
  switch (reason) {
    case ForeignReason::UnsupportedTag: return "unsupported_tag";
    case ForeignReason::EditorMetadata: return "editor_metadata";
    case ForeignReason::StyleSheet: return "style_sheet";
    case ForeignReason::Declaration: return "declaration";
    case ForeignReason::Comment: return "comment";
    case ForeignReason::Doctype: return "doctype";
  }
  return "unknown";
}

std::string ledger_key(const ForeignNode& node) {
  switch (node.reason) {
    case ForeignReason::Declaration:
    case ForeignReason::Comment:
    case ForeignReason::Doctype:
      return std::string(to_string(node.reason));
    default:
      return std::string(to_string(node.reason)) + ":" + node.tag_name;
  }
}

ParseResult parse_svg(const RawSvg& raw) {
  ParseResult result;
  result.input_bytes = raw.xml_text.size();
  const auto top = xml::parse(raw.xml_text);

  const XmlNode* root = nullptr;
  for (const auto& n : top) {
    if (n.type == xml::NodeType::Element) root = &n;
  }
  if (!root || xml::local_name(root->name) != "svg" ||
      !(xml::prefix(root->name).empty() || xml::prefix(root->name) == "svg"))
    throw Error(ErrorCode::NoRootSvg, "root element is not <svg>", root ? root->offset : 0);

  std::map<std::string, const XmlNode*, std::less<>> gradient_xml;
  index_gradient_xml(*root, gradient_xml);
  count_tags(*root, result.input_element_counts);

  Builder builder(result, gradient_xml);
  for (const auto& n : top) {
    if (&n != root) builder.misc(n);
  }

  std::optional<ViewBox> vb;
  if (const auto* v = root->attr("viewBox")) vb = parse_view_box(*v);
  if (!vb) {
    const auto* w = root->attr("width");
    const auto* h = root->attr("height");
    const double wv = w ? parse_length(*w).value_or(0.0) : 0.0;
    const double hv = h ? parse_length(*h).value_or(0.0) : 0.0;
    if (!(wv > 0) || !(hv > 0))
      throw Error(ErrorCode::NoCanvasSize, "no viewBox and no usable width/height on <svg>",
                  root->offset);
    vb = ViewBox{0, 0, wv, hv};
  }
  result.doc.view_box = *vb;
  builder.set_view_box(*vb);

  // Root presentation attributes: inheritable ones move to top-level
  // children, the rest wrap the content in a group.
  XmlNode root_attrs = *root;
  root_attrs.children.clear();
  root_attrs.attrs.erase(std::remove_if(root_attrs.attrs.begin(), root_attrs.attrs.end(),
                                        [](const xml::Attr& a) {
                                          return a.name == "viewBox" || a.name == "width" ||
                                                 a.name == "height" || a.name == "id" ||
                                                 a.name == "version" || a.name == "x" ||
                                                 a.name == "y" || a.name == "preserveAspectRatio" ||
                                                 a.name == "baseProfile" ||
                                                 a.name == "enable-background";
                                        }),
                         root_attrs.attrs.end());
  Context ctx;
  const Node inherited = builder.make_node(ElementKind::Group, root_attrs, ctx);
  builder.children(*root, std::nullopt, ctx, result.doc.elements);

  Node wrapper;
  wrapper.kind = ElementKind::Group;
  for (const auto& a : inherited.attrs) {
    if (a.name == AttrName::Opacity || a.name == AttrName::Transform) {
      wrapper.set(a.name, a.value);
      continue;
    }
    for (auto& n : result.doc.elements) {
      if ((is_geometry(n.kind) || n.kind == ElementKind::Group) && !n.has(a.name) &&
          applicable(n.kind, a.name) && a.name != AttrName::Id)
        n.set(a.name, a.value);
    }
  }
  if (!wrapper.attrs.empty()) {
    wrapper.children = std::move(result.doc.elements);
    result.doc.elements.clear();
    result.doc.elements.push_back(std::move(wrapper));
  }

  builder.resolve_references(result.doc);
  return result;
}

}  // namespace svgx
