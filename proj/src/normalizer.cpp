#include "svgx/normalizer.hpp"

#include <algorithm>
#include <set>

#include "svgx/geometry.hpp"
#include "svgx/number.hpp"

namespace svgx {

namespace {

// ---------------------------------------------------------------- strip

std::string key(std::string_view what, ElementKind kind) {
  return std::string(what) + ":" + std::string(tag_name(kind));
}

// Counts a subtree about to be deleted; gradients are salvaged, not removed.
void count_subtree(const Node& node, std::string_view what, NormalizationReport& report) {
  if (is_gradient(node.kind)) return;
  ++report.removed[key(what, node.kind)];
  for (const auto& c : node.children) count_subtree(c, what, report);
}

// Gradients found inside a subtree that is about to be deleted; they stay
// usable as paint servers.
void salvage_gradients(Node& node, std::vector<Node>& out) {
  for (auto& c : node.children) {
    if (is_gradient(c.kind)) {
      out.push_back(std::move(c));
    } else {
      salvage_gradients(c, out);
    }
  }
}

void hoist_defs(std::vector<Node>& nodes, std::vector<Node>& hoisted, NormalizationReport& report) {
  std::vector<Node> kept;
  kept.reserve(nodes.size());
  for (auto& n : nodes) {
    if (!n.in_defs) {
      hoist_defs(n.children, hoisted, report);
      kept.push_back(std::move(n));
      continue;
    }
    if (is_gradient(n.kind)) {
      n.in_defs = false;
      hoisted.push_back(std::move(n));
      continue;
    }
    count_subtree(n, "unused", report);
    std::vector<Node> inner;
    salvage_gradients(n, inner);
    for (auto& g : inner) g.in_defs = false;
    for (auto& g : inner) hoisted.push_back(std::move(g));
  }
  nodes = std::move(kept);
}

struct Paint {
  const AttrValue* fill = nullptr;
  const AttrValue* stroke = nullptr;
};

bool is_none(const AttrValue* v) {
  if (!v) return false;
  const auto* c = std::get_if<Color>(v);
  return c && c->is_none();
}

bool invisible(const Node& n, const Paint& inherited) {
  if (auto op = n.number(AttrName::Opacity); op && *op <= 0) return true;
  if (n.kind == ElementKind::Group) return false;
  if (n.kind == ElementKind::Path && !n.has(AttrName::D)) return true;
  const AttrValue* fill = n.find(AttrName::Fill);
  if (!fill) fill = inherited.fill;
  const AttrValue* stroke = n.find(AttrName::Stroke);
  if (!stroke) stroke = inherited.stroke;
  return is_none(fill) && (!stroke || is_none(stroke));
}

void prune(std::vector<Node>& nodes, const Paint& inherited, std::vector<Node>& salvaged,
           NormalizationReport& report) {
  std::vector<Node> kept;
  kept.reserve(nodes.size());
  for (auto& n : nodes) {
    if (is_gradient(n.kind)) {
      kept.push_back(std::move(n));
      continue;
    }
    if (invisible(n, inherited)) {
      salvage_gradients(n, salvaged);
      count_subtree(n, "invisible", report);
      continue;
    }
    if (n.kind == ElementKind::Group) {
      Paint inner = inherited;
      if (const auto* f = n.find(AttrName::Fill)) inner.fill = f;
      if (const auto* s = n.find(AttrName::Stroke)) inner.stroke = s;
      prune(n.children, inner, salvaged, report);
      if (n.children.empty()) {
        ++report.removed["empty:g"];
        continue;
      }
    }
    kept.push_back(std::move(n));
  }
  nodes = std::move(kept);
}

void collect_paint_refs(const std::vector<Node>& nodes, std::set<std::string>& out) {
  for (const auto& n : nodes) {
    if (!is_gradient(n.kind)) {
      for (auto a : {AttrName::Fill, AttrName::Stroke}) {
        if (const auto* v = n.find(a)) {
          if (const auto* r = std::get_if<Reference>(v)) out.insert(r->id);
        }
      }
    }
    collect_paint_refs(n.children, out);
  }
}

void index_gradients(const std::vector<Node>& nodes, std::map<std::string, const Node*>& out) {
  for (const auto& n : nodes) {
    if (is_gradient(n.kind)) {
      if (const auto* v = n.find(AttrName::Id)) out.emplace(std::get<Text>(*v).value, &n);
    }
    index_gradients(n.children, out);
  }
}

void remove_unreferenced(std::vector<Node>& nodes, const std::set<std::string>& live,
                         NormalizationReport& report) {
  std::vector<Node> kept;
  kept.reserve(nodes.size());
  for (auto& n : nodes) {
    if (is_gradient(n.kind)) {
      const auto* v = n.find(AttrName::Id);
      if (!v || !live.count(std::get<Text>(*v).value)) {
        ++report.removed[key("unreferenced", n.kind)];
        report.removed[key("unreferenced", ElementKind::Stop)] += n.children.size();
        continue;
      }
    } else {
      remove_unreferenced(n.children, live, report);
      if (n.kind == ElementKind::Group && n.children.empty()) {
        ++report.removed["empty:g"];
        continue;
      }
    }
    kept.push_back(std::move(n));
  }
  nodes = std::move(kept);
}

void drop_ids(std::vector<Node>& nodes, std::size_t& rewritten) {
  for (auto& n : nodes) {
    if (!is_gradient(n.kind) && n.erase(AttrName::Id)) ++rewritten;
    drop_ids(n.children, rewritten);
  }
}

void unwrap(std::vector<Node>& nodes, NormalizationReport& report) {
  std::vector<Node> out;
  out.reserve(nodes.size());
  for (auto& n : nodes) {
    if (n.kind == ElementKind::Group) unwrap(n.children, report);
    if (n.kind == ElementKind::Group && n.attrs.empty()) {
      ++report.removed["unwrapped:g"];
      for (auto& c : n.children) out.push_back(std::move(c));
      continue;
    }
    out.push_back(std::move(n));
  }
  nodes = std::move(out);
}

// --------------------------------------------------------------- rescale

struct Mapping {
  double s = 1, tx = 0, ty = 0;
  double x(double v) const { return s * v + tx; }
  double y(double v) const { return s * v + ty; }
};

void map_path(PathData& path, const Mapping& m) {
  bool first = true;
  for (auto& cmd : path) {
    // A leading relative moveto is absolute by definition.
    const bool rel = cmd.relative && !first;
    first = false;
    auto& a = cmd.args;
    switch (cmd.op) {
      case PathOp::ClosePath:
        break;
      case PathOp::HLineTo:
        a[0] = rel ? m.s * a[0] : m.x(a[0]);
        break;
      case PathOp::VLineTo:
        a[0] = rel ? m.s * a[0] : m.y(a[0]);
        break;
      case PathOp::Arc:
        a[0] *= m.s;
        a[1] *= m.s;
        a[5] = rel ? m.s * a[5] : m.x(a[5]);
        a[6] = rel ? m.s * a[6] : m.y(a[6]);
        break;
      default:
        for (std::size_t i = 0; i + 1 < arity(cmd.op); i += 2) {
          a[i] = rel ? m.s * a[i] : m.x(a[i]);
          a[i + 1] = rel ? m.s * a[i + 1] : m.y(a[i + 1]);
        }
    }
  }
}

// T' with T'(m(p)) == m(T(p)): translate(t) conj_s(T) translate(-t).
TransformList map_transform(const TransformList& t, const Mapping& m) {
  TransformList out;
  const bool shift = m.tx != 0 || m.ty != 0;
  if (shift) out.ops.push_back({TransformKind::Translate, {m.tx, m.ty}});
  const auto conj = conjugate_by_scale(t, m.s);
  out.ops.insert(out.ops.end(), conj.ops.begin(), conj.ops.end());
  if (shift) out.ops.push_back({TransformKind::Translate, {-m.tx, -m.ty}});
  return out;
}

void map_node(Node& n, const Mapping& m) {
  const bool shift = m.tx != 0 || m.ty != 0;
  if (shift) {
    // Positional attributes that default to 0 must become explicit.
    auto materialize = [&](std::initializer_list<AttrName> names) {
      for (auto a : names) {
        if (!n.has(a)) n.set(a, Number{0});
      }
    };
    switch (n.kind) {
      case ElementKind::Rect:
      case ElementKind::Text:
        materialize({AttrName::X, AttrName::Y});
        break;
      case ElementKind::Circle:
      case ElementKind::Ellipse:
        materialize({AttrName::Cx, AttrName::Cy});
        break;
      case ElementKind::Line:
        materialize({AttrName::X1, AttrName::Y1, AttrName::X2, AttrName::Y2});
        break;
      default:
        break;
    }
  }
  for (auto& attr : n.attrs) {
    auto& v = attr.value;
    switch (attr.name) {
      case AttrName::D:
        map_path(std::get<PathData>(v), m);
        break;
      case AttrName::Points: {
        auto& c = std::get<Points>(v).coords;
        for (std::size_t i = 0; i + 1 < c.size(); i += 2) {
          c[i] = m.x(c[i]);
          c[i + 1] = m.y(c[i + 1]);
        }
        break;
      }
      case AttrName::Transform:
      case AttrName::GradientTransform:
        v = map_transform(std::get<TransformList>(v), m);
        break;
      case AttrName::Cx: case AttrName::X1: case AttrName::X2:
      case AttrName::X: case AttrName::Fx:
        std::get<Number>(v).value = m.x(std::get<Number>(v).value);
        break;
      case AttrName::Cy: case AttrName::Y1: case AttrName::Y2:
      case AttrName::Y: case AttrName::Fy:
        std::get<Number>(v).value = m.y(std::get<Number>(v).value);
        break;
      case AttrName::StrokeWidth: case AttrName::Width: case AttrName::Height:
      case AttrName::Rx: case AttrName::Ry: case AttrName::R:
      case AttrName::Fr: case AttrName::FontSize:
        std::get<Number>(v).value *= m.s;
        break;
      default:
        break;
    }
  }
  if (!is_gradient(n.kind)) {
    for (auto& c : n.children) map_node(c, m);
  }
}

bool subtree_has(const Node& n, const auto& pred) {
  if (pred(n)) return true;
  return std::any_of(n.children.begin(), n.children.end(),
                     [&](const Node& c) { return subtree_has(c, pred); });
}

// ---------------------------------------------------------------- relative

void relativize(PathData& path) {
  if (path.empty()) return;
  PathData out;
  out.reserve(path.size());
  std::size_t index = 0;
  for_each_absolute(path, [&](const PathCmd& abs, Point cur) {
    const PathCmd& orig = path[index];
    PathCmd cmd = orig;
    if (index == 0) {
      cmd = abs;  // leading moveto: the absolute form has the same numbers
    } else if (!orig.relative && orig.op != PathOp::ClosePath) {
      cmd.relative = true;
      auto& a = cmd.args;
      switch (orig.op) {
        case PathOp::HLineTo:
          a[0] -= cur.x;
          break;
        case PathOp::VLineTo:
          a[0] -= cur.y;
          break;
        case PathOp::Arc:
          a[5] -= cur.x;
          a[6] -= cur.y;
          break;
        default:
          for (std::size_t i = 0; i + 1 < arity(orig.op); i += 2) {
            a[i] -= cur.x;
            a[i + 1] -= cur.y;
          }
      }
    } else if (orig.op == PathOp::ClosePath) {
      cmd.relative = true;
    }
    out.push_back(cmd);
    ++index;
  });
  path = std::move(out);
}

void relativize_nodes(std::vector<Node>& nodes) {
  for (auto& n : nodes) {
    if (auto* v = n.find(AttrName::D)) relativize(std::get<PathData>(*v));
    relativize_nodes(n.children);
  }
}

// ---------------------------------------------------------------- rounding

void round_nodes(std::vector<Node>& nodes, int places) {
  auto r = [places](double& v) { v = round_decimal(v, places); };
  for (auto& n : nodes) {
    for (auto& attr : n.attrs) {
      std::visit(
          [&](auto& val) {
            using T = std::decay_t<decltype(val)>;
            if constexpr (std::is_same_v<T, Number>) {
              r(val.value);
            } else if constexpr (std::is_same_v<T, PathData>) {
              for (auto& cmd : val) {
                for (auto& a : cmd.values()) r(a);
              }
            } else if constexpr (std::is_same_v<T, Points>) {
              for (auto& c : val.coords) r(c);
            } else if constexpr (std::is_same_v<T, TransformList>) {
              for (auto& op : val.ops) {
                for (auto& a : op.args) r(a);
              }
            }
          },
          attr.value);
    }
    round_nodes(n.children, places);
  }
}

void check_references(const std::vector<Node>& nodes, const std::map<std::string, const Node*>& gradients) {
  for (const auto& n : nodes) {
    for (auto a : {AttrName::Fill, AttrName::Stroke, AttrName::Href}) {
      if (n.kind == ElementKind::Stop) break;
      const auto* v = n.find(a);
      if (!v) continue;
      const auto* ref = std::get_if<Reference>(v);
      if (ref && !gradients.count(ref->id))
        throw Error(ErrorCode::DanglingReference,
                    std::string(tag_name(n.kind)) + " references undefined id '" + ref->id + "'");
    }
    check_references(n.children, gradients);
  }
}

}  // namespace

bool NormalizationReport::removed_visible_content() const {
  return std::any_of(removed.begin(), removed.end(),
                     [](const auto& kv) { return kv.first.starts_with("invisible:"); });
}

void NormalizationReport::merge(const NormalizationReport& other) {
  for (const auto& [k, v] : other.removed) removed[k] += v;
  for (const auto& [k, v] : other.dropped_attributes) dropped_attributes[k] += v;
  for (const auto& [k, v] : other.counts_before) counts_before[k] += v;
  for (const auto& [k, v] : other.counts_after) counts_after[k] += v;
  rewritten += other.rewritten;
  bytes_before += other.bytes_before;
  bytes_after += other.bytes_after;
}

NormalizeResult strip_redundant(SvgDocument doc, const std::vector<ForeignNode>& foreign,
                                const NormalizeOptions& opts) {
  NormalizeResult result;
  auto& report = result.report;
  report.counts_before = count_elements(doc);
  for (const auto& f : foreign) {
    ++report.removed[ledger_key(f)];
    if (f.reason == ForeignReason::UnsupportedTag || f.reason == ForeignReason::EditorMetadata ||
        f.reason == ForeignReason::StyleSheet)
      ++report.counts_before[f.tag_name];
  }

  std::vector<Node> hoisted;
  hoist_defs(doc.elements, hoisted, report);
  std::vector<Node> salvaged;
  prune(doc.elements, Paint{}, salvaged, report);
  hoisted.insert(hoisted.end(), std::make_move_iterator(salvaged.begin()),
                 std::make_move_iterator(salvaged.end()));
  doc.elements.insert(doc.elements.begin(), std::make_move_iterator(hoisted.begin()),
                      std::make_move_iterator(hoisted.end()));

  // Live gradients: painted ones and everything reachable through href.
  std::map<std::string, const Node*> gradients;
  index_gradients(doc.elements, gradients);
  std::set<std::string> live;
  collect_paint_refs(doc.elements, live);
  std::vector<std::string> work(live.begin(), live.end());
  while (!work.empty()) {
    const auto id = work.back();
    work.pop_back();
    auto it = gradients.find(id);
    if (it == gradients.end()) continue;
    if (const auto* h = it->second->find(AttrName::Href)) {
      const auto& target = std::get<Reference>(*h).id;
      if (live.insert(target).second) work.push_back(target);
    }
  }
  remove_unreferenced(doc.elements, live, report);

  gradients.clear();
  index_gradients(doc.elements, gradients);
  check_references(doc.elements, gradients);

  drop_ids(doc.elements, report.rewritten);
  if (opts.unwrap_groups) unwrap(doc.elements, report);
  report.counts_after = count_elements(doc);
  result.doc = std::move(doc);
  return result;
}

SvgDocument to_relative_paths(SvgDocument doc) {
  relativize_nodes(doc.elements);
  return doc;
}

SvgDocument round_numbers(SvgDocument doc, int places) {
  round_nodes(doc.elements, places);
  return doc;
}

SvgDocument rescale_canvas(SvgDocument doc, double size) {
  const auto& vb = doc.view_box;
  Mapping m;
  m.s = size / std::max(vb.width, vb.height);
  m.tx = (size - m.s * vb.width) / 2 - m.s * vb.min_x;
  m.ty = (size - m.s * vb.height) / 2 - m.s * vb.min_y;
  if (m.s != 1) {
    // Defaults are in user units and would not scale on their own.
    for (auto& n : doc.elements) {
      if (is_gradient(n.kind)) continue;
      if (!n.has(AttrName::StrokeWidth) && subtree_has(n, [](const Node& x) {
            const auto* s = x.find(AttrName::Stroke);
            return s && !is_none(s);
          }))
        n.set(AttrName::StrokeWidth, Number{1});
      if ((n.kind == ElementKind::Group || n.kind == ElementKind::Text) &&
          !n.has(AttrName::FontSize) &&
          subtree_has(n, [](const Node& x) { return x.kind == ElementKind::Text; }))
        n.set(AttrName::FontSize, Number{16});
    }
  }
  for (auto& n : doc.elements) map_node(n, m);
  doc.view_box = {0, 0, size, size};
  return doc;
}

NormalizeResult normalize(const RawSvg& raw, const NormalizeOptions& opts) {
  if (opts.decimal_places && *opts.decimal_places < 0)
    throw Error(ErrorCode::InvalidArgument, "decimal_places must be >= 0");
  if (!(opts.canvas_size > 0)) throw Error(ErrorCode::InvalidArgument, "canvas_size must be > 0");

  auto parsed = parse_svg(raw);
  auto result = strip_redundant(std::move(parsed.doc), parsed.foreign, opts);
  auto& report = result.report;
  report.counts_before = parsed.input_element_counts;
  for (const auto& d : parsed.dropped_attributes)
    ++report.dropped_attributes[d.reason + ":" + d.element + "@" + d.name];

  auto doc = rescale_canvas(std::move(result.doc), opts.canvas_size);
  doc = to_relative_paths(std::move(doc));
  if (opts.decimal_places) doc = round_numbers(std::move(doc), *opts.decimal_places);

  report.bytes_before = parsed.input_bytes;
  report.bytes_after = canonical_serialize(doc).size();
  result.doc = std::move(doc);
  return result;
}

std::vector<CorpusEntry> normalize_corpus_serial(const std::vector<RawSvg>& inputs,
                                                 const NormalizeOptions& opts) {
  std::vector<CorpusEntry> out(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    try {
      out[i].result = normalize(inputs[i], opts);
    } catch (const Error& e) {
      out[i].error = e;
    }
  }
  return out;
}

std::vector<CorpusEntry> normalize_corpus(const std::vector<RawSvg>& inputs,
                                          const NormalizeOptions& opts) {
  std::vector<CorpusEntry> out(inputs.size());
  const auto n = static_cast<std::ptrdiff_t>(inputs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i].result = normalize(inputs[i], opts);
    } catch (const Error& e) {
      out[i].error = e;
    }
  }
  return out;
}

}  // namespace svgx
