#include "svgx/codec.hpp"

#include <algorithm>
#include <array>

#include "svgx/error.hpp"
#include "svgx/number.hpp"
#include "svgx/parser.hpp"

namespace svgx {

namespace {

using C = TokenCategory;

const std::array<SemanticToken, kVocabSize> kVocab{{
    {0, "[<|START_OF_SVG|>]", C::Container, "start of svg"},
    {1, "[<|END_OF_SVG|>]", C::Container, "end of svg"},
    {2, "[<|start_of_g|>]", C::Container, "start of svg group"},
    {3, "[<|end_of_g|>]", C::Container, "end of svg group"},
    {4, "[<|svg_path|>]", C::Geometry, "svg path element"},
    {5, "[<|svg_circle|>]", C::Geometry, "svg circle element"},
    {6, "[<|svg_rect|>]", C::Geometry, "svg rectangle element"},
    {7, "[<|svg_ellipse|>]", C::Geometry, "svg ellipse element"},
    {8, "[<|svg_polygon|>]", C::Geometry, "svg polygon element"},
    {9, "[<|svg_line|>]", C::Geometry, "svg line element"},
    {10, "[<|svg_polyline|>]", C::Geometry, "svg polyline element"},
    {11, "[<|svg_text|>]", C::Geometry, "svg text element"},
    {12, "[<|svg_linearGradient|>]", C::Gradient, "svg linear gradient element"},
    {13, "[<|svg_radialGradient|>]", C::Gradient, "svg radial gradient element"},
    {14, "[<|svg_stop|>]", C::Gradient, "svg stop element"},
    {15, "[<|moveto|>]", C::PathCommand, "svg path command, move to"},
    {16, "[<|lineto|>]", C::PathCommand, "svg path command, line to"},
    {17, "[<|horizontal_lineto|>]", C::PathCommand, "svg path command, horizontal line to"},
    {18, "[<|vertical_lineto|>]", C::PathCommand, "svg path command, vertical line to"},
    {19, "[<|curveto|>]", C::PathCommand, "svg path command, curve to"},
    {20, "[<|smooth_curveto|>]", C::PathCommand, "svg path command, smooth curve to"},
    {21, "[<|quadratic_bezier_curve|>]", C::PathCommand, "svg path command, quadratic bezier curve"},
    {22, "[<|smooth_quadratic_bezier_curveto|>]", C::PathCommand,
     "svg path command, smooth quadratic bezier curve"},
    {23, "[<|elliptical_Arc|>]", C::PathCommand, "svg path command, elliptical arc"},
    {24, "[<|close_the_path|>]", C::PathCommand, "svg path command, close the path, close-form"},
    {25, "[<|id|>]", C::Attribute, "svg element attribute id"},
    {26, "[<|d|>]", C::Attribute, "svg element attribute define the path"},
    {27, "[<|fill|>]", C::Attribute, "svg element attribute fill"},
    {28, "[<|stroke-width|>]", C::Attribute, "svg element attribute stroke-width"},
    {29, "[<|stroke-linecap|>]", C::Attribute, "svg element attribute stroke-linecap"},
    {30, "[<|stroke|>]", C::Attribute, "svg element attribute stroke"},
    {31, "[<|opacity|>]", C::Attribute, "svg element attribute opacity"},
    {32, "[<|transform|>]", C::Attribute, "svg element attribute transform"},
    {33, "[<|gradientTransform|>]", C::Attribute, "svg element attribute gradient transform"},
    {34, "[<|offset|>]", C::Attribute, "svg element attribute offset"},
    {35, "[<|width|>]", C::Attribute, "svg element attribute width"},
    {36, "[<|height|>]", C::Attribute, "svg element attribute height"},
    {37, "[<|cx|>]", C::Attribute, "svg element attribute x coordinate of circle center"},
    {38, "[<|cy|>]", C::Attribute, "svg element attribute y coordinate of circle center"},
    {39, "[<|rx|>]", C::Attribute, "svg element attribute x radius of ellipse"},
    {40, "[<|ry|>]", C::Attribute, "svg element attribute y radius of ellipse"},
    {41, "[<|r|>]", C::Attribute, "svg element attribute radius of circle"},
    {42, "[<|points|>]", C::Attribute, "svg element attribute points"},
    {43, "[<|x1|>]", C::Attribute, "svg element attribute x1 coordinate"},
    {44, "[<|y1|>]", C::Attribute, "svg element attribute y1 coordinate"},
    {45, "[<|x2|>]", C::Attribute, "svg element attribute x2 coordinate"},
    {46, "[<|y2|>]", C::Attribute, "svg element attribute y2 coordinate"},
    {47, "[<|x|>]", C::Attribute, "svg element attribute x coordinate"},
    {48, "[<|y|>]", C::Attribute, "svg element attribute y coordinate"},
    {49, "[<|fr|>]", C::Attribute, "svg element attribute fr"},
    {50, "[<|fx|>]", C::Attribute, "svg element attribute fx"},
    {51, "[<|fy|>]", C::Attribute, "svg element attribute fy"},
    {52, "[<|href|>]", C::Attribute, "svg element attribute href"},
    {53, "[<|rotate|>]", C::Attribute, "svg element attribute rotate"},
    {54, "[<|font-size|>]", C::Attribute, "svg element attribute font-size"},
}};

constexpr int kFirstElement = 4;
constexpr int kFirstPathCommand = 15;
constexpr int kFirstAttribute = 25;

std::string_view surface(int id) { return kVocab[static_cast<std::size_t>(id)].surface; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void encode_node(const Node& node, std::vector<Item>& out) {
  if (node.kind == ElementKind::Group) {
    out.push_back(Token{kStartOfG});
  } else {
    out.push_back(Token{element_token(node.kind)});
    if (node.kind == ElementKind::Text && !node.text.empty()) out.push_back(Literal{node.text});
  }
  for (const auto& attr : node.attrs) {
    out.push_back(Token{attr_token(attr.name)});
    if (attr.name == AttrName::D) {
      for (const auto& cmd : std::get<PathData>(attr.value)) {
        out.push_back(Token{path_token(cmd.op)});
        if (arity(cmd.op) > 0) out.push_back(Literal{format_path_args(cmd)});
      }
    } else {
      out.push_back(Literal{format_value(attr.name, attr.value)});
    }
  }
  for (const auto& c : node.children) encode_node(c, out);
  if (node.kind == ElementKind::Group) out.push_back(Token{kEndOfG});
}

std::optional<std::vector<double>> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    skip_separators(text, pos);
    if (pos >= text.size()) break;
    auto v = scan_number(text, pos);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

std::optional<AttrValue> parse_literal(AttrName name, std::string_view raw) {
  const auto v = trim(raw);
  if (v.empty()) return std::nullopt;
  switch (name) {
    case AttrName::Id:
      return Text{std::string(v)};
    case AttrName::StrokeLinecap:
      if (v == "butt" || v == "round" || v == "square") return Text{std::string(v)};
      return std::nullopt;
    case AttrName::Fill:
    case AttrName::Stroke:
      if (v.starts_with("url(#") && v.ends_with(")") && v.size() > 6)
        return Reference{std::string(v.substr(5, v.size() - 6))};
      if (auto c = parse_color(v)) return *c;
      return std::nullopt;
    case AttrName::Transform:
    case AttrName::GradientTransform:
      if (auto t = parse_transform(v); t && !t->ops.empty()) return *t;
      return std::nullopt;
    case AttrName::Points: {
      auto nums = parse_numbers(v);
      if (!nums || nums->empty() || nums->size() % 2) return std::nullopt;
      return Points{std::move(*nums)};
    }
    case AttrName::Href:
      if (v.size() > 1 && v[0] == '#') return Reference{std::string(v.substr(1))};
      return std::nullopt;
    case AttrName::Rotate:
      if (auto n = parse_number(v)) return Number{*n};
      if (parse_numbers(v)) return Text{std::string(v)};
      return std::nullopt;
    default:
      if (auto n = parse_number(v)) return Number{*n};
      return std::nullopt;
  }
}

class Decoder {
 public:
  Decoder(const std::vector<Item>& items, DecodeReport& report) : items_(items), report_(report) {}

  std::vector<Node> run(std::size_t begin) {
    stack_.emplace_back();
    std::size_t i = begin;
    bool ended = false;
    while (i < items_.size()) {
      const auto& item = items_[i];
      if (const auto* lit = std::get_if<Literal>(&item)) {
        note("dropped stray literal '" + lit->text + "'", i);
        ++i;
        continue;
      }
      const int t = std::get<Token>(item).id;
      ++i;
      if (t == kEndOfSvg) {
        ended = true;
        break;
      }
      const auto category = kVocab[static_cast<std::size_t>(t)].category;
      if (t == kStartOfSvg) {
        note("ignored nested START_OF_SVG", i - 1);
      } else if (t == kStartOfG) {
        Node g;
        g.kind = ElementKind::Group;
        stack_.push_back(std::move(g));
        target_ = Target::Container;
      } else if (t == kEndOfG) {
        if (stack_.size() > 1) {
          close_group();
        } else {
          note("dropped unmatched end_of_g", i - 1);
        }
        target_ = Target::None;
      } else if (t == element_token(ElementKind::Stop)) {
        Node* g = last_child();
        if (g && is_gradient(g->kind) && (target_ == Target::LastChild || target_ == Target::LastStop)) {
          Node stop;
          stop.kind = ElementKind::Stop;
          g->children.push_back(std::move(stop));
          target_ = Target::LastStop;
        } else {
          note("dropped stop outside a gradient", i - 1);
          target_ = Target::Discard;
        }
      } else if (category == C::Geometry || category == C::Gradient) {
        Node n;
        n.kind = static_cast<ElementKind>(t - kFirstElement);
        if (n.kind == ElementKind::Text && i < items_.size()) {
          if (const auto* lit = std::get_if<Literal>(&items_[i])) {
            n.text = lit->text;
            ++i;
          }
        }
        stack_.back().children.push_back(std::move(n));
        target_ = Target::LastChild;
      } else if (category == C::PathCommand) {
        note("dropped path command outside d", i - 1);
        if (i < items_.size() && std::holds_alternative<Literal>(items_[i])) ++i;
      } else {
        i = attribute(static_cast<AttrName>(t - kFirstAttribute), i);
      }
    }
    if (!ended) note("implied END_OF_SVG at end of input", items_.size());
    if (ended && i < items_.size())
      note("ignored " + std::to_string(items_.size() - i) + " items after END_OF_SVG", i);
    while (stack_.size() > 1) {
      note("closed unterminated group", items_.size());
      close_group();
    }
    return std::move(stack_.front().children);
  }

 private:
  enum class Target { None, Container, LastChild, LastStop, Discard };

  void note(const std::string& what, std::size_t index) {
    report_.recoveries.push_back("item " + std::to_string(index) + ": " + what);
  }

  Node* last_child() {
    auto& kids = stack_.back().children;
    return kids.empty() ? nullptr : &kids.back();
  }

  Node* target() {
    switch (target_) {
      case Target::Container:
        return stack_.size() > 1 ? &stack_.back() : nullptr;
      case Target::LastChild:
        return last_child();
      case Target::LastStop: {
        Node* g = last_child();
        return g && !g->children.empty() ? &g->children.back() : nullptr;
      }
      default:
        return nullptr;
    }
  }

  void close_group() {
    Node g = std::move(stack_.back());
    stack_.pop_back();
    stack_.back().children.push_back(std::move(g));
  }

  // Returns the index after the attribute's value.
  std::size_t attribute(AttrName name, std::size_t i) {
    const std::string label(attr_name_text(name));
    Node* node = target();
    if (name == AttrName::D) {
      PathData path;
      bool any = false;
      while (i < items_.size()) {
        const auto* tok = std::get_if<Token>(&items_[i]);
        if (!tok || kVocab[static_cast<std::size_t>(tok->id)].category != C::PathCommand) break;
        const auto op = static_cast<PathOp>(tok->id - kFirstPathCommand);
        const std::size_t at = i++;
        std::optional<std::string_view> args;
        if (i < items_.size()) {
          if (const auto* lit = std::get_if<Literal>(&items_[i])) {
            args = lit->text;
            ++i;
          }
        }
        any = true;
        command(op, args, at, path);
      }
      if (!node) {
        note("dropped d with no element", i);
        return i;
      }
      if (!path.empty() && path.front().op != PathOp::MoveTo) {
        const auto first_move = std::find_if(path.begin(), path.end(),
                                             [](const PathCmd& c) { return c.op == PathOp::MoveTo; });
        note("dropped " + std::to_string(first_move - path.begin()) + " commands before the first moveto", i);
        path.erase(path.begin(), first_move);
      }
      if (path.empty()) {
        note(any ? "dropped d without a valid moveto" : "dropped d without commands", i);
        return i;
      }
      for (std::size_t k = 0; k < path.size(); ++k) path[k].relative = k > 0;
      if (node->has(name)) note("duplicate d replaced", i);
      node->set(name, std::move(path));
      return i;
    }
    const Literal* lit = i < items_.size() ? std::get_if<Literal>(&items_[i]) : nullptr;
    if (!lit) {
      note("dropped " + label + " without a value", i - 1);
      return i;
    }
    ++i;
    if (!node) {
      note("dropped " + label + " with no element", i - 2);
      return i;
    }
    auto value = parse_literal(name, lit->text);
    if (!value) {
      note("dropped " + label + " with unparseable value '" + lit->text + "'", i - 1);
      return i;
    }
    if (node->has(name)) note("duplicate " + label + " replaced", i - 2);
    node->set(name, std::move(*value));
    return i;
  }

  void command(PathOp op, std::optional<std::string_view> args, std::size_t at, PathData& path) {
    const std::size_t n = arity(op);
    if (n == 0) {
      if (args) note("ignored arguments of close_the_path", at);
      path.push_back(PathCmd{op, true, {}});
      return;
    }
    if (!args) {
      note("dropped path command without arguments", at);
      return;
    }
    auto nums = parse_numbers(*args);
    if (!nums || nums->empty() || nums->size() % n) {
      note("dropped path command with bad arguments '" + std::string(*args) + "'", at);
      return;
    }
    if (nums->size() > n)
      note("split path command into " + std::to_string(nums->size() / n) + " commands", at);
    for (std::size_t k = 0; k < nums->size(); k += n) {
      PathCmd cmd{op, true, {}};
      std::copy_n(nums->begin() + static_cast<std::ptrdiff_t>(k), n, cmd.args.begin());
      if (op == PathOp::Arc && ((cmd.args[3] != 0 && cmd.args[3] != 1) ||
                                (cmd.args[4] != 0 && cmd.args[4] != 1))) {
        note("dropped arc with invalid flags", at);
        continue;
      }
      // Later repeats of a moveto are linetos, as in path data.
      if (op == PathOp::MoveTo && k > 0) cmd.op = PathOp::LineTo;
      path.push_back(cmd);
    }
  }

  const std::vector<Item>& items_;
  DecodeReport& report_;
  std::vector<Node> stack_;
  Target target_ = Target::None;
};

}  // namespace

std::string_view to_string(TokenCategory category) {
  switch (category) {
    case C::Container: return "container";
    case C::Geometry: return "geometry";
    case C::Gradient: return "gradient";
    case C::PathCommand: return "path_command";
    case C::Attribute: return "attribute";
  }
  return "unknown";
}

const std::vector<SemanticToken>& vocab() {
  static const std::vector<SemanticToken> v(kVocab.begin(), kVocab.end());
  return v;
}

std::optional<int> token_id(std::string_view s) {
  for (const auto& t : kVocab) {
    if (t.surface == s) return t.id;
  }
  return std::nullopt;
}

int element_token(ElementKind kind) {
  if (kind == ElementKind::Group) return kStartOfG;
  return kFirstElement + static_cast<int>(kind);
}

int path_token(PathOp op) { return kFirstPathCommand + static_cast<int>(op); }

int attr_token(AttrName name) { return kFirstAttribute + static_cast<int>(name); }

TokenSeq encode(const SvgDocument& doc) {
  check_invariants(doc);
  TokenSeq seq;
  seq.items.push_back(Token{kStartOfSvg});
  for (const auto& n : doc.elements) encode_node(n, seq.items);
  seq.items.push_back(Token{kEndOfSvg});
  return seq;
}

DecodeResult decode(const TokenSeq& seq, double canvas) {
  const auto& items = seq.items;
  const auto start = std::find_if(items.begin(), items.end(), [](const Item& it) {
    const auto* t = std::get_if<Token>(&it);
    return t && t->id == kStartOfSvg;
  });
  if (start == items.end()) throw Error(ErrorCode::EmptySequence, "no START_OF_SVG in sequence");
  for (const auto& it : seq.items) {
    if (const auto* t = std::get_if<Token>(&it); t && (t->id < 0 || t->id >= static_cast<int>(kVocabSize)))
      throw Error(ErrorCode::InvalidArgument, "token id outside the vocabulary");
  }
  DecodeResult result;
  const auto skipped = static_cast<std::size_t>(start - items.begin());
  if (skipped) result.report.recoveries.push_back("skipped " + std::to_string(skipped) + " items before START_OF_SVG");
  Decoder decoder(items, result.report);
  result.doc.view_box = {0, 0, canvas, canvas};
  result.doc.elements = decoder.run(skipped + 1);
  return result;
}

std::string to_text(const TokenSeq& seq) {
  std::string out;
  for (const auto& item : seq.items) {
    if (!out.empty()) out += ' ';
    if (const auto* t = std::get_if<Token>(&item)) {
      out += surface(t->id);
    } else {
      out += std::get<Literal>(item).text;
    }
  }
  return out;
}

TokenSeq from_text(std::string_view text) {
  TokenSeq seq;
  std::size_t literal_start = 0;
  auto flush = [&](std::size_t end) {
    const auto lit = trim(text.substr(literal_start, end - literal_start));
    if (!lit.empty()) seq.items.push_back(Literal{std::string(lit)});
  };
  std::size_t pos = 0;
  while (true) {
    pos = text.find("[<|", pos);
    if (pos == std::string_view::npos) break;
    int best = -1;
    std::size_t best_len = 0;
    for (const auto& t : kVocab) {
      if (t.surface.size() > best_len && text.substr(pos).starts_with(t.surface)) {
        best = t.id;
        best_len = t.surface.size();
      }
    }
    if (best < 0) {
      pos += 3;
      continue;
    }
    flush(pos);
    seq.items.push_back(Token{best});
    pos += best_len;
    literal_start = pos;
  }
  flush(text.size());
  return seq;
}

TokenSeq truncate(const TokenSeq& seq, std::size_t max_len, const TokenCounter& counter) {
  TokenSeq out;
  std::size_t used = 0;
  for (const auto& item : seq.items) {
    const std::size_t cost = counter ? counter(item) : 1;
    if (used + cost > max_len) break;
    used += cost;
    out.items.push_back(item);
  }
  return out;
}

}  // namespace svgx
