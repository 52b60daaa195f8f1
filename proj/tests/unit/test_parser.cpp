#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "svgx/error.hpp"
#include "svgx/parser.hpp"

using namespace svgx;

namespace {

ParseResult parse(std::string_view text) { return parse_svg(RawSvg{std::string(text), std::nullopt}); }

std::vector<std::string> keys(const ParseResult& r) {
  std::vector<std::string> out;
  for (const auto& f : r.foreign) out.push_back(ledger_key(f));
  return out;
}

std::size_t nodes(const std::vector<Node>& ns) {
  std::size_t n = 0;
  for (const auto& c : ns) n += 1 + nodes(c.children);
  return n;
}

}  // namespace

TEST_CASE("minimal input") {
  auto r = parse(R"(<svg viewBox="0 0 10 10"><circle cx="5" cy="5" r="2"/></svg>)");
  REQUIRE(r.doc.elements.size() == 1);
  CHECK(r.doc.elements[0].kind == ElementKind::Circle);
  CHECK(r.foreign.empty());
  CHECK(r.doc.view_box == ViewBox{0, 0, 10, 10});
}

TEST_CASE("declaration, comment and metadata are foreign") {
  auto r = parse(R"(<?xml version="1.0"?><!-- c --><svg viewBox="0 0 10 10"><metadata/><path d="M0 0L10 10"/></svg>)");
  REQUIRE(r.doc.elements.size() == 1);
  CHECK(r.doc.elements[0].kind == ElementKind::Path);
  CHECK(keys(r) == std::vector<std::string>{"declaration", "comment", "unsupported_tag:metadata"});
}

TEST_CASE("canvas size") {
  CHECK(parse(R"(<svg width="20px" height="10"><rect width="1" height="1"/></svg>)").doc.view_box ==
        ViewBox{0, 0, 20, 10});
  try {
    parse(R"(<svg><path d="M0 0"/></svg>)");
    FAIL("expected NoCanvasSize");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCanvasSize);
  }
}

TEST_CASE("malformed input") {
  try {
    parse(R"(<svg viewBox="0 0 1 1"><g></svg>)");
    FAIL("expected MalformedXml");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedXml);
    CHECK(e.offset().has_value());
  }
  try {
    parse(R"(<html/>)");
    FAIL("expected NoRootSvg");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRootSvg);
  }
  try {
    parse(R"(<svg viewBox="0 0 1 1"><path d="M0 0 L x"/></svg>)");
    FAIL("expected BadPathData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadPathData);
  }
}

TEST_CASE("style and colour coercion") {
  auto r = parse(R"(<svg viewBox="0 0 10 10">)"
                 R"(<rect width="1" height="1" style="fill: Navy ; stroke:rgb(255, 0, 0);stroke-width:2"/>)"
                 R"(<circle r="1" fill="#AbC"/></svg>)");
  REQUIRE(r.doc.elements.size() == 2);
  const auto& rect = r.doc.elements[0];
  CHECK(std::get<Color>(*rect.find(AttrName::Fill)) == Color::hex(0x000080));
  CHECK(std::get<Color>(*rect.find(AttrName::Stroke)) == Color::hex(0xff0000));
  CHECK(rect.number(AttrName::StrokeWidth) == 2);
  CHECK(std::get<Color>(*r.doc.elements[1].find(AttrName::Fill)) == Color::hex(0xaabbcc));
  CHECK(parse_color("transparent") == Color::none());
  CHECK(parse_color("none") == Color::none());
}

TEST_CASE("unrepresentable attributes are reported") {
  auto r = parse(R"(<svg viewBox="0 0 10 10"><path d="M0 0L1 1" fill-rule="evenodd" class="a"/></svg>)");
  REQUIRE(r.doc.elements.size() == 1);
  CHECK_FALSE(r.dropped_attributes.empty());
  CHECK(std::any_of(r.dropped_attributes.begin(), r.dropped_attributes.end(),
                    [](const DroppedAttribute& d) { return d.name == "fill-rule" && d.element == "path"; }));
}

TEST_CASE("text content") {
  auto r = parse(R"(<svg viewBox="0 0 10 10"><text x="1" y="5">Hello <tspan>big</tspan>
      world</text></svg>)");
  REQUIRE(r.doc.elements.size() == 1);
  CHECK(r.doc.elements[0].text == "Hello big world");
}

TEST_CASE("gradients become explicit user-space definitions") {
  auto r = parse(R"(<svg xmlns:xlink="http://www.w3.org/1999/xlink" viewBox="0 0 100 100"><defs>)"
                 R"(<linearGradient id="base"><stop offset="0" stop-color="red"/><stop offset="100%" style="stop-color:blue;stop-opacity:.5"/></linearGradient>)"
                 R"(<linearGradient id="g" xlink:href="#base" x2="0" y2="1"/></defs>)"
                 R"x(<rect x="10" y="20" width="30" height="40" fill="url(#g)"/></svg>)x");
  const SvgDocument& doc = r.doc;
  const Node* g = nullptr;
  std::function<void(const std::vector<Node>&)> find = [&](const std::vector<Node>& ns) {
    for (const auto& n : ns) {
      if (auto* id = n.find(AttrName::Id); id && std::get<Text>(*id).value.starts_with("g")) g = &n;
      find(n.children);
    }
  };
  find(doc.elements);
  REQUIRE(g);
  // Linked stops stay on the base; units are user space with the box folded
  // into gradientTransform.
  CHECK(g->has(AttrName::Href));
  CHECK(g->has(AttrName::GradientTransform));
  CHECK(g->number(AttrName::Y2) == 1);
  const auto stops = std::accumulate(doc.elements.begin(), doc.elements.end(), std::size_t{0},
                                     [](std::size_t n, const Node& e) { return n + e.children.size(); });
  CHECK(stops == 2);
}

TEST_CASE("every fixture element is either modelled or foreign") {
  for (const auto& raw : testing::raw_fixtures()) {
    CAPTURE(*raw.source_path);
    const auto r = parse_svg(raw);
    std::size_t foreign_elements = 0;
    for (const auto& f : r.foreign) {
      if (f.reason == ForeignReason::Declaration || f.reason == ForeignReason::Comment ||
          f.reason == ForeignReason::Doctype)
        continue;
      foreign_elements += 1 + f.skipped_descendants;
    }
    std::size_t input = 0;
    for (const auto& [tag, n] : r.input_element_counts) input += n;
    // tspans merge into their text; gradient clones add nodes.
    const auto tspans = r.input_element_counts.count("tspan") ? r.input_element_counts.at("tspan") : 0;
    CHECK(nodes(r.doc.elements) + foreign_elements + tspans >= input);
    CHECK(r.input_bytes == raw.xml_text.size());
  }
}
