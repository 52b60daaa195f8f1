#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "svgx/codec.hpp"
#include "svgx/error.hpp"
#include "svgx/instruct.hpp"
#include "svgx/normalizer.hpp"

using namespace svgx;

namespace {

SvgDocument doc_of(std::string_view svg) { return normalize(RawSvg{std::string(svg), std::nullopt}).doc; }

SampleInputs sample(std::string prompt = "a red circle") {
  SampleInputs s;
  s.svg = doc_of(R"(<svg viewBox="0 0 128 128"><circle cx="64" cy="64" r="10" fill="#ff0000"/></svg>)");
  s.prompt = std::move(prompt);
  s.desc = "a red dot in the middle";
  s.image_path = "img/a.png";
  return s;
}

SampleInputs grouped() {
  SampleInputs s;
  s.svg = doc_of(R"(<svg viewBox="0 0 128 128"><g opacity="0.5"><circle r="1"/><circle r="2"/></g>)"
                 R"(<rect width="3" height="3"/><g fill="#00ff00"><rect width="1" height="1"/></g></svg>)");
  s.prompt = "shapes";
  s.desc = "two groups";
  s.image_path = "img/b.png";
  s.group_images = {{1, "img/b_g1.png"}, {2, "img/b_g2.png"}};
  s.group_descs = {"circles", "a square"};
  return s;
}

}  // namespace

TEST_CASE("template 1") {
  const auto s = sample();
  const auto r = build_record(1, s);
  REQUIRE(r.messages.size() == 3);
  CHECK(r.messages[0].role == Role::System);
  CHECK(r.messages[0].content == "You are a helpful assistant, please help me generate SVG </s>");
  CHECK(r.messages[1].content == "Generate an SVG illustration from the given description: a red circle </s>");
  CHECK(r.messages[2].content == to_text(encode(s.svg)) + " </s>");
  CHECK(r.images.empty());
}

TEST_CASE("template 2 carries the image") {
  const auto r = build_record(2, sample());
  CHECK(r.messages[1].content ==
        "Refer to rendering image: <image> and generate SVG from the given description: a red circle </s>");
  CHECK(r.images == std::vector<std::string>{"img/a.png"});
}

TEST_CASE("templates 3 and 4") {
  SampleInputs empty = sample();
  empty.svg = SvgDocument{{0, 0, 128, 128}, {}};
  const auto r3 = build_record(3, empty);
  CHECK(r3.messages[0].content == "Attempt to identify this SVG </s>");
  CHECK(r3.messages[1].content.find("[<|START_OF_SVG|>] [<|END_OF_SVG|>]") != std::string::npos);
  CHECK(r3.messages[2].content == "Text description of this SVG: a red dot in the middle </s>");

  auto seven = sample();
  seven.svg = doc_of(R"(<svg viewBox="0 0 128 128"><g opacity="0.5"><path d="M0 0h1"/><path d="M0 0h2"/></g>)"
                     R"(<path d="M0 0h3"/><circle r="1"/><rect width="1" height="1"/><line x2="1" stroke="#000"/>)"
                     R"(<text x="1" y="1">t</text></svg>)");
  const auto r4 = build_record(4, seven);
  CHECK(r4.messages[2].content.ends_with("This SVG contains 7 primitives. </s>"));
  CHECK(r4.messages[1].content.ends_with(" rendering result: <image>"));
}

TEST_CASE("template 5") {
  const auto r = build_record(5, grouped());
  CHECK(r.messages[1].content ==
        "SVG group 1: [<|start_of_g|>] [<|opacity|>] 0.5 [<|svg_circle|>] [<|r|>] 1 [<|svg_circle|>] [<|r|>] 2 "
        "[<|end_of_g|>] rendering result: <image>\n"
        "SVG group 2: [<|start_of_g|>] [<|fill|>] #00ff00 [<|svg_rect|>] [<|width|>] 1 [<|height|>] 1 "
        "[<|end_of_g|>] rendering result: <image> </s>");
  CHECK(r.messages[2].content ==
        "Text description of this SVG: two groups\n"
        "The 1st SVG group contains 2 primitives representing circles\n"
        "The 2nd SVG group contains 1 primitives representing a square </s>");
  CHECK(r.images == std::vector<std::string>{"img/b_g1.png", "img/b_g2.png"});
}

TEST_CASE("eligibility") {
  auto s = sample();
  CHECK(eligible(1, s));
  s.image_path.reset();
  CHECK_FALSE(eligible(2, s));
  CHECK_FALSE(eligible(4, s));
  CHECK_FALSE(eligible(5, sample()));
  auto g = grouped();
  g.group_images[1].group_index = 3;
  CHECK_FALSE(eligible(5, g));
  try {
    build_record(5, g);
    FAIL("expected GroupMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GroupMismatch);
  }
  g = grouped();
  g.group_descs.pop_back();
  CHECK_FALSE(eligible(5, g));
  CHECK_FALSE(eligible(6, sample()));
}

TEST_CASE("loss spans") {
  for (int t = 1; t <= 5; ++t) {
    const auto r = build_record(t, t == 5 ? grouped() : sample());
    REQUIRE(r.loss_spans.size() == 1);
    const auto& span = r.loss_spans[0];
    CHECK(span.message_index == 2);
    CHECK(span.byte_start == 0);
    CHECK(span.byte_end == r.messages[2].content.size());
    CHECK(r.messages[2].content.ends_with("</s>"));
  }
  InstructionRecord manual;
  manual.messages = {{Role::System, "s"}, {Role::User, "u"}, {Role::Assistant, std::string(40, 'x')}};
  CHECK(loss_mask(manual) == std::vector<LossSpan>{{2, 0, 40}});
}

TEST_CASE("ordinals") {
  CHECK(ordinal(1) == "1st");
  CHECK(ordinal(2) == "2nd");
  CHECK(ordinal(3) == "3rd");
  CHECK(ordinal(4) == "4th");
  CHECK(ordinal(11) == "11th");
  CHECK(ordinal(12) == "12th");
  CHECK(ordinal(13) == "13th");
  CHECK(ordinal(21) == "21st");
  CHECK(ordinal(102) == "102nd");
  CHECK(ordinal(111) == "111th");
}

TEST_CASE("json line") {
  const auto j = nlohmann::json::parse(to_json_line(build_record(2, sample())));
  CHECK(j["template"] == 2);
  CHECK(j["messages"][0]["role"] == "system");
  CHECK(j["messages"][2]["role"] == "assistant");
  CHECK(j["images"][0] == "img/a.png");
  CHECK(j["loss_spans"][0] == nlohmann::json::array({2, 0, j["messages"][2]["content"].get<std::string>().size()}));
}

TEST_CASE("mix parsing") {
  CHECK(parse_mix("1=250,2=250,3=60,4=60,5=20") ==
        std::map<int, std::size_t>{{1, 250}, {2, 250}, {3, 60}, {4, 60}, {5, 20}});
  CHECK_THROWS_AS(parse_mix("6=1"), Error);
  CHECK_THROWS_AS(parse_mix("1=2,1=3"), Error);
  CHECK_THROWS_AS(parse_mix("1:2"), Error);
  CHECK_THROWS_AS(parse_mix("1=-2"), Error);
}

TEST_CASE("corpus building") {
  std::vector<SampleInputs> samples;
  for (int i = 0; i < 5; ++i) samples.push_back(sample("caption " + std::to_string(i)));

  std::ostringstream a, b;
  const auto m = build_corpus(samples, {{1, 3}, {3, 2}}, 42, a);
  CHECK(m.realized == std::map<int, std::size_t>{{1, 3}, {3, 2}});
  CHECK(m.requested == m.realized);
  CHECK(m.eligible.at(1) == 5);
  std::size_t lines = 0;
  for (char c : a.str()) lines += c == '\n';
  CHECK(lines == 5);

  build_corpus(samples, {{1, 3}, {3, 2}}, 42, b);
  CHECK(a.str() == b.str());

  // Draws within one template are distinct samples.
  std::ostringstream c;
  build_corpus(samples, {{1, 5}}, 7, c);
  std::set<std::string> users;
  std::istringstream in(c.str());
  for (std::string line; std::getline(in, line);)
    users.insert(nlohmann::json::parse(line)["messages"][1]["content"].get<std::string>());
  CHECK(users.size() == 5);

  std::ostringstream d;
  try {
    build_corpus(samples, {{5, 1}}, 0, d);
    FAIL("expected InsufficientSamples");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientSamples);
  }
}
