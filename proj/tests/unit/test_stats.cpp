#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "svgx/stats.hpp"

using namespace svgx;

namespace {

std::string groups(int n) {
  std::string s = R"(<svg viewBox="0 0 10 10">)";
  for (int i = 0; i < n; ++i) s += R"(<g opacity="0.5"><circle r="1"/></g>)";
  return s + "</svg>";
}

StatsInput input(std::string svg, std::string caption = "", std::string desc = "") {
  return {RawSvg{std::move(svg), std::nullopt}, std::move(caption), std::move(desc)};
}

}  // namespace

TEST_CASE("avg_tok") {
  // <svgviewBox="0011"/> is 20 bytes.
  CHECK(avg_tok(R"(<svg viewBox="0 0 1 1"/>)") == 20);
  CHECK(avg_tok("<!-- a --> \n\t <!--b-->") == 0);
  CHECK(avg_tok("") == 0);
  CHECK(avg_tok("<a>\r\n<!-- x -->b</a>") == 8);
}

TEST_CASE("word counts") {
  CHECK(word_counts("A red, red circle!  Red.") ==
        std::map<std::string, std::size_t>{{"a", 1}, {"red", 3}, {"circle", 1}});
  CHECK(word_counts("... ,").empty());
}

TEST_CASE("group histogram") {
  const auto s = corpus_stats({input(groups(5)), input(groups(4)), input(groups(5))});
  CHECK(s.group_count_histogram == std::map<std::size_t, std::size_t>{{5, 2}, {4, 1}});
  CHECK(s.documents == 3);
  // Nested groups count too.
  const auto nested = corpus_stats(
      {input(R"(<svg viewBox="0 0 1 1"><g opacity="0.5"><g fill="#000000"><circle r="1"/></g></g></svg>)")});
  CHECK(nested.group_count_histogram == std::map<std::size_t, std::size_t>{{2, 1}});
}

TEST_CASE("titles vanish after cleaning") {
  std::vector<StatsInput> in;
  for (int i = 0; i < 4; ++i)
    in.push_back(input(R"(<svg viewBox="0 0 10 10"><title>t</title><rect width="1" height="1"/></svg>)"));
  const auto s = corpus_stats(in);
  CHECK(s.element_counts_before.at("title") == 4);
  CHECK(s.element_counts_after.count("title") == 0);
}

TEST_CASE("failures are collected") {
  const auto s = corpus_stats({input(groups(1), "one"), {RawSvg{"<svg", "b.svg"}, "two", ""},
                               {RawSvg{"<html/>", "a.svg"}, "", ""}});
  CHECK(s.documents == 1);
  REQUIRE(s.failures.size() == 2);
  CHECK(s.failures[0].source == "a.svg");
  CHECK(s.failures[1].source == "b.svg");
  // Captions of failed files are not counted.
  CHECK(s.word_frequencies == std::map<std::string, std::size_t>{{"one", 1}});
}

TEST_CASE("fixture corpus") {
  std::vector<StatsInput> in;
  for (const auto& raw : testing::raw_fixtures()) in.push_back({raw, "a caption", "a longer description"});
  const auto s = corpus_stats(in);
  CHECK(s.failures.empty());
  CHECK(s.documents == in.size());
  for (const auto& [kind, after] : s.element_counts_after) {
    CAPTURE(kind);
    REQUIRE(s.element_counts_before.count(kind));
    CHECK(after <= s.element_counts_before.at(kind));
  }
  std::size_t hist_total = 0;
  for (const auto& [g, n] : s.group_count_histogram) hist_total += n;
  CHECK(hist_total == s.documents);
  CHECK(s.word_frequencies.at("a") == 2 * in.size());
  CHECK(s.avg_tok_mean == doctest::Approx(static_cast<double>(s.avg_tok_total) / s.documents));

  auto shuffled = in;
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937(9));
  CHECK(corpus_stats(shuffled) == s);
  CHECK(corpus_stats_serial(in) == s);

  const auto j = nlohmann::json::parse(to_json(s));
  CHECK(j["documents"] == s.documents);
  CHECK(j["avg_tok_total"] == s.avg_tok_total);
  CHECK(element_counts_csv(s).starts_with("kind,before,after\n"));
  CHECK(group_histogram_csv(s).starts_with("groups,documents\n"));
  CHECK(word_frequencies_csv(s).starts_with("word,count\na,"));
}
