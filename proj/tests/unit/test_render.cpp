#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "svgx/error.hpp"
#include "svgx/render.hpp"

using namespace svgx;

namespace {

RgbImage solid(int w, int h, std::uint8_t v) {
  return {w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h * 3, v)};
}

RgbImage noise(int w, int h, unsigned seed) {
  auto img = solid(w, h, 0);
  std::mt19937 rng(seed);
  for (auto& v : img.rgb) v = static_cast<std::uint8_t>(rng());
  return img;
}

std::string two_px_png() { return (testing::fixtures_dir().parent_path() / "unit/data/two_px.png").string(); }

}  // namespace

TEST_CASE("diff of identical and opposite images") {
  const auto w = solid(8, 8, 255), b = solid(8, 8, 0);
  CHECK(diff_images(w, w) == DiffResult{0, 0, 0});
  CHECK(diff_images(w, b) == DiffResult{1, 1, 64});
  auto one = w;
  one.rgb[0] = 0;
  const auto d = diff_images(w, one);
  CHECK(d.differing_pixels == 1);
  CHECK(d.max_abs == 1);
  CHECK(d.mean_abs == doctest::Approx(1.0 / (64 * 3)));
  CHECK_THROWS_AS(diff_images(w, solid(4, 8, 0)), Error);
}

TEST_CASE("diff is symmetric and matches the serial kernel") {
  const auto a = noise(97, 61, 1), b = noise(97, 61, 2);
  CHECK(diff_images(a, b) == diff_images(b, a));
  CHECK(diff_images(a, b) == diff_images_serial(a, b));
}

TEST_CASE("png decoding composites over white") {
  const auto img = read_png(two_px_png());
  REQUIRE(img.width == 2);
  REQUIRE(img.height == 1);
  CHECK(img.rgb == std::vector<std::uint8_t>{0, 0, 0, 255, 127, 127});
  CHECK_THROWS_AS(read_png("/nonexistent.png"), Error);
}

TEST_CASE("namespace injection") {
  CHECK(with_svg_namespace(R"(<svg viewBox="0 0 1 1"/>)") ==
        R"(<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1"/>)");
  const std::string has = R"(<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 1"/>)";
  CHECK(with_svg_namespace(has) == has);
  CHECK(with_svg_namespace(R"(<?xml version="1.0"?><svg width="2" height="2"></svg>)") ==
        R"(<?xml version="1.0"?><svg xmlns="http://www.w3.org/2000/svg" width="2" height="2"></svg>)");
}

TEST_CASE("square framing") {
  CHECK(square_canvas(R"(<svg viewBox="0 0 100 50"><rect width="1" height="1"/></svg>)") ==
        R"(<svg viewBox="0 -25 100 100"><rect width="1" height="1"/></svg>)");
  CHECK(square_canvas(R"(<svg width="10px" height="30"><rect width="1" height="1"/></svg>)") ==
        R"(<svg viewBox="-10 0 30 30"><rect width="1" height="1"/></svg>)");
  const std::string square = R"(<svg viewBox="0 0 128 128"><circle r="1"/></svg>)";
  CHECK(square_canvas(square) == square);
  CHECK(square_canvas("<svg") == "<svg");
}

TEST_CASE("renderer harness") {
  const std::string svg = R"(<svg viewBox="0 0 1 1"/>)";
  try {
    render_svg(svg, {"echo broken renderer >&2; false", 8});
    FAIL("expected RendererFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RendererFailed);
    CHECK(std::string(e.what()).find("broken renderer") != std::string::npos);
  }
  CHECK_THROWS_AS(render_svg(svg, {"", 8}), Error);
  CHECK_THROWS_AS(render_svg(svg, {"true", 8}), Error);

  // A smaller output is centred on a white canvas.
  const RendererConfig copy{"test -s {in} && cp '" + two_px_png() + "' {out}", 4};
  const auto img = render_svg(svg, copy);
  REQUIRE(img.width == 4);
  auto expect = solid(4, 4, 255);
  expect.rgb[(1 * 4 + 1) * 3 + 0] = 0;
  expect.rgb[(1 * 4 + 1) * 3 + 1] = 0;
  expect.rgb[(1 * 4 + 1) * 3 + 2] = 0;
  expect.rgb[(1 * 4 + 2) * 3 + 1] = 127;
  expect.rgb[(1 * 4 + 2) * 3 + 2] = 127;
  CHECK(img.rgb == expect.rgb);
  CHECK_THROWS_AS(render_svg(svg, {copy.command_template, 1}), Error);
}
