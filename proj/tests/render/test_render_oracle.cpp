// Render-oracle checks; need SVGX_RENDERER (registered only when one exists).
#include "../unit/fixtures.hpp"
#include "doctest.h"
#include "svgx/normalizer.hpp"
#include "svgx/render.hpp"

using namespace svgx;

namespace {

RendererConfig renderer(int size = 512) {
  auto cfg = renderer_from_env(size);
  REQUIRE_MESSAGE(cfg.has_value(), "SVGX_RENDERER is not set");
  return *cfg;
}

SvgDocument unrounded(std::string_view svg) {
  NormalizeOptions full;
  full.decimal_places = std::nullopt;
  return normalize(RawSvg{std::string(svg), std::nullopt}, full).doc;
}

}  // namespace

TEST_CASE("renderer draws something") {
  const auto img = render_svg(R"(<svg viewBox="0 0 10 10"><rect width="10" height="5" fill="#000"/></svg>)", renderer(64));
  REQUIRE(img.width == 64);
  CHECK(img.rgb[0] == 0);
  CHECK(img.rgb.back() == 255);
}

TEST_CASE("hoisting a gradient out of defs renders identically") {
  const std::string in =
      R"(<svg viewBox="0 0 128 128"><defs><linearGradient id="a" gradientUnits="userSpaceOnUse" x2="128">)"
      R"(<stop offset="0" stop-color="#f00"/><stop offset="1" stop-color="#00f"/></linearGradient></defs>)"
      R"x(<rect width="128" height="64" fill="url(#a)"/></svg>)x";
  CHECK(pixel_diff(std::string_view(in), canonical_serialize(unrounded(in)), renderer()).mean_abs == 0);
}

TEST_CASE("relative path conversion renders identically") {
  const std::string abs_path =
      R"(<svg viewBox="0 0 128 128"><path d="M10 10L100 20C110 40 90 60 70 50Q40 90 20 70A15 10 30 0 1 10 40Z" )"
      R"(fill="#336699" stroke="#000" stroke-width="2"/></svg>)";
  const auto rel = canonical_serialize(unrounded(abs_path));
  CHECK(rel.find("l90 10") != std::string::npos);
  CHECK(pixel_diff(std::string_view(abs_path), rel, renderer()).mean_abs == 0);
}

TEST_CASE("two decimals stay within one percent of full precision") {
  const auto cfg = renderer();
  for (std::size_t i = 0; i < testing::raw_fixtures().size(); i += 12) {
    const auto& raw = testing::raw_fixtures()[i];
    CAPTURE(*raw.source_path);
    NormalizeOptions full;
    full.decimal_places = std::nullopt;
    const auto d = pixel_diff(normalize(raw).doc, normalize(raw, full).doc, cfg);
    CHECK(d.mean_abs <= 0.01);
  }
}

TEST_CASE("original versus normalized within two percent") {
  const auto cfg = renderer();
  for (std::size_t i = 3; i < testing::raw_fixtures().size(); i += 10) {
    const auto& raw = testing::raw_fixtures()[i];
    CAPTURE(*raw.source_path);
    CHECK(pixel_diff(std::string_view(raw.xml_text), canonical_serialize(normalize(raw).doc), cfg).mean_abs <= 0.02);
  }
}

TEST_CASE("rounding an already rounded document is a no-op") {
  const auto doc = normalize(RawSvg{testing::raw_fixtures()[0].xml_text, std::nullopt}).doc;
  const auto sweep = quantization_sweep(doc, {2, 6}, renderer());
  CHECK(sweep.at(2).mean_abs == 0);
  CHECK(sweep.at(6).mean_abs == 0);
}

TEST_CASE("fewer decimals distort more on average") {
  const auto cfg = renderer(256);
  double sum[3] = {0, 0, 0};
  for (std::size_t i = 0; i < testing::raw_fixtures().size(); i += 8) {
    NormalizeOptions full;
    full.decimal_places = std::nullopt;
    const auto sweep = quantization_sweep(normalize(testing::raw_fixtures()[i], full).doc, {0, 1, 2}, cfg);
    for (int p = 0; p < 3; ++p) sum[p] += sweep.at(p).mean_abs;
  }
  CHECK(sum[0] > sum[1]);
  CHECK(sum[1] >= sum[2]);
}
