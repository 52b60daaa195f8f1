#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svgx/ir.hpp"

namespace svgx {

/// External rasterizer: `command_template` is run through the shell with
/// {in}, {out} and {size} replaced (paths are single-quoted). It must write
/// a PNG no larger than size x size.
struct RendererConfig {
  std::string command_template;
  int size = 512;
};

/// From the SVGX_RENDERER environment variable, if set and non-empty.
std::optional<RendererConfig> renderer_from_env(int size = 512);

/// 8-bit RGB pixels, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;
};

struct DiffResult {
  double mean_abs = 0;
  double max_abs = 0;
  std::size_t differing_pixels = 0;
  friend bool operator==(const DiffResult&, const DiffResult&) = default;
};

/// RGBA PNG composited over white.
RgbImage read_png(const std::string& path);

/// SVG text with an SVG namespace declaration on the root, so renderers
/// that require one treat it as SVG.
std::string with_svg_namespace(std::string_view svg_text);

/// A non-square document reframed with a square viewBox centred on its own,
/// so it rasterizes straight onto a square canvas (no rounding of an
/// odd-sized intermediate image). Unparseable input is returned unchanged.
std::string square_canvas(std::string_view svg_text);

/// Renders SVG text on a white size x size canvas, non-square documents
/// centred. Throws RendererFailed with the renderer's diagnostics.
RgbImage render_svg(std::string_view svg_text, const RendererConfig& cfg);

/// Per-channel RGB differences over all pixels, normalized to [0, 1].
DiffResult diff_images(const RgbImage& a, const RgbImage& b);
DiffResult diff_images_serial(const RgbImage& a, const RgbImage& b);

DiffResult pixel_diff(const SvgDocument& a, const SvgDocument& b, const RendererConfig& cfg);
/// Same, for raw SVG text (e.g. an original file against its cleaned form).
DiffResult pixel_diff(std::string_view a, std::string_view b, const RendererConfig& cfg);

/// Rounds `doc` to each number of places and diffs it against `doc`.
std::map<int, DiffResult> quantization_sweep(const SvgDocument& doc, const std::vector<int>& places_list,
                                             const RendererConfig& cfg);

}  // namespace svgx
