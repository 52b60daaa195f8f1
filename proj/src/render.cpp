#include "svgx/render.hpp"

#include <png.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <unistd.h>

#include "svgx/error.hpp"
#include "svgx/normalizer.hpp"
#include "svgx/number.hpp"
#include "svgx/parser.hpp"

namespace svgx {

namespace fs = std::filesystem;

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::string replace_all(std::string s, std::string_view from, const std::string& to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    path_ = fs::temp_directory_path() /
            ("svgx-render-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::optional<RendererConfig> renderer_from_env(int size) {
  const char* v = std::getenv("SVGX_RENDERER");
  if (!v || !*v) return std::nullopt;
  return RendererConfig{v, size};
}

RgbImage read_png(const std::string& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw Error(ErrorCode::RendererFailed, "cannot read PNG " + path + ": " + image.message);
  image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error(ErrorCode::RendererFailed, "cannot decode PNG " + path + ": " + image.message);
  }
  RgbImage out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  const std::size_t n = static_cast<std::size_t>(out.width) * static_cast<std::size_t>(out.height);
  out.rgb.resize(n * 3);
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned a = rgba[4 * i + 3];
    for (int c = 0; c < 3; ++c) {
      const unsigned v = rgba[4 * i + static_cast<std::size_t>(c)];
      out.rgb[3 * i + static_cast<std::size_t>(c)] = static_cast<std::uint8_t>((v * a + 255u * (255u - a) + 127u) / 255u);
    }
  }
  return out;
}

namespace {

// [begin, end) of the root <svg ...> start tag, or npos.
std::pair<std::size_t, std::size_t> root_tag(std::string_view s) {
  std::size_t pos = 0;
  while ((pos = s.find("<svg", pos)) != std::string_view::npos) {
    const char next = pos + 4 < s.size() ? s[pos + 4] : '\0';
    if (next == ' ' || next == '>' || next == '/' || next == '\t' || next == '\n' || next == '\r') break;
    pos += 4;
  }
  if (pos == std::string_view::npos) return {pos, pos};
  const auto end = s.find('>', pos);
  return {pos, end == std::string_view::npos ? s.size() : end};
}

}  // namespace

std::string with_svg_namespace(std::string_view svg_text) {
  std::string s(svg_text);
  const auto [begin, end] = root_tag(s);
  if (begin == std::string::npos) return s;
  if (std::string_view(s).substr(begin, end - begin).find("xmlns=") != std::string_view::npos) return s;
  s.insert(begin + 4, " xmlns=\"http://www.w3.org/2000/svg\"");
  return s;
}

std::string square_canvas(std::string_view svg_text) {
  ViewBox vb;
  try {
    vb = parse_svg(RawSvg{std::string(svg_text), std::nullopt}).doc.view_box;
  } catch (const Error&) {
    return std::string(svg_text);
  }
  if (vb.width == vb.height || vb.width <= 0 || vb.height <= 0) return std::string(svg_text);
  std::string s(svg_text);
  const auto [begin, end] = root_tag(s);
  if (begin == std::string::npos) return s;
  static const std::regex sizing(R"re(\s(width|height|viewBox|preserveAspectRatio)\s*=\s*("[^"]*"|'[^']*'))re");
  std::string tag = std::regex_replace(s.substr(begin, end - begin), sizing, "");
  const double side = std::max(vb.width, vb.height);
  tag.insert(4, " viewBox=\"" + format_number(vb.min_x - (side - vb.width) / 2) + " " +
                    format_number(vb.min_y - (side - vb.height) / 2) + " " + format_number(side) + " " +
                    format_number(side) + "\"");
  return s.replace(begin, end - begin, tag);
}

RgbImage render_svg(std::string_view svg_text, const RendererConfig& cfg) {
  if (cfg.command_template.empty()) throw Error(ErrorCode::RendererFailed, "no renderer configured");
  if (cfg.size <= 0) throw Error(ErrorCode::InvalidArgument, "render size must be positive");
  TempDir dir;
  const auto in = dir.path() / "in.svg";
  const auto out = dir.path() / "out.png";
  const auto log = dir.path() / "log.txt";
  {
    std::ofstream f(in, std::ios::binary);
    f << with_svg_namespace(square_canvas(svg_text));
  }
  std::string cmd = replace_all(cfg.command_template, "{in}", shell_quote(in.string()));
  cmd = replace_all(cmd, "{out}", shell_quote(out.string()));
  cmd = replace_all(cmd, "{size}", std::to_string(cfg.size));
  cmd = "(" + cmd + ") >" + shell_quote(log.string()) + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (status != 0 || !fs::exists(out))
    throw Error(ErrorCode::RendererFailed,
                "renderer exited with status " + std::to_string(status) + ": " + read_file(log));
  RgbImage img = read_png(out.string());
  if (img.width == cfg.size && img.height == cfg.size) return img;
  if (img.width > cfg.size || img.height > cfg.size)
    throw Error(ErrorCode::RendererFailed, "renderer produced " + std::to_string(img.width) + "x" +
                                               std::to_string(img.height) + ", larger than the canvas");
  RgbImage canvas;
  canvas.width = canvas.height = cfg.size;
  canvas.rgb.assign(static_cast<std::size_t>(cfg.size) * static_cast<std::size_t>(cfg.size) * 3, 255);
  const int ox = (cfg.size - img.width) / 2;
  const int oy = (cfg.size - img.height) / 2;
  for (int y = 0; y < img.height; ++y) {
    std::copy_n(img.rgb.begin() + static_cast<std::ptrdiff_t>(y) * img.width * 3, img.width * 3,
                canvas.rgb.begin() + (static_cast<std::ptrdiff_t>(y + oy) * cfg.size + ox) * 3);
  }
  return canvas;
}

namespace {

void check_sizes(const RgbImage& a, const RgbImage& b) {
  if (a.width != b.width || a.height != b.height || a.rgb.size() != b.rgb.size())
    throw Error(ErrorCode::InvalidArgument, "image sizes differ");
}

DiffResult finish(const RgbImage& a, std::uint64_t sum, unsigned max, std::size_t differing) {
  DiffResult r;
  const double denom = static_cast<double>(a.rgb.size()) * 255.0;
  r.mean_abs = a.rgb.empty() ? 0.0 : static_cast<double>(sum) / denom;
  r.max_abs = max / 255.0;
  r.differing_pixels = differing;
  return r;
}

}  // namespace

DiffResult diff_images_serial(const RgbImage& a, const RgbImage& b) {
  check_sizes(a, b);
  std::uint64_t sum = 0;
  unsigned max = 0;
  std::size_t differing = 0;
  const std::size_t pixels = a.rgb.size() / 3;
  for (std::size_t p = 0; p < pixels; ++p) {
    bool diff = false;
    for (std::size_t c = 0; c < 3; ++c) {
      const int d = std::abs(int{a.rgb[3 * p + c]} - int{b.rgb[3 * p + c]});
      sum += static_cast<unsigned>(d);
      max = std::max(max, static_cast<unsigned>(d));
      diff = diff || d != 0;
    }
    differing += diff;
  }
  return finish(a, sum, max, differing);
}

DiffResult diff_images(const RgbImage& a, const RgbImage& b) {
  check_sizes(a, b);
  std::uint64_t sum = 0;
  unsigned max = 0;
  std::size_t differing = 0;
  const auto pixels = static_cast<std::ptrdiff_t>(a.rgb.size() / 3);
  const std::uint8_t* pa = a.rgb.data();
  const std::uint8_t* pb = b.rgb.data();
#pragma omp parallel for reduction(+ : sum, differing) reduction(max : max) schedule(static)
  for (std::ptrdiff_t p = 0; p < pixels; ++p) {
    bool diff = false;
    for (std::ptrdiff_t c = 0; c < 3; ++c) {
      const int d = std::abs(int{pa[3 * p + c]} - int{pb[3 * p + c]});
      sum += static_cast<unsigned>(d);
      max = std::max(max, static_cast<unsigned>(d));
      diff = diff || d != 0;
    }
    differing += diff;
  }
  return finish(a, sum, max, differing);
}

DiffResult pixel_diff(const SvgDocument& a, const SvgDocument& b, const RendererConfig& cfg) {
  return pixel_diff(std::string_view(canonical_serialize(a)), std::string_view(canonical_serialize(b)), cfg);
}

DiffResult pixel_diff(std::string_view a, std::string_view b, const RendererConfig& cfg) {
  return diff_images(render_svg(a, cfg), render_svg(b, cfg));
}

std::map<int, DiffResult> quantization_sweep(const SvgDocument& doc, const std::vector<int>& places_list,
                                             const RendererConfig& cfg) {
  const auto reference = render_svg(canonical_serialize(doc), cfg);
  std::map<int, DiffResult> out;
  for (int p : places_list) {
    if (p < 0) throw Error(ErrorCode::InvalidArgument, "places must be >= 0");
    if (out.count(p)) continue;
    out[p] = diff_images(reference, render_svg(canonical_serialize(round_numbers(doc, p)), cfg));
  }
  return out;
}

}  // namespace svgx
