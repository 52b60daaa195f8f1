#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "svgx/corpus_io.hpp"
#include "svgx/parser.hpp"

namespace testing {

inline std::filesystem::path fixtures_dir() { return SVGX_FIXTURES; }

/// Raw fixture SVGs in sorted order.
inline const std::vector<svgx::RawSvg>& raw_fixtures() {
  static const std::vector<svgx::RawSvg> raws = [] {
    std::vector<svgx::RawSvg> out;
    for (const auto& p : svgx::discover_files({(fixtures_dir() / "raw").string()}, ".svg"))
      out.push_back({svgx::read_text_file(p), p.string()});
    return out;
  }();
  return raws;
}

}  // namespace testing
