#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svgx/ir.hpp"

namespace svgx {

struct RawSvg {
  std::string xml_text;
  std::optional<std::string> source_path;
};

enum class ForeignReason { UnsupportedTag, EditorMetadata, StyleSheet, Declaration, Comment, Doctype };

std::string_view to_string(ForeignReason reason);

/// A construct the IR does not model. Skipped element subtrees are one
/// ForeignNode; `skipped_descendants` counts the elements beneath it.
struct ForeignNode {
  std::string tag_name;
  ForeignReason reason = ForeignReason::UnsupportedTag;
  std::string id;
  std::size_t skipped_descendants = 0;
};

/// "comment", "declaration", "doctype", or "<reason>:<tag>".
std::string ledger_key(const ForeignNode& node);

struct DroppedAttribute {
  std::string element;
  std::string name;
  std::string reason;
};

struct ParseResult {
  SvgDocument doc;
  std::vector<ForeignNode> foreign;
  std::vector<DroppedAttribute> dropped_attributes;
  /// Every element in the input below the root, keyed by qualified tag.
  std::map<std::string, std::size_t> input_element_counts;
  std::size_t input_bytes = 0;
};

/// Parses real-world SVG text into the IR.
///
/// Supported elements become Nodes; everything else is reported as a
/// ForeignNode. Presentation CSS in `style` is split into attributes, colours
/// become lowercase #rrggbb, `xlink:href` maps to `href`, and gradients are
/// rewritten to user-space units with their geometry made explicit (an
/// objectBoundingBox gradient gets the referencing element's box prepended
/// to its gradientTransform). Numbers keep full precision.
///
/// Throws Error with MalformedXml, NoRootSvg, NoCanvasSize or BadPathData.
ParseResult parse_svg(const RawSvg& raw);

/// Parses a colour value ("#f00", "red", "rgb(255,0,0)", "none").
std::optional<Color> parse_color(std::string_view text);

}  // namespace svgx
