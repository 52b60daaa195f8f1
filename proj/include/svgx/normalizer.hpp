#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "svgx/error.hpp"
#include "svgx/ir.hpp"
#include "svgx/parser.hpp"

namespace svgx {

struct NormalizeOptions {
  /// nullopt keeps full precision.
  std::optional<int> decimal_places = 2;
  double canvas_size = 128;
  bool unwrap_groups = true;
};

struct NormalizationReport {
  /// Multiset of removals: ledger keys of foreign constructs plus
  /// "unused:<tag>", "invisible:<tag>", "unreferenced:<tag>", "unwrapped:g",
  /// "empty:g".
  std::map<std::string, std::size_t> removed;
  /// Attributes the parser could not represent, keyed "<reason>:<tag>@<attr>".
  std::map<std::string, std::size_t> dropped_attributes;
  /// Unreferenced ids removed from elements.
  std::size_t rewritten = 0;
  std::map<std::string, std::size_t> counts_before;
  std::map<std::string, std::size_t> counts_after;
  std::size_t bytes_before = 0;
  std::size_t bytes_after = 0;

  bool removed_visible_content() const;

  /// Commutative, associative accumulation.
  void merge(const NormalizationReport& other);

  friend bool operator==(const NormalizationReport&, const NormalizationReport&) = default;
};

struct NormalizeResult {
  SvgDocument doc;
  NormalizationReport report;
};

/// Removes foreign machinery, hoists gradients out of defs, prunes unused
/// and statically invisible content, drops unreferenced ids and unwraps
/// attribute-less groups. Throws DanglingReference when a paint or href
/// names an id that is not a gradient in the result.
NormalizeResult strip_redundant(SvgDocument doc, const std::vector<ForeignNode>& foreign,
                                const NormalizeOptions& opts = {});

/// First command absolute moveto; every other absolute command becomes
/// relative. Commands that are already relative are kept as written.
SvgDocument to_relative_paths(SvgDocument doc);

SvgDocument round_numbers(SvgDocument doc, int places);

/// Uniform scale into a size x size viewBox, centred on the short axis.
SvgDocument rescale_canvas(SvgDocument doc, double size);

/// parse -> strip_redundant -> rescale_canvas -> to_relative_paths ->
/// round_numbers.
NormalizeResult normalize(const RawSvg& raw, const NormalizeOptions& opts = {});

struct CorpusEntry {
  std::optional<NormalizeResult> result;
  std::optional<Error> error;
};

/// normalize() over many inputs; entries are in input order.
std::vector<CorpusEntry> normalize_corpus(const std::vector<RawSvg>& inputs,
                                          const NormalizeOptions& opts = {});
std::vector<CorpusEntry> normalize_corpus_serial(const std::vector<RawSvg>& inputs,
                                                 const NormalizeOptions& opts = {});

}  // namespace svgx
