#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "svgx/ir.hpp"

namespace svgx {

enum class TokenCategory : unsigned char { Container, Geometry, Gradient, PathCommand, Attribute };

std::string_view to_string(TokenCategory category);

struct SemanticToken {
  int id;
  std::string_view surface;
  TokenCategory category;
  std::string_view description;
};

inline constexpr std::size_t kVocabSize = 55;

inline constexpr int kStartOfSvg = 0;
inline constexpr int kEndOfSvg = 1;
inline constexpr int kStartOfG = 2;
inline constexpr int kEndOfG = 3;

/// The 55 semantic tokens; `vocab()[i].id == i`.
const std::vector<SemanticToken>& vocab();

std::optional<int> token_id(std::string_view surface);
/// Token of a non-group element kind.
int element_token(ElementKind kind);
int path_token(PathOp op);
int attr_token(AttrName name);

struct Token {
  int id = 0;
  friend bool operator==(const Token&, const Token&) = default;
};

struct Literal {
  std::string text;
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Item = std::variant<Token, Literal>;

struct TokenSeq {
  std::vector<Item> items;
  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;
};

/// Element token, then attribute token / value Literal pairs in canonical
/// order. A `d` value becomes a run of command tokens, each followed by one
/// Literal with its space-joined arguments (closepath has none). Text
/// content is a Literal right after the svg_text token. Stops follow their
/// gradient's attributes.
TokenSeq encode(const SvgDocument& doc);

struct DecodeReport {
  std::vector<std::string> recoveries;
  bool clean() const { return recoveries.empty(); }
};

struct DecodeResult {
  SvgDocument doc;
  DecodeReport report;
};

/// Best-effort reconstruction of model output. The canvas is
/// (0, 0, canvas, canvas). Paths are regenerated with an absolute first
/// moveto and relative commands after it. Throws EmptySequence when no
/// START_OF_SVG is present.
DecodeResult decode(const TokenSeq& seq, double canvas = 128);

std::string to_text(const TokenSeq& seq);
TokenSeq from_text(std::string_view text);

/// Subword count of one item under a downstream tokenizer.
using TokenCounter = std::function<std::size_t(const Item&)>;

/// Keeps the longest prefix whose total count fits `max_len`. An empty
/// counter counts 1 per item.
TokenSeq truncate(const TokenSeq& seq, std::size_t max_len = 4096, const TokenCounter& counter = {});

}  // namespace svgx
