#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace svgx {

enum class ErrorCode {
  MalformedXml,
  NoRootSvg,
  NoCanvasSize,
  BadPathData,
  DanglingReference,
  UnsupportedNode,
  EmptySequence,
  MissingField,
  GroupMismatch,
  InsufficientSamples,
  IdOutOfRange,
  WrongCount,
  BadMatrixFile,
  RendererFailed,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Exception carried by every fallible operation in the library. `offset()`
/// is the byte position in the offending input when one is meaningful
/// (XML text, path data).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> offset = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace svgx
