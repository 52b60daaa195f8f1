#include "svgx/error.hpp"

namespace svgx {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedXml: return "MalformedXml";
    case ErrorCode::NoRootSvg: return "NoRootSvg";
    case ErrorCode::NoCanvasSize: return "NoCanvasSize";
    case ErrorCode::BadPathData: return "BadPathData";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::UnsupportedNode: return "UnsupportedNode";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::IdOutOfRange: return "IdOutOfRange";
    case ErrorCode::WrongCount: return "WrongCount";
    case ErrorCode::BadMatrixFile: return "BadMatrixFile";
    case ErrorCode::RendererFailed: return "RendererFailed";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> offset)
    : std::runtime_error(message), code_(code), offset_(offset) {}

}  // namespace svgx
