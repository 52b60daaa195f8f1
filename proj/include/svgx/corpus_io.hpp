#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svgx/error.hpp"
#include "svgx/instruct.hpp"
#include "svgx/normalizer.hpp"

namespace svgx {

/// Expands directories (recursively, files ending in `extension`), plain
/// files and wildcard file names (`dir/*.svg`) into a sorted, duplicate-free
/// list. Throws Io for inputs that match nothing.
std::vector<std::filesystem::path> discover_files(const std::vector<std::string>& inputs,
                                                  std::string_view extension);

std::string read_text_file(const std::filesystem::path& path);
/// Creates missing parent directories.
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// One line of a samples manifest (JSONL):
///   {"file": "raw/a.svg", "prompt": "...", "desc": "...", "image": "a.png",
///    "group_images": [{"group": 1, "image": "a_g1.png"}], "group_descs": ["..."]}
/// Only "file" is required; it is resolved against the manifest directory.
struct SampleRecord {
  std::filesystem::path file;
  std::string prompt;
  std::string desc;
  std::optional<std::string> image;
  std::vector<GroupImage> group_images;
  std::vector<std::string> group_descs;
};

/// Throws InvalidArgument with the line number on malformed lines.
std::vector<SampleRecord> parse_samples(std::string_view jsonl, const std::filesystem::path& base_dir);
std::vector<SampleRecord> load_samples(const std::filesystem::path& manifest);

struct PreparedSamples {
  /// Samples whose SVG normalized, in manifest order.
  std::vector<SampleInputs> samples;
  /// (file, message) for SVGs that failed; their samples are skipped.
  std::vector<std::pair<std::string, std::string>> failures;
};

/// Normalizes each distinct file once and attaches the documents.
PreparedSamples prepare_samples(const std::vector<SampleRecord>& records, const NormalizeOptions& opts);

}  // namespace svgx
