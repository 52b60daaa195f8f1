#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "svgx/ir.hpp"

namespace svgx {

inline constexpr std::string_view kImagePlaceholder = "<image>";
inline constexpr std::string_view kEndOfSentence = "</s>";

enum class Role { System, User, Assistant };
std::string_view to_string(Role role);

struct Message {
  Role role = Role::System;
  std::string content;
  friend bool operator==(const Message&, const Message&) = default;
};

/// Byte range [byte_start, byte_end) inside messages[message_index].content.
struct LossSpan {
  std::size_t message_index = 0;
  std::size_t byte_start = 0;
  std::size_t byte_end = 0;
  friend bool operator==(const LossSpan&, const LossSpan&) = default;
};

struct InstructionRecord {
  int template_id = 1;
  std::vector<Message> messages;
  std::vector<std::string> images;
  std::vector<LossSpan> loss_spans;
  friend bool operator==(const InstructionRecord&, const InstructionRecord&) = default;
};

/// Rendering of one top-level group (1-based index among the document's
/// top-level groups).
struct GroupImage {
  std::size_t group_index = 1;
  std::string image;
};

struct SampleInputs {
  SvgDocument svg;
  std::string prompt;
  std::string desc;
  std::optional<std::string> image_path;
  std::vector<GroupImage> group_images;
  /// One description per entry of group_images.
  std::vector<std::string> group_descs;
};

/// Throws MissingField or GroupMismatch when `inputs` cannot fill the template.
InstructionRecord build_record(int template_id, const SampleInputs& inputs);

/// Whether build_record(template_id, inputs) would succeed.
bool eligible(int template_id, const SampleInputs& inputs);

/// One span per assistant message, covering its whole content.
std::vector<LossSpan> loss_mask(const InstructionRecord& record);

/// "1st", "2nd", "3rd", "4th", "11th", "21st", ...
std::string ordinal(std::size_t n);

std::string to_json_line(const InstructionRecord& record);

struct CorpusManifest {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::map<int, std::size_t> requested;
  std::map<int, std::size_t> realized;
  std::map<int, std::size_t> eligible;
};

std::string to_json(const CorpusManifest& manifest);

/// "1=250,2=250,3=60" -> {1:250, 2:250, 3:60}. Throws InvalidArgument.
std::map<int, std::size_t> parse_mix(std::string_view text);

/// For each template in ascending id, draws `count` distinct eligible
/// samples with a seeded shuffle and writes their records as JSONL, in
/// sample order. Throws InsufficientSamples if a pool is too small.
CorpusManifest build_corpus(const std::vector<SampleInputs>& samples,
                            const std::map<int, std::size_t>& mix, std::uint64_t seed,
                            std::ostream& jsonl);

}  // namespace svgx
