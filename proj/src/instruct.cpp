#include "svgx/instruct.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <random>

#include "json.hpp"

#include "svgx/codec.hpp"
#include "svgx/error.hpp"

namespace svgx {

namespace {

const std::string kEos(kEndOfSentence);
const std::string kImg(kImagePlaceholder);

std::vector<const Node*> top_level_groups(const SvgDocument& doc) {
  std::vector<const Node*> out;
  for (const auto& n : doc.elements) {
    if (n.kind == ElementKind::Group) out.push_back(&n);
  }
  return out;
}

std::string group_tokens(const Node& group) {
  SvgDocument one;
  one.view_box = {0, 0, 1, 1};
  one.elements.push_back(group);
  auto seq = encode(one);
  seq.items.erase(seq.items.begin());
  seq.items.pop_back();
  return to_text(seq);
}

void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

void check_inputs(int template_id, const SampleInputs& in) {
  if (template_id < 1 || template_id > 5)
    throw Error(ErrorCode::InvalidArgument, "template id must be 1..5");
  if (template_id == 1 || template_id == 2)
    require(!in.prompt.empty(), ErrorCode::MissingField, "template requires a prompt");
  if (template_id >= 3) require(!in.desc.empty(), ErrorCode::MissingField, "template requires a desc");
  if (template_id == 2 || template_id == 4)
    require(in.image_path.has_value(), ErrorCode::MissingField, "template requires image_path");
  if (template_id == 5) {
    require(!in.group_images.empty(), ErrorCode::MissingField, "template requires group_images");
    require(in.group_descs.size() == in.group_images.size(), ErrorCode::MissingField,
            "template requires one group desc per group image");
    const auto groups = top_level_groups(in.svg).size();
    require(in.group_images.size() <= groups, ErrorCode::GroupMismatch,
            "more group images than groups in the svg");
    for (const auto& g : in.group_images)
      require(g.group_index >= 1 && g.group_index <= groups, ErrorCode::GroupMismatch,
              "group index " + std::to_string(g.group_index) + " outside 1.." + std::to_string(groups));
  }
}

// Uniform integer in [0, bound] by rejection, independent of the
// standard library's distribution implementation.
std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t range = bound + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / range * range;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % range;
}

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "unknown";
}

std::string ordinal(std::size_t n) {
  const auto mod100 = n % 100;
  const char* suffix = "th";
  if (mod100 < 11 || mod100 > 13) {
    switch (n % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(n) + suffix;
}

bool eligible(int template_id, const SampleInputs& inputs) {
  try {
    check_inputs(template_id, inputs);
    return true;
  } catch (const Error&) {
    return false;
  }
}

InstructionRecord build_record(int template_id, const SampleInputs& in) {
  check_inputs(template_id, in);
  InstructionRecord r;
  r.template_id = template_id;
  std::string system, user, assistant;
  switch (template_id) {
    case 1:
      system = "You are a helpful assistant, please help me generate SVG " + kEos;
      user = "Generate an SVG illustration from the given description: " + in.prompt + " " + kEos;
      assistant = to_text(encode(in.svg)) + " " + kEos;
      break;
    case 2:
      system = "You are a helpful assistant, please help me generate an SVG from this image and description. " + kEos;
      user = "Refer to rendering image: " + kImg + " and generate SVG from the given description: " + in.prompt +
             " " + kEos;
      assistant = to_text(encode(in.svg)) + " " + kEos;
      r.images.push_back(*in.image_path);
      break;
    case 3:
      system = "Attempt to identify this SVG " + kEos;
      user = "The following is an SVG illustration: " + to_text(encode(in.svg));
      assistant = "Text description of this SVG: " + in.desc + " " + kEos;
      break;
    case 4:
      system = "Describe this SVG based on its image representation " + kEos;
      user = "The following is an SVG illustration: " + to_text(encode(in.svg)) + " rendering result: " + kImg;
      assistant = "Text description of this SVG: " + in.desc + ". This SVG contains " +
                  std::to_string(count_primitives(in.svg.elements)) + " primitives. " + kEos;
      r.images.push_back(*in.image_path);
      break;
    case 5: {
      system = "Describe this SVG based on its image representation " + kEos;
      const auto groups = top_level_groups(in.svg);
      assistant = "Text description of this SVG: " + in.desc;
      for (std::size_t k = 0; k < in.group_images.size(); ++k) {
        const Node& g = *groups[in.group_images[k].group_index - 1];
        if (k) user += '\n';
        user += "SVG group " + std::to_string(k + 1) + ": " + group_tokens(g) + " rendering result: " + kImg;
        r.images.push_back(in.group_images[k].image);
        assistant += "\nThe " + ordinal(k + 1) + " SVG group contains " +
                     std::to_string(count_primitives(g.children)) + " primitives representing " +
                     in.group_descs[k];
      }
      user += " " + kEos;
      assistant += " " + kEos;
      break;
    }
  }
  r.messages = {{Role::System, std::move(system)},
                {Role::User, std::move(user)},
                {Role::Assistant, std::move(assistant)}};
  r.loss_spans = loss_mask(r);
  return r;
}

std::vector<LossSpan> loss_mask(const InstructionRecord& record) {
  std::vector<LossSpan> spans;
  for (std::size_t i = 0; i < record.messages.size(); ++i) {
    if (record.messages[i].role == Role::Assistant)
      spans.push_back({i, 0, record.messages[i].content.size()});
  }
  return spans;
}

std::string to_json_line(const InstructionRecord& record) {
  nlohmann::ordered_json j;
  j["template"] = record.template_id;
  j["messages"] = nlohmann::ordered_json::array();
  for (const auto& m : record.messages)
    j["messages"].push_back({{"role", std::string(to_string(m.role))}, {"content", m.content}});
  j["images"] = record.images;
  j["loss_spans"] = nlohmann::ordered_json::array();
  for (const auto& s : record.loss_spans)
    j["loss_spans"].push_back({s.message_index, s.byte_start, s.byte_end});
  return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

std::string to_json(const CorpusManifest& m) {
  auto counts = [](const std::map<int, std::size_t>& c) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c) j[std::to_string(k)] = v;
    return j;
  };
  nlohmann::ordered_json j;
  j["seed"] = m.seed;
  j["samples"] = m.samples;
  j["requested"] = counts(m.requested);
  j["realized"] = counts(m.realized);
  j["eligible"] = counts(m.eligible);
  return j.dump(2);
}

std::map<int, std::size_t> parse_mix(std::string_view text) {
  std::map<int, std::size_t> mix;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const auto part = text.substr(start, end - start);
    const auto eq = part.find('=');
    int id = 0;
    std::size_t count = 0;
    if (eq == std::string_view::npos ||
        std::from_chars(part.data(), part.data() + eq, id).ptr != part.data() + eq ||
        std::from_chars(part.data() + eq + 1, part.data() + part.size(), count).ptr !=
            part.data() + part.size() ||
        id < 1 || id > 5 || mix.count(id))
      throw Error(ErrorCode::InvalidArgument, "bad mix entry '" + std::string(part) + "'");
    mix[id] = count;
    start = end + 1;
  }
  return mix;
}

CorpusManifest build_corpus(const std::vector<SampleInputs>& samples,
                            const std::map<int, std::size_t>& mix, std::uint64_t seed,
                            std::ostream& jsonl) {
  CorpusManifest manifest;
  manifest.seed = seed;
  manifest.samples = samples.size();
  manifest.requested = mix;
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, std::vector<std::size_t>>> plan;
  for (const auto& [id, count] : mix) {
    if (id < 1 || id > 5) throw Error(ErrorCode::InvalidArgument, "template id must be 1..5");
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (eligible(id, samples[i])) pool.push_back(i);
    }
    manifest.eligible[id] = pool.size();
    if (pool.size() < count)
      throw Error(ErrorCode::InsufficientSamples,
                  "template " + std::to_string(id) + " needs " + std::to_string(count) + " samples, " +
                      std::to_string(pool.size()) + " eligible");
    // Partial Fisher-Yates: the first `count` slots are a uniform draw.
    for (std::size_t i = 0; i < count; ++i) {
      const auto j = i + uniform(rng, pool.size() - 1 - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    plan.emplace_back(id, std::move(pool));
  }
  for (const auto& [id, chosen] : plan) {
    for (auto i : chosen) jsonl << to_json_line(build_record(id, samples[i])) << '\n';
    manifest.realized[id] = chosen.size();
  }
  return manifest;
}

}  // namespace svgx
