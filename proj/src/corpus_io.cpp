#include "svgx/corpus_io.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace svgx {

namespace fs = std::filesystem;

namespace {

bool has_wildcard(std::string_view s) { return s.find_first_of("*?[") != std::string_view::npos; }

bool ends_with(const fs::path& p, std::string_view ext) {
  const auto name = p.filename().string();
  return name.size() >= ext.size() && name.compare(name.size() - ext.size(), ext.size(), ext) == 0;
}

}  // namespace

std::vector<fs::path> discover_files(const std::vector<std::string>& inputs, std::string_view extension) {
  std::set<fs::path> found;
  for (const auto& input : inputs) {
    const fs::path p(input);
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        if (e.is_regular_file() && ends_with(e.path(), extension)) found.insert(e.path().lexically_normal());
      }
    } else if (fs::is_regular_file(p, ec)) {
      found.insert(p.lexically_normal());
    } else if (has_wildcard(p.filename().string())) {
      const auto dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
      const auto pattern = p.filename().string();
      std::size_t matched = 0;
      if (fs::is_directory(dir, ec)) {
        for (const auto& e : fs::directory_iterator(dir)) {
          if (e.is_regular_file() && ::fnmatch(pattern.c_str(), e.path().filename().c_str(), 0) == 0) {
            found.insert(e.path().lexically_normal());
            ++matched;
          }
        }
      }
      if (matched == 0) throw Error(ErrorCode::Io, "no files match " + input);
    } else {
      throw Error(ErrorCode::Io, "no such file or directory: " + input);
    }
  }
  return {found.begin(), found.end()};
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
}

std::vector<SampleRecord> parse_samples(std::string_view jsonl, const fs::path& base_dir) {
  std::vector<SampleRecord> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < jsonl.size()) {
    auto end = jsonl.find('\n', start);
    if (end == std::string_view::npos) end = jsonl.size();
    const auto line = jsonl.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const auto where = "samples line " + std::to_string(line_no) + ": ";
    try {
      const auto j = nlohmann::json::parse(line);
      SampleRecord r;
      r.file = base_dir / j.at("file").get<std::string>();
      r.prompt = j.value("prompt", "");
      r.desc = j.value("desc", "");
      if (j.contains("image") && !j["image"].is_null()) r.image = j["image"].get<std::string>();
      for (const auto& g : j.value("group_images", nlohmann::json::array()))
        r.group_images.push_back({g.at("group").get<std::size_t>(), g.at("image").get<std::string>()});
      r.group_descs = j.value("group_descs", std::vector<std::string>{});
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, where + e.what());
    }
  }
  return out;
}

std::vector<SampleRecord> load_samples(const fs::path& manifest) {
  return parse_samples(read_text_file(manifest), manifest.parent_path());
}

PreparedSamples prepare_samples(const std::vector<SampleRecord>& records, const NormalizeOptions& opts) {
  std::map<fs::path, std::size_t> index;
  std::vector<RawSvg> raws;
  std::vector<std::optional<std::string>> read_errors;
  for (const auto& r : records) {
    if (index.count(r.file)) continue;
    index[r.file] = raws.size();
    try {
      raws.push_back({read_text_file(r.file), r.file.string()});
      read_errors.emplace_back();
    } catch (const Error& e) {
      raws.push_back({"", r.file.string()});
      read_errors.emplace_back(e.what());
    }
  }
  const auto docs = normalize_corpus(raws, opts);

  PreparedSamples out;
  for (std::size_t i = 0; i < raws.size(); ++i) {
    if (read_errors[i]) {
      out.failures.emplace_back(*raws[i].source_path, *read_errors[i]);
    } else if (docs[i].error) {
      out.failures.emplace_back(*raws[i].source_path, docs[i].error->what());
    }
  }
  for (const auto& r : records) {
    const auto i = index.at(r.file);
    if (read_errors[i] || !docs[i].result) continue;
    SampleInputs s;
    s.svg = docs[i].result->doc;
    s.prompt = r.prompt;
    s.desc = r.desc;
    s.image_path = r.image;
    s.group_images = r.group_images;
    s.group_descs = r.group_descs;
    out.samples.push_back(std::move(s));
  }
  return out;
}

}  // namespace svgx
