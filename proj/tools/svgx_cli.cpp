// svgx: batch corpus processing from the command line.
//
// Exit codes: 0 success, 1 processing errors (listed on stderr), 2 usage.

#include <omp.h>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "svgx/codec.hpp"
#include "svgx/corpus_io.hpp"
#include "svgx/embed.hpp"
#include "svgx/instruct.hpp"
#include "svgx/normalizer.hpp"
#include "svgx/render.hpp"
#include "svgx/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace svgx;

namespace {

constexpr int kOk = 0;
constexpr int kProcessingError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> inputs;
  std::string output;
  NormalizeOptions normalize;
  std::optional<RendererConfig> renderer;
  std::uint64_t seed = 0;
  int jobs = 0;
};

// Raw flag values; unset ones fall back to the config file, then defaults.
struct Flags {
  std::string config;
  std::vector<std::string> inputs;
  std::string output;
  std::optional<int> places;
  bool no_round = false;
  std::optional<double> canvas;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<std::string> renderer;
  std::optional<int> render_size;
};

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  int render_size = 512;
  std::optional<std::string> renderer;
  if (!f.config.empty()) {
    ordered_json j;
    try {
      j = ordered_json::parse(read_text_file(f.config));
    } catch (const std::exception& e) {
      throw UsageError("config " + f.config + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("config " + f.config + ": expected a JSON object");
    static const std::set<std::string> known = {"decimal_places", "canvas_size", "unwrap_groups", "renderer",
                                                "render_size",    "seed",        "jobs"};
    try {
      for (const auto& [k, v] : j.items()) {
        if (!known.count(k)) throw UsageError("config " + f.config + ": unknown key '" + k + "'");
        if (k == "decimal_places") {
          cfg.normalize.decimal_places = v.is_null() ? std::nullopt : std::optional<int>(v.get<int>());
        } else if (k == "canvas_size") {
          cfg.normalize.canvas_size = v.get<double>();
        } else if (k == "unwrap_groups") {
          cfg.normalize.unwrap_groups = v.get<bool>();
        } else if (k == "renderer") {
          renderer = v.get<std::string>();
        } else if (k == "render_size") {
          render_size = v.get<int>();
        } else if (k == "seed") {
          cfg.seed = v.get<std::uint64_t>();
        } else if (k == "jobs") {
          cfg.jobs = v.get<int>();
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config " + f.config + ": " + e.what());
    }
  }
  if (f.places) cfg.normalize.decimal_places = *f.places;
  if (f.no_round) cfg.normalize.decimal_places = std::nullopt;
  if (f.canvas) cfg.normalize.canvas_size = *f.canvas;
  if (f.seed) cfg.seed = *f.seed;
  if (f.jobs) cfg.jobs = *f.jobs;
  if (f.renderer) renderer = *f.renderer;
  if (f.render_size) render_size = *f.render_size;
  if (renderer && !renderer->empty()) {
    cfg.renderer = RendererConfig{*renderer, render_size};
  } else {
    cfg.renderer = renderer_from_env(render_size);
  }
  if (cfg.normalize.decimal_places && *cfg.normalize.decimal_places < 0)
    throw UsageError("decimal places must be >= 0");
  if (!(cfg.normalize.canvas_size > 0)) throw UsageError("canvas size must be > 0");
  if (render_size <= 0) throw UsageError("render size must be > 0");
  if (cfg.jobs < 0) throw UsageError("jobs must be >= 0");
  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
  cfg.inputs = f.inputs;
  cfg.output = f.output;
  return cfg;
}

void add_normalize_flags(CLI::App* app, Flags& f) {
  app->add_option("--places", f.places, "Decimal places kept after rescaling (default 2)")->check(CLI::NonNegativeNumber);
  app->add_flag("--no-round", f.no_round, "Keep full precision");
  app->add_option("--canvas", f.canvas, "Target canvas size (default 128)");
}

void add_common_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON config file (flags take precedence)")->check(CLI::ExistingFile);
  app->add_option("-j,--jobs", f.jobs, "Worker threads (default: all cores)");
}

void add_renderer_flags(CLI::App* app, Flags& f) {
  app->add_option("--renderer", f.renderer,
                  "Rasterizer command with {in}, {out}, {size} (default: $SVGX_RENDERER)");
  app->add_option("--render-size", f.render_size, "Raster size in pixels (default 512)");
}

ordered_json report_json(const NormalizationReport& r) {
  ordered_json j;
  j["removed"] = r.removed;
  j["dropped_attributes"] = r.dropped_attributes;
  j["rewritten"] = r.rewritten;
  j["counts_before"] = r.counts_before;
  j["counts_after"] = r.counts_after;
  j["bytes_before"] = r.bytes_before;
  j["bytes_after"] = r.bytes_after;
  return j;
}

std::vector<fs::path> discover(const RunConfig& cfg, std::string_view ext) {
  try {
    return discover_files(cfg.inputs, ext);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// Output names are bare file names; two inputs with the same name would
// overwrite each other.
void check_unique_names(const std::vector<fs::path>& files) {
  std::set<std::string> seen;
  for (const auto& f : files) {
    if (!seen.insert(f.filename().string()).second)
      throw UsageError("two inputs share the file name " + f.filename().string());
  }
}

std::vector<RawSvg> read_all(const std::vector<fs::path>& files) {
  std::vector<RawSvg> raws;
  raws.reserve(files.size());
  for (const auto& f : files) raws.push_back({read_text_file(f), f.string()});
  return raws;
}

void print_failure(const std::string& source, const std::string& message) {
  std::cerr << source << ": " << message << "\n";
}

int run_clean(const RunConfig& cfg) {
  const auto files = discover(cfg, ".svg");
  check_unique_names(files);
  const auto results = normalize_corpus(read_all(files), cfg.normalize);
  const fs::path out(cfg.output);
  NormalizationReport total;
  ordered_json failures = ordered_json::array();
  std::size_t ok = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& r = results[i];
    if (r.error) {
      print_failure(files[i].string(), r.error->what());
      failures.push_back({{"source", files[i].string()}, {"error", r.error->what()}});
      continue;
    }
    write_text_file(out / files[i].filename(), canonical_serialize(r.result->doc) + "\n");
    auto rep = report_json(r.result->report);
    rep["source"] = files[i].string();
    write_text_file(out / "reports" / (files[i].stem().string() + ".json"), rep.dump(2) + "\n");
    total.merge(r.result->report);
    ++ok;
  }
  auto agg = report_json(total);
  agg["files"] = files.size();
  agg["cleaned"] = ok;
  agg["failures"] = failures;
  write_text_file(out / "report.json", agg.dump(2) + "\n");
  std::cerr << "cleaned " << ok << "/" << files.size() << " files into " << out.string() << "\n";
  return ok == files.size() ? kOk : kProcessingError;
}

// Writes to <out>/<stem><ext>, or stdout when no output directory is set.
void emit(const RunConfig& cfg, const fs::path& input, const std::string& ext, const std::string& content) {
  if (cfg.output.empty()) {
    std::cout << content << "\n";
  } else {
    write_text_file(fs::path(cfg.output) / (input.stem().string() + ext), content + "\n");
  }
}

int run_encode(const RunConfig& cfg) {
  const auto files = discover(cfg, ".svg");
  check_unique_names(files);
  if (cfg.output.empty() && files.size() != 1) throw UsageError("--out is required for more than one input");
  const auto results = normalize_corpus(read_all(files), cfg.normalize);
  int status = kOk;
  for (std::size_t i = 0; i < files.size(); ++i) {
    try {
      if (results[i].error) throw *results[i].error;
      emit(cfg, files[i], ".tok", to_text(encode(results[i].result->doc)));
    } catch (const Error& e) {
      print_failure(files[i].string(), e.what());
      status = kProcessingError;
    }
  }
  return status;
}

int run_decode(const RunConfig& cfg, bool strict) {
  const auto files = discover(cfg, ".tok");
  check_unique_names(files);
  if (cfg.output.empty() && files.size() != 1) throw UsageError("--out is required for more than one input");
  int status = kOk;
  for (const auto& f : files) {
    try {
      auto text = read_text_file(f);
      const auto result = decode(from_text(text), cfg.normalize.canvas_size);
      for (const auto& r : result.report.recoveries) print_failure(f.string(), "recovered: " + r);
      if (strict && !result.report.clean()) status = kProcessingError;
      emit(cfg, f, ".svg", canonical_serialize(result.doc));
    } catch (const Error& e) {
      print_failure(f.string(), e.what());
      status = kProcessingError;
    }
  }
  return status;
}

int run_dataset(const RunConfig& cfg, const std::string& samples_path, const std::string& mix_text,
                const std::string& manifest_path) {
  std::map<int, std::size_t> mix;
  std::vector<SampleRecord> records;
  try {
    mix = parse_mix(mix_text);
    records = load_samples(samples_path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const auto prepared = prepare_samples(records, cfg.normalize);
  for (const auto& [file, msg] : prepared.failures) print_failure(file, msg);

  std::ostringstream jsonl;
  CorpusManifest manifest;
  try {
    manifest = build_corpus(prepared.samples, mix, cfg.seed, jsonl);
  } catch (const Error& e) {
    std::cerr << "dataset: " << e.what() << "\n";
    return kProcessingError;
  }
  if (cfg.output.empty()) {
    std::cout << jsonl.str();
  } else {
    write_text_file(cfg.output, jsonl.str());
  }
  if (!manifest_path.empty()) write_text_file(manifest_path, to_json(manifest) + "\n");
  return prepared.failures.empty() ? kOk : kProcessingError;
}

int run_embed_init(const RunConfig& cfg, const std::string& matrix_path, const std::string& descs_path) {
  try {
    const auto m = read_matrix_file(matrix_path);
    const auto descs = parse_description_ids(read_text_file(descs_path));
    write_matrix_file(extend_matrix(m, descs), cfg.output);
    std::cerr << "extended " << m.rows << "x" << m.cols << " to " << (m.rows + descs.size()) << " rows\n";
  } catch (const Error& e) {
    std::cerr << "embed-init: " << e.what() << "\n";
    return kProcessingError;
  }
  return kOk;
}

int run_stats(const RunConfig& cfg, const std::string& samples_path) {
  const auto files = discover(cfg, ".svg");
  std::map<fs::path, std::pair<std::string, std::string>> text;
  if (!samples_path.empty()) {
    std::vector<SampleRecord> records;
    try {
      records = load_samples(samples_path);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    // Several captions of one file are pooled.
    for (const auto& r : records) {
      auto& [caption, desc] = text[fs::weakly_canonical(r.file)];
      caption += (caption.empty() ? "" : " ") + r.prompt;
      desc += (desc.empty() ? "" : " ") + r.desc;
    }
  }
  std::vector<StatsInput> inputs;
  for (const auto& f : files) {
    StatsInput in;
    in.svg = {read_text_file(f), f.string()};
    if (auto it = text.find(fs::weakly_canonical(f)); it != text.end()) {
      in.caption = it->second.first;
      in.desc = it->second.second;
    }
    inputs.push_back(std::move(in));
  }
  const auto s = corpus_stats(inputs, cfg.normalize);
  for (const auto& f : s.failures) print_failure(f.source, f.error);
  if (cfg.output.empty()) {
    std::cout << to_json(s) << "\n";
  } else {
    const fs::path out(cfg.output);
    write_text_file(out / "stats.json", to_json(s) + "\n");
    write_text_file(out / "element_counts.csv", element_counts_csv(s));
    write_text_file(out / "group_histogram.csv", group_histogram_csv(s));
    write_text_file(out / "word_frequencies.csv", word_frequencies_csv(s));
  }
  return s.failures.empty() ? kOk : kProcessingError;
}

// Violations for one file, in check order.
std::vector<std::string> verify_file(const RawSvg& raw, const RunConfig& cfg, double tolerance) {
  std::vector<std::string> v;
  NormalizeResult once;
  try {
    once = normalize(raw, cfg.normalize);
  } catch (const Error& e) {
    return {std::string("normalize failed: ") + e.what()};
  }
  const auto text = canonical_serialize(once.doc);
  try {
    const auto twice = canonical_serialize(normalize(RawSvg{text, raw.source_path}, cfg.normalize).doc);
    if (twice != text) v.push_back("not idempotent");
  } catch (const Error& e) {
    v.push_back(std::string("normalized output does not re-normalize: ") + e.what());
  }
  try {
    const auto decoded = decode(from_text(to_text(encode(once.doc))), cfg.normalize.canvas_size);
    if (canonical_serialize(decoded.doc) != text) v.push_back("codec roundtrip changed the document");
    if (!decoded.report.clean()) v.push_back("codec roundtrip needed recoveries");
  } catch (const Error& e) {
    v.push_back(std::string("codec roundtrip failed: ") + e.what());
  }
  if (!cfg.renderer) return v;
  try {
    const auto d = pixel_diff(std::string_view(raw.xml_text), std::string_view(text), *cfg.renderer);
    if (d.mean_abs > tolerance)
      v.push_back("render diff " + std::to_string(d.mean_abs) + " exceeds " + std::to_string(tolerance));
    if (!once.report.removed_visible_content()) {
      auto full = cfg.normalize;
      full.decimal_places = std::nullopt;
      const auto exact = canonical_serialize(normalize(raw, full).doc);
      const auto e = pixel_diff(std::string_view(raw.xml_text), std::string_view(exact), *cfg.renderer);
      if (e.mean_abs != 0)
        v.push_back("unrounded render diff " + std::to_string(e.mean_abs) + " (" +
                    std::to_string(e.differing_pixels) + " pixels) is not zero");
    }
  } catch (const Error& e) {
    v.push_back(std::string("render check failed: ") + e.what());
  }
  return v;
}

int run_verify(const RunConfig& cfg, double tolerance) {
  const auto files = discover(cfg, ".svg");
  const auto raws = read_all(files);
  std::vector<std::vector<std::string>> violations(files.size());
  const auto n = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    violations[k] = verify_file(raws[k], cfg, tolerance);
  }
  std::size_t bad = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    for (const auto& m : violations[i]) print_failure(files[i].string(), m);
    bad += !violations[i].empty();
  }
  std::cerr << "verified " << files.size() << " files" << (cfg.renderer ? " with renderer" : " (no renderer)")
            << ", " << bad << " with violations\n";
  return bad == 0 ? kOk : kProcessingError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SVG corpus normalization, tokenization and dataset tools"};
  app.require_subcommand(1);
  Flags f;

  auto* clean = app.add_subcommand("clean", "Normalize SVG files and write per-file and aggregate reports");
  clean->add_option("--in", f.inputs, "Input files, directories or globs")->required();
  clean->add_option("--out", f.output, "Output directory")->required();
  add_normalize_flags(clean, f);
  add_common_flags(clean, f);

  auto* enc = app.add_subcommand("encode", "Normalize SVG files and write semantic token text (.tok)");
  enc->add_option("--in", f.inputs, "Input files, directories or globs")->required();
  enc->add_option("--out", f.output, "Output directory (default: stdout for one input)");
  add_normalize_flags(enc, f);
  add_common_flags(enc, f);

  bool strict = false;
  auto* dec = app.add_subcommand("decode", "Decode token text (.tok) into SVG");
  dec->add_option("--in", f.inputs, "Input files, directories or globs")->required();
  dec->add_option("--out", f.output, "Output directory (default: stdout for one input)");
  dec->add_option("--canvas", f.canvas, "Canvas size of the decoded document (default 128)");
  dec->add_flag("--strict", strict, "Exit 1 when any recovery was needed");
  add_common_flags(dec, f);

  std::string samples, mix, manifest;
  auto* ds = app.add_subcommand("dataset", "Build instruction records (JSONL) for a template mix");
  ds->add_option("--samples", samples, "Samples manifest (JSONL)")->required()->check(CLI::ExistingFile);
  ds->add_option("--mix", mix, "Template counts, e.g. 1=250,2=250,3=60,4=60,5=20")->required();
  ds->add_option("--seed", f.seed, "Sampling seed (default 0)");
  ds->add_option("--out", f.output, "Output JSONL file (default: stdout)");
  ds->add_option("--manifest", manifest, "Write requested/realized/eligible counts here");
  add_normalize_flags(ds, f);
  add_common_flags(ds, f);

  std::string matrix, descs;
  auto* emb = app.add_subcommand("embed-init", "Append semantic-token rows to an embedding matrix");
  emb->add_option("--matrix", matrix, "Input matrix file")->required()->check(CLI::ExistingFile);
  emb->add_option("--descs", descs, "JSON map from token surface to description token ids")
      ->required()
      ->check(CLI::ExistingFile);
  emb->add_option("--out", f.output, "Output matrix file")->required();
  add_common_flags(emb, f);

  std::string stats_samples;
  auto* st = app.add_subcommand("stats", "Corpus statistics as JSON and CSV");
  st->add_option("--in", f.inputs, "Input files, directories or globs")->required();
  st->add_option("--samples", stats_samples, "Samples manifest supplying captions")->check(CLI::ExistingFile);
  st->add_option("--out", f.output, "Output directory (default: JSON on stdout)");
  add_normalize_flags(st, f);
  add_common_flags(st, f);

  double tolerance = 0.02;
  auto* ver = app.add_subcommand("verify", "Check idempotence, codec roundtrip and rendering; exit 1 on violations");
  ver->add_option("--in", f.inputs, "Input files, directories or globs")->required();
  ver->add_option("--tolerance", tolerance, "Maximum mean absolute pixel difference (default 0.02)");
  add_normalize_flags(ver, f);
  add_renderer_flags(ver, f);
  add_common_flags(ver, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    const auto cfg = resolve(f);
    if (clean->parsed()) return run_clean(cfg);
    if (enc->parsed()) return run_encode(cfg);
    if (dec->parsed()) return run_decode(cfg, strict);
    if (ds->parsed()) return run_dataset(cfg, samples, mix, manifest);
    if (emb->parsed()) return run_embed_init(cfg, matrix, descs);
    if (st->parsed()) return run_stats(cfg, stats_samples);
    if (ver->parsed()) return run_verify(cfg, tolerance);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kProcessingError;
  }
  return kUsageError;
}
