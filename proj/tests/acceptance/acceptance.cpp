// Acceptance suite: one PASS/FAIL/SKIP line per criterion.
// Exit status: 0 all passed, 1 any failed, 77 nothing failed but something skipped.

#include <unistd.h>

#include <chrono>
#include <cctype>
#include <cmath>
#include <cstring>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "../oracles/expected_vocab.hpp"
#include "../oracles/mean_oracle.hpp"
#include "CLI11.hpp"
#include "json.hpp"
#include "svgx/codec.hpp"
#include "svgx/corpus_io.hpp"
#include "svgx/embed.hpp"
#include "svgx/error.hpp"
#include "svgx/instruct.hpp"
#include "svgx/normalizer.hpp"
#include "svgx/render.hpp"
#include "svgx/stats.hpp"

using namespace svgx;
namespace fs = std::filesystem;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome pass(std::string d) { return {Status::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Status::Fail, std::move(d)}; }
Outcome skip(std::string d) { return {Status::Skip, std::move(d)}; }
Outcome check(bool ok, std::string d) { return {ok ? Status::Pass : Status::Fail, std::move(d)}; }

struct Fixture {
  RawSvg raw;
  std::string name;
  NormalizeResult norm;
};

struct Context {
  fs::path fixtures;
  std::string cli;
  std::vector<Fixture> files;
  std::optional<RendererConfig> renderer;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

Outcome vocabulary(const Context&) {
  const auto& v = vocab();
  if (v.size() != 55) return fail(std::to_string(v.size()) + " tokens");
  std::map<TokenCategory, int> hist;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].surface != oracle::kExpectedVocab[i].first || v[i].id != static_cast<int>(i))
      return fail("token " + std::to_string(i) + " is " + std::string(v[i].surface));
    ++hist[v[i].category];
  }
  const std::vector<int> got{hist[TokenCategory::Container], hist[TokenCategory::Geometry],
                             hist[TokenCategory::Gradient], hist[TokenCategory::PathCommand],
                             hist[TokenCategory::Attribute]};
  std::string counts;
  for (int c : got) counts += (counts.empty() ? "" : "/") + std::to_string(c);
  return check(got == std::vector<int>{4, 8, 3, 10, 30}, "55 tokens, categories " + counts);
}

Outcome codec_roundtrip(const Context& ctx) {
  std::set<int> seen;
  std::size_t ok = 0;
  std::string first_bad;
  for (const auto& f : ctx.files) {
    const auto seq = encode(f.norm.doc);
    for (const auto& item : seq.items)
      if (const auto* t = std::get_if<Token>(&item)) seen.insert(t->id);
    const auto back = decode(seq);
    if (canonical_serialize(back.doc) == canonical_serialize(f.norm.doc))
      ++ok;
    else if (first_bad.empty())
      first_bad = f.name;
  }
  std::size_t covered = 0;
  std::string missing;
  for (int id = 0; id < 25; ++id) {
    if (seen.count(id))
      ++covered;
    else
      missing += " " + std::string(vocab()[static_cast<std::size_t>(id)].surface);
  }
  const bool pass_all = ctx.files.size() >= 100 && ok == ctx.files.size() && covered == 25;
  std::string d = std::to_string(ok) + "/" + std::to_string(ctx.files.size()) + " byte-identical, " +
                  std::to_string(covered) + "/25 tag and path-command tokens covered";
  if (!first_bad.empty()) d += "; first mismatch " + first_bad;
  if (!missing.empty()) d += "; missing" + missing;
  return check(pass_all, d);
}

Outcome losslessness(const Context& ctx) {
  if (!ctx.renderer) return skip("no rasterizer (set SVGX_RENDERER)");
  const auto n = static_cast<std::ptrdiff_t>(ctx.files.size());
  std::vector<double> rounded(ctx.files.size(), -1), exact(ctx.files.size(), -1);
  std::vector<std::string> errors(ctx.files.size());
  NormalizeOptions full;
  full.decimal_places = std::nullopt;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& f = ctx.files[static_cast<std::size_t>(i)];
    try {
      rounded[static_cast<std::size_t>(i)] =
          pixel_diff(std::string_view(f.raw.xml_text), canonical_serialize(f.norm.doc), *ctx.renderer).mean_abs;
      if (!f.norm.report.removed_visible_content())
        exact[static_cast<std::size_t>(i)] =
            pixel_diff(std::string_view(f.raw.xml_text), canonical_serialize(normalize(f.raw, full).doc),
                       *ctx.renderer)
                .mean_abs;
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  std::size_t within = 0, exact_checked = 0, exact_zero = 0;
  double worst = 0, worst_exact = 0;
  std::string worst_name, worst_exact_name, error;
  for (std::size_t i = 0; i < ctx.files.size(); ++i) {
    if (!errors[i].empty()) {
      if (error.empty()) error = ctx.files[i].name + ": " + errors[i];
      continue;
    }
    if (rounded[i] <= 0.02) ++within;
    if (rounded[i] > worst) worst = rounded[i], worst_name = ctx.files[i].name;
    if (exact[i] >= 0) {
      ++exact_checked;
      if (exact[i] == 0) ++exact_zero;
      if (exact[i] > worst_exact) worst_exact = exact[i], worst_exact_name = ctx.files[i].name;
    }
  }
  std::string d = std::to_string(within) + "/" + std::to_string(ctx.files.size()) + " within 0.02 (max " +
                  fmt(worst) + (worst_name.empty() ? "" : " " + worst_name) + "); unrounded exact " +
                  std::to_string(exact_zero) + "/" + std::to_string(exact_checked);
  if (exact_zero != exact_checked) d += " (max " + fmt(worst_exact) + " " + worst_exact_name + ")";
  if (!error.empty()) d += "; error " + error;
  return check(error.empty() && within == ctx.files.size() && exact_zero == exact_checked, d);
}

Outcome idempotence(const Context& ctx) {
  std::size_t ok = 0;
  std::string bad;
  for (const auto& f : ctx.files) {
    const auto once = canonical_serialize(f.norm.doc);
    if (canonical_serialize(normalize(RawSvg{once, std::nullopt}).doc) == once)
      ++ok;
    else if (bad.empty())
      bad = f.name;
  }
  return check(ok == ctx.files.size(), std::to_string(ok) + "/" + std::to_string(ctx.files.size()) +
                                           " fixed points" + (bad.empty() ? "" : "; first failure " + bad));
}

Outcome quantization_order(const Context& ctx) {
  if (!ctx.renderer) return skip("no rasterizer (set SVGX_RENDERER)");
  const auto n = static_cast<std::ptrdiff_t>(ctx.files.size());
  std::vector<std::map<int, DiffResult>> sweeps(ctx.files.size());
  std::vector<std::string> errors(ctx.files.size());
  NormalizeOptions full;
  full.decimal_places = std::nullopt;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      sweeps[k] = quantization_sweep(normalize(ctx.files[k].raw, full).doc, {0, 2}, *ctx.renderer);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  std::size_t ordered = 0, strict = 0;
  std::string bad;
  for (std::size_t i = 0; i < ctx.files.size(); ++i) {
    if (!errors[i].empty()) {
      if (bad.empty()) bad = ctx.files[i].name + ": " + errors[i];
      continue;
    }
    const double m0 = sweeps[i].at(0).mean_abs, m2 = sweeps[i].at(2).mean_abs;
    if (m0 >= m2)
      ++ordered;
    else if (bad.empty())
      bad = ctx.files[i].name + " (0 places " + fmt(m0) + " < 2 places " + fmt(m2) + ")";
    if (m0 > m2) ++strict;
  }
  return check(ordered == ctx.files.size() && strict > 0,
               std::to_string(ordered) + "/" + std::to_string(ctx.files.size()) + " with 0 places >= 2 places, " +
                   std::to_string(strict) + " strict" + (bad.empty() ? "" : "; first violation " + bad));
}

Outcome embedding_oracle(const Context&) {
  std::mt19937 rng(20241);
  EmbeddingMatrix m{1000, 64, std::vector<float>(1000 * 64)};
  std::normal_distribution<float> value(0.f, 1.f);
  for (auto& v : m.data) v = value(rng);
  std::uniform_int_distribution<std::uint32_t> id(0, 999), len(1, 16);
  std::vector<DescriptionIds> descs;
  for (int t = 0; t < 55; ++t) {
    DescriptionIds d{t, {}};
    for (auto k = len(rng); k > 0; --k) d.ids.push_back(id(rng));
    descs.push_back(std::move(d));
  }
  const auto out = extend_matrix(m, descs);
  if (out.rows != 1055 || out.cols != 64) return fail("shape " + std::to_string(out.rows) + "x" + std::to_string(out.cols));
  const bool untouched = std::memcmp(out.data.data(), m.data.data(), m.data.size() * sizeof(float)) == 0;
  double worst = 0;
  for (std::size_t t = 0; t < 55; ++t) {
    const auto expect = oracle::mean_rows(m.data, 64, descs[t].ids);
    const auto row = out.row(1000 + t);
    for (std::size_t c = 0; c < 64; ++c) worst = std::max(worst, std::abs(double{row[c]} - double{expect[c]}));
  }
  return check(untouched && worst <= 1e-6, "1055x64, max deviation " + fmt(worst) +
                                               (untouched ? ", original rows bit-identical" : ", original rows changed"));
}

Outcome truncation(const Context&) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> len(0, 9000);
  std::size_t over = 0;
  for (int trial = 0; trial < 200; ++trial) {
    TokenSeq s;
    const auto n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 3 == 0)
        s.items.push_back(Literal{std::to_string(rng() % 1000)});
      else
        s.items.push_back(Token{static_cast<int>(rng() % 55)});
    }
    const auto cut = truncate(s, 4096);
    const auto expect = std::min<std::size_t>(n, 4096);
    if (cut.items.size() != expect || !std::equal(cut.items.begin(), cut.items.end(), s.items.begin()))
      return fail("length " + std::to_string(n) + " truncated to " + std::to_string(cut.items.size()));
    over += n > 4096;
  }
  return pass("200 sequences, " + std::to_string(over) + " over budget cut to exactly 4096");
}

// Matches `text` against a skeleton whose {name} placeholders capture text up
// to the next literal piece (the final literal anchors at the end).
std::optional<std::map<std::string, std::string>> match_skeleton(std::string_view skeleton, std::string_view text) {
  std::vector<std::pair<bool, std::string>> pieces;  // (is_placeholder, text)
  for (std::size_t i = 0; i < skeleton.size();) {
    if (skeleton[i] == '{') {
      const auto close = skeleton.find('}', i);
      pieces.emplace_back(true, std::string(skeleton.substr(i + 1, close - i - 1)));
      i = close + 1;
    } else {
      const auto open = std::min(skeleton.find('{', i), skeleton.size());
      pieces.emplace_back(false, std::string(skeleton.substr(i, open - i)));
      i = open;
    }
  }
  std::map<std::string, std::string> caps;
  std::size_t pos = 0;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const auto& [hole, lit] = pieces[p];
    if (!hole) {
      if (text.substr(pos, lit.size()) != lit) return std::nullopt;
      pos += lit.size();
      continue;
    }
    std::size_t end = text.size();
    if (p + 1 < pieces.size()) {
      const auto& next = pieces[p + 1].second;
      end = p + 2 == pieces.size() ? (text.ends_with(next) ? text.size() - next.size() : std::string_view::npos)
                                   : text.find(next, pos);
      if (end == std::string_view::npos || end < pos) return std::nullopt;
    }
    caps[lit] = std::string(text.substr(pos, end - pos));
    pos = end;
  }
  if (pos != text.size()) return std::nullopt;
  return caps;
}

struct SkeletonCheck {
  std::set<std::string> prompts, descs, group_descs;
  std::string error;

  bool fail(std::string e) {
    if (error.empty()) error = std::move(e);
    return false;
  }

  bool svg_ok(const std::string& text, bool whole) {
    const auto seq = from_text(text);
    if (seq.items.empty()) return false;
    if (whole) return decode(seq).report.clean() && to_text(seq) == text;
    TokenSeq wrapped;
    wrapped.items.push_back(Token{kStartOfSvg});
    wrapped.items.insert(wrapped.items.end(), seq.items.begin(), seq.items.end());
    wrapped.items.push_back(Token{kEndOfSvg});
    return std::get_if<Token>(&seq.items.front()) && std::get<Token>(seq.items.front()).id == kStartOfG &&
           decode(wrapped).report.clean() && to_text(seq) == text;
  }

  bool line(std::string_view skeleton, std::string_view text, std::map<std::string, std::string>& caps) {
    auto m = match_skeleton(skeleton, text);
    if (!m) return fail("\"" + std::string(text.substr(0, 120)) + "\" does not fit \"" + std::string(skeleton) + "\"");
    for (const auto& [k, v] : *m) {
      bool ok = true;
      if (k == "prompt") ok = prompts.count(v) > 0;
      if (k == "desc") ok = descs.count(v) > 0;
      if (k == "gdesc") ok = group_descs.count(v) > 0;
      if (k == "svg") ok = svg_ok(v, true);
      if (k == "group") ok = svg_ok(v, false);
      if (k == "n") ok = !v.empty() && v.find_first_not_of("0123456789") == std::string::npos;
      if (!ok) return fail("substituted " + k + " \"" + v.substr(0, 80) + "\" is not a known value");
    }
    caps = std::move(*m);
    return true;
  }

  bool record(const nlohmann::json& j) {
    const int t = j.at("template").get<int>();
    const auto& msgs = j.at("messages");
    if (msgs.size() != 3) return fail("record with " + std::to_string(msgs.size()) + " messages");
    const std::vector<std::string> roles{"system", "user", "assistant"};
    std::vector<std::string> content;
    for (std::size_t i = 0; i < 3; ++i) {
      if (msgs[i].at("role") != roles[i]) return fail("role order");
      content.push_back(msgs[i].at("content").get<std::string>());
    }
    const auto spans = j.at("loss_spans");
    if (spans != nlohmann::json::array({nlohmann::json::array({2, 0, content[2].size()})}))
      return fail("loss spans " + spans.dump());
    std::size_t placeholders = 0;
    for (std::size_t p = 0; (p = content[1].find(kImagePlaceholder, p)) != std::string::npos; ++p) ++placeholders;
    if (placeholders != j.at("images").size()) return fail("placeholder count differs from images");

    std::map<std::string, std::string> caps;
    switch (t) {
      case 1:
        return line("You are a helpful assistant, please help me generate SVG </s>", content[0], caps) &&
               line("Generate an SVG illustration from the given description: {prompt} </s>", content[1], caps) &&
               line("{svg} </s>", content[2], caps);
      case 2:
        return line("You are a helpful assistant, please help me generate an SVG from this image and description. </s>",
                    content[0], caps) &&
               line("Refer to rendering image: <image> and generate SVG from the given description: {prompt} </s>",
                    content[1], caps) &&
               line("{svg} </s>", content[2], caps);
      case 3:
        return line("Attempt to identify this SVG </s>", content[0], caps) &&
               line("The following is an SVG illustration: {svg}", content[1], caps) &&
               line("Text description of this SVG: {desc} </s>", content[2], caps);
      case 4: {
        if (!line("Describe this SVG based on its image representation </s>", content[0], caps) ||
            !line("The following is an SVG illustration: {svg} rendering result: <image>", content[1], caps))
          return false;
        const auto n = count_primitives(decode(from_text(caps.at("svg"))).doc.elements);
        return line("Text description of this SVG: {desc}. This SVG contains {n} primitives. </s>", content[2], caps) &&
               (caps.at("n") == std::to_string(n) || fail("primitive count " + caps.at("n") + " != " + std::to_string(n)));
      }
      case 5: {
        if (!line("Describe this SVG based on its image representation </s>", content[0], caps)) return false;
        std::vector<std::string> user, asst;
        std::istringstream us(content[1]), as(content[2]);
        for (std::string l; std::getline(us, l);) user.push_back(l);
        for (std::string l; std::getline(as, l);) asst.push_back(l);
        if (user.empty() || asst.size() != user.size() + 1) return fail("template 5 line counts");
        for (std::size_t k = 0; k < user.size(); ++k) {
          const bool last = k + 1 == user.size();
          const std::string idx = std::to_string(k + 1);
          if (!line("SVG group " + idx + ": {group} rendering result: <image>" + (last ? " </s>" : ""), user[k], caps))
            return false;
          const auto group_doc = decode(from_text("[<|START_OF_SVG|>] " + caps.at("group") + " [<|END_OF_SVG|>]")).doc;
          const auto n = count_primitives(group_doc.elements.at(0).children);
          if (!line("The " + ordinal(k + 1) + " SVG group contains {n} primitives representing {gdesc}" +
                        (last ? " </s>" : ""),
                    asst[k + 1], caps))
            return false;
          if (caps.at("n") != std::to_string(n)) return fail("group primitive count");
        }
        return line("Text description of this SVG: {desc}", asst[0], caps);
      }
      default:
        return fail("template " + std::to_string(t));
    }
  }
};

Outcome template_fidelity(const Context& ctx) {
  const auto dir = fs::temp_directory_path() / ("svgx_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto out = dir / "records.jsonl", manifest = dir / "manifest.json";
  const std::string mix = "1=250,2=250,3=60,4=60,5=20";
  const std::string cmd = shell_quote(ctx.cli) + " dataset --samples " +
                          shell_quote((ctx.fixtures / "samples.jsonl").string()) + " --mix " + mix +
                          " --seed 3 --out " + shell_quote(out.string()) + " --manifest " +
                          shell_quote(manifest.string()) + " 2>" + shell_quote((dir / "err.txt").string());
  const int status = std::system(cmd.c_str());
  auto cleanup = [&] { fs::remove_all(dir); };
  if (status != 0) {
    const auto err = fs::exists(dir / "err.txt") ? read_text_file(dir / "err.txt") : std::string();
    cleanup();
    return fail("dataset exited with " + std::to_string(status) + ": " + err);
  }

  SkeletonCheck sk;
  for (const auto& r : load_samples(ctx.fixtures / "samples.jsonl")) {
    sk.prompts.insert(r.prompt);
    sk.descs.insert(r.desc);
    sk.group_descs.insert(r.group_descs.begin(), r.group_descs.end());
  }
  std::map<int, std::size_t> counted;
  std::size_t records = 0, good = 0;
  std::istringstream lines(read_text_file(out));
  for (std::string l; std::getline(lines, l);) {
    ++records;
    const auto j = nlohmann::json::parse(l);
    ++counted[j.at("template").get<int>()];
    good += sk.record(j);
  }
  const auto m = nlohmann::json::parse(read_text_file(manifest));
  cleanup();

  const std::map<int, std::size_t> want = parse_mix(mix);
  std::map<int, std::size_t> realized;
  for (const auto& [k, v] : m.at("realized").items()) realized[std::stoi(k)] = v.get<std::size_t>();
  const bool ok = good == records && counted == want && realized == want;
  std::string d = std::to_string(good) + "/" + std::to_string(records) + " records match their skeletons, mix " +
                  (counted == want ? "realized exactly" : "differs") + (realized == want ? "" : ", manifest differs");
  if (!sk.error.empty()) d += "; first problem: " + sk.error;
  return check(ok, d);
}

// Strip-and-count written independently of the library routine.
std::size_t strip_and_count(const std::string& s) {
  std::string no_comments;
  std::size_t pos = 0;
  while (true) {
    const auto open = s.find("<!--", pos);
    no_comments.append(s, pos, open == std::string::npos ? std::string::npos : open - pos);
    if (open == std::string::npos) break;
    const auto close = s.find("-->", open + 4);
    if (close == std::string::npos) break;
    pos = close + 3;
  }
  std::size_t n = 0;
  for (unsigned char c : no_comments) n += !std::isspace(c);
  return n;
}

Outcome stats_checks(const Context& ctx) {
  std::vector<StatsInput> in;
  for (const auto& f : ctx.files) in.push_back({f.raw, "", ""});
  const auto s = corpus_stats(in);
  std::size_t monotone = 0;
  std::string bad;
  for (const auto& [kind, before] : s.element_counts_before) {
    const auto it = s.element_counts_after.find(kind);
    const auto after = it == s.element_counts_after.end() ? 0 : it->second;
    if (after <= before)
      ++monotone;
    else if (bad.empty())
      bad = kind;
  }
  for (const auto& [kind, after] : s.element_counts_after)
    if (!s.element_counts_before.count(kind) && bad.empty()) bad = kind;

  std::size_t agree = 0, total = 0;
  for (const auto& f : ctx.files) {
    const auto text = canonical_serialize(f.norm.doc);
    agree += avg_tok(text) == strip_and_count(text);
    total += strip_and_count(text);
    agree += avg_tok(f.raw.xml_text) == strip_and_count(f.raw.xml_text);
  }
  const bool ok = bad.empty() && agree == 2 * ctx.files.size() && total == s.avg_tok_total;
  return check(ok, std::to_string(monotone) + "/" + std::to_string(s.element_counts_before.size()) +
                       " kinds non-increasing" + (bad.empty() ? "" : " (violation: " + bad + ")") + ", avg_tok agrees on " +
                       std::to_string(agree) + "/" + std::to_string(2 * ctx.files.size()) +
                       " texts, corpus total " + std::to_string(s.avg_tok_total) + " vs oracle " + std::to_string(total));
}

Outcome decode_robustness(const Context& ctx) {
  std::mt19937 rng(99);
  std::size_t ok = 0, recovered = 0;
  std::string bad;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& f = ctx.files[rng() % ctx.files.size()];
    auto seq = encode(f.norm.doc);
    const auto keep = 1 + rng() % seq.items.size();
    seq.items.resize(keep);
    try {
      const auto r = decode(seq);
      check_invariants(r.doc);
      parse_svg(RawSvg{canonical_serialize(r.doc), std::nullopt});
      ++ok;
      recovered += !r.report.clean();
    } catch (const std::exception& e) {
      if (bad.empty()) bad = f.name + " prefix " + std::to_string(keep) + ": " + e.what();
    }
  }
  return check(ok == 1000, std::to_string(ok) + "/1000 prefixes decoded to valid documents, " +
                               std::to_string(recovered) + " with recoveries" + (bad.empty() ? "" : "; " + bad));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  Context ctx;
  std::string fixtures;
  int size = 512;
  app.add_option("--fixtures", fixtures, "Fixture directory (raw/ and samples.jsonl)")->required();
  app.add_option("--cli", ctx.cli, "Path to the svgx executable")->required();
  app.add_option("--render-size", size, "Raster size for render checks");
  CLI11_PARSE(app, argc, argv);
  ctx.fixtures = fixtures;
  ctx.renderer = renderer_from_env(size);

  try {
    for (const auto& p : discover_files({(ctx.fixtures / "raw").string()}, ".svg")) {
      RawSvg raw{read_text_file(p), p.string()};
      auto norm = normalize(raw);
      ctx.files.push_back({std::move(raw), p.filename().string(), std::move(norm)});
    }
  } catch (const std::exception& e) {
    std::cerr << "cannot load fixtures: " << e.what() << "\n";
    return 1;
  }

  const std::vector<std::pair<std::string, std::function<Outcome(const Context&)>>> criteria{
      {"vocabulary exactness", vocabulary},
      {"codec roundtrip", codec_roundtrip},
      {"normalization losslessness", losslessness},
      {"idempotence", idempotence},
      {"quantization ordering", quantization_order},
      {"embedding initialization oracle", embedding_oracle},
      {"truncation rule", truncation},
      {"template fidelity", template_fidelity},
      {"stats monotonicity and avg_tok oracle", stats_checks},
      {"decode robustness", decode_robustness},
  };

  int failed = 0, skipped = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second(ctx);
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "SKIP";
    failed += o.status == Status::Fail;
    skipped += o.status == Status::Skip;
    std::cout << "[" << tag << "] " << (i + 1) << ". " << criteria[i].first << ": " << o.detail << " ("
              << fmt(secs) << " s)\n"
              << std::flush;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed + skipped)) << " passed, " << failed << " failed, "
            << skipped << " skipped\n";
  if (failed) return 1;
  return skipped ? 77 : 0;
}
