#include "svgx/stats.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

namespace svgx {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Per-file contribution; merged with sums only, so the reduction order
// does not matter.
struct Partial {
  bool ok = false;
  FileFailure failure;
  std::map<std::string, std::size_t> before, after;
  std::size_t groups = 0;
  std::map<std::string, std::size_t> words;
  std::size_t tokens = 0;
};

Partial analyse(const StatsInput& in, const NormalizeOptions& opts) {
  Partial p;
  for (const auto& [w, n] : word_counts(in.caption)) p.words[w] += n;
  for (const auto& [w, n] : word_counts(in.desc)) p.words[w] += n;
  try {
    auto r = normalize(in.svg, opts);
    p.before = r.report.counts_before;
    p.after = r.report.counts_after;
    const auto counts = count_elements(r.doc);
    if (auto it = counts.find("g"); it != counts.end()) p.groups = it->second;
    p.tokens = avg_tok(canonical_serialize(r.doc));
    p.ok = true;
  } catch (const std::exception& e) {
    p.failure = {in.svg.source_path.value_or("<input>"), e.what()};
  }
  return p;
}

void add(std::map<std::string, std::size_t>& into, const std::map<std::string, std::size_t>& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

CorpusStats reduce(std::vector<Partial>& parts) {
  CorpusStats s;
  for (auto& p : parts) {
    if (!p.ok) {
      s.failures.push_back(std::move(p.failure));
      continue;
    }
    add(s.word_frequencies, p.words);
    ++s.documents;
    add(s.element_counts_before, p.before);
    add(s.element_counts_after, p.after);
    ++s.group_count_histogram[p.groups];
    s.avg_tok_total += p.tokens;
  }
  s.avg_tok_mean = s.documents ? static_cast<double>(s.avg_tok_total) / static_cast<double>(s.documents) : 0.0;
  std::sort(s.failures.begin(), s.failures.end(),
            [](const FileFailure& a, const FileFailure& b) { return std::tie(a.source, a.error) < std::tie(b.source, b.error); });
  return s;
}

}  // namespace

std::size_t avg_tok(std::string_view text) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 4, "<!--") == 0) {
      const auto end = text.find("-->", i + 4);
      if (end == std::string_view::npos) break;
      i = end + 3;
      continue;
    }
    if (!is_space(text[i])) ++n;
    ++i;
  }
  return n;
}

std::map<std::string, std::size_t> word_counts(std::string_view text) {
  std::map<std::string, std::size_t> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) ++out[word];
    word.clear();
  };
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (is_space(c)) {
      flush();
    } else if (u < 0x80 && std::ispunct(u)) {
      continue;
    } else {
      word += static_cast<char>(u < 0x80 ? std::tolower(u) : u);
    }
  }
  flush();
  return out;
}

CorpusStats corpus_stats_serial(const std::vector<StatsInput>& files, const NormalizeOptions& opts) {
  std::vector<Partial> parts;
  parts.reserve(files.size());
  for (const auto& f : files) parts.push_back(analyse(f, opts));
  return reduce(parts);
}

CorpusStats corpus_stats(const std::vector<StatsInput>& files, const NormalizeOptions& opts) {
  std::vector<Partial> parts(files.size());
  const auto n = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) parts[static_cast<std::size_t>(i)] = analyse(files[static_cast<std::size_t>(i)], opts);
  return reduce(parts);
}

std::string to_json(const CorpusStats& s) {
  nlohmann::ordered_json j;
  j["documents"] = s.documents;
  j["element_counts_before"] = s.element_counts_before;
  j["element_counts_after"] = s.element_counts_after;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.group_count_histogram) hist[std::to_string(k)] = v;
  j["group_count_histogram"] = hist;
  j["word_frequencies"] = s.word_frequencies;
  j["avg_tok_total"] = s.avg_tok_total;
  j["avg_tok_mean"] = s.avg_tok_mean;
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : s.failures) j["failures"].push_back({{"source", f.source}, {"error", f.error}});
  return j.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

std::string element_counts_csv(const CorpusStats& s) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> rows;
  for (const auto& [k, v] : s.element_counts_before) rows[k].first = v;
  for (const auto& [k, v] : s.element_counts_after) rows[k].second = v;
  std::string out = "kind,before,after\n";
  for (const auto& [k, v] : rows) out += k + "," + std::to_string(v.first) + "," + std::to_string(v.second) + "\n";
  return out;
}

std::string group_histogram_csv(const CorpusStats& s) {
  std::string out = "groups,documents\n";
  for (const auto& [k, v] : s.group_count_histogram) out += std::to_string(k) + "," + std::to_string(v) + "\n";
  return out;
}

std::string word_frequencies_csv(const CorpusStats& s) {
  std::vector<std::pair<std::string, std::size_t>> rows(s.word_frequencies.begin(), s.word_frequencies.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string out = "word,count\n";
  for (const auto& [w, n] : rows) {
    // Words never contain commas or quotes after punctuation stripping.
    out += w + "," + std::to_string(n) + "\n";
  }
  return out;
}

}  // namespace svgx
