#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "svgx/normalizer.hpp"
#include "svgx/parser.hpp"

namespace svgx {

/// Byte length after deleting XML comments and every whitespace byte.
std::size_t avg_tok(std::string_view svg_text);

/// Lowercased, ASCII punctuation removed, split on whitespace.
std::map<std::string, std::size_t> word_counts(std::string_view text);

struct StatsInput {
  RawSvg svg;
  std::string caption;
  std::string desc;
};

struct FileFailure {
  std::string source;
  std::string error;
  friend bool operator==(const FileFailure&, const FileFailure&) = default;
};

struct CorpusStats {
  std::size_t documents = 0;
  std::map<std::string, std::size_t> element_counts_before;
  std::map<std::string, std::size_t> element_counts_after;
  /// Groups per normalized document (all depths) -> number of documents.
  std::map<std::size_t, std::size_t> group_count_histogram;
  std::map<std::string, std::size_t> word_frequencies;
  std::size_t avg_tok_total = 0;
  double avg_tok_mean = 0;
  /// Sorted by source.
  std::vector<FileFailure> failures;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

CorpusStats corpus_stats(const std::vector<StatsInput>& files, const NormalizeOptions& opts = {});
CorpusStats corpus_stats_serial(const std::vector<StatsInput>& files, const NormalizeOptions& opts = {});

std::string to_json(const CorpusStats& stats);
/// kind,before,after
std::string element_counts_csv(const CorpusStats& stats);
/// groups,documents
std::string group_histogram_csv(const CorpusStats& stats);
/// word,count (most frequent first, ties by word)
std::string word_frequencies_csv(const CorpusStats& stats);

}  // namespace svgx
