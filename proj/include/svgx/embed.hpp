#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace svgx {

/// Dense row-major |V| x d matrix of f32 embeddings.
struct EmbeddingMatrix {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<float> data;

  std::span<const float> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  std::span<float> row(std::size_t r) { return {data.data() + r * cols, cols}; }

  friend bool operator==(const EmbeddingMatrix&, const EmbeddingMatrix&) = default;
};

/// Tokenizer ids of one semantic token's description text.
struct DescriptionIds {
  int token = 0;
  std::vector<std::uint32_t> ids;
};

/// Mean of the description rows, accumulated in f64. Throws IdOutOfRange.
std::vector<float> init_embedding(const DescriptionIds& desc, const EmbeddingMatrix& m);

/// Appends one init_embedding row per semantic token, in token id order.
/// Throws WrongCount unless `descs` has exactly 55 entries with tokens
/// 0..54 in order; IdOutOfRange for a bad id.
EmbeddingMatrix extend_matrix(const EmbeddingMatrix& m, const std::vector<DescriptionIds>& descs);
/// Single-threaded reference for extend_matrix.
EmbeddingMatrix extend_matrix_serial(const EmbeddingMatrix& m, const std::vector<DescriptionIds>& descs);

/// EMBM file: "EMBM", u32 version 1, u32 rows, u32 cols (little-endian),
/// then rows*cols little-endian f32. Throws BadMatrixFile.
EmbeddingMatrix read_matrix(std::istream& in);
void write_matrix(const EmbeddingMatrix& m, std::ostream& out);
EmbeddingMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const EmbeddingMatrix& m, const std::string& path);

/// JSON object mapping token surface -> list of ids. Every vocabulary
/// surface must be present; the result is in token id order.
std::vector<DescriptionIds> parse_description_ids(std::string_view json_text);

}  // namespace svgx
