#include "svgx/embed.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "svgx/codec.hpp"
#include "svgx/error.hpp"

namespace svgx {

namespace {

constexpr std::uint32_t kVersion = 1;

void check_ids(const DescriptionIds& desc, const EmbeddingMatrix& m) {
  if (desc.ids.empty())
    throw Error(ErrorCode::IdOutOfRange, "token " + std::to_string(desc.token) + " has no description ids");
  for (auto id : desc.ids) {
    if (id >= m.rows)
      throw Error(ErrorCode::IdOutOfRange, "id " + std::to_string(id) + " >= rows " + std::to_string(m.rows));
  }
}

void check_descs(const EmbeddingMatrix& m, const std::vector<DescriptionIds>& descs) {
  if (descs.size() != kVocabSize)
    throw Error(ErrorCode::WrongCount,
                "expected " + std::to_string(kVocabSize) + " descriptions, got " + std::to_string(descs.size()));
  for (std::size_t i = 0; i < descs.size(); ++i) {
    if (descs[i].token != static_cast<int>(i))
      throw Error(ErrorCode::WrongCount, "descriptions must be in token id order");
    check_ids(descs[i], m);
  }
}

void mean_into(const DescriptionIds& desc, const EmbeddingMatrix& m, std::span<float> out) {
  std::vector<double> acc(m.cols, 0.0);
  for (auto id : desc.ids) {
    const auto r = m.row(id);
    for (std::size_t c = 0; c < m.cols; ++c) acc[c] += r[c];
  }
  const double n = static_cast<double>(desc.ids.size());
  for (std::size_t c = 0; c < m.cols; ++c) out[c] = static_cast<float>(acc[c] / n);
}

EmbeddingMatrix appended_copy(const EmbeddingMatrix& m) {
  EmbeddingMatrix out;
  out.rows = m.rows + static_cast<std::uint32_t>(kVocabSize);
  out.cols = m.cols;
  out.data.resize(static_cast<std::size_t>(out.rows) * out.cols);
  std::copy(m.data.begin(), m.data.end(), out.data.begin());
  return out;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(const unsigned char* b) {
  return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
}

}  // namespace

std::vector<float> init_embedding(const DescriptionIds& desc, const EmbeddingMatrix& m) {
  check_ids(desc, m);
  std::vector<float> out(m.cols);
  mean_into(desc, m, out);
  return out;
}

EmbeddingMatrix extend_matrix_serial(const EmbeddingMatrix& m, const std::vector<DescriptionIds>& descs) {
  check_descs(m, descs);
  auto out = appended_copy(m);
  for (std::size_t i = 0; i < descs.size(); ++i) mean_into(descs[i], m, out.row(m.rows + i));
  return out;
}

EmbeddingMatrix extend_matrix(const EmbeddingMatrix& m, const std::vector<DescriptionIds>& descs) {
  check_descs(m, descs);
  auto out = appended_copy(m);
  const auto n = static_cast<std::ptrdiff_t>(descs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    mean_into(descs[static_cast<std::size_t>(i)], m, out.row(m.rows + static_cast<std::size_t>(i)));
  return out;
}

EmbeddingMatrix read_matrix(std::istream& in) {
  unsigned char header[16];
  if (!in.read(reinterpret_cast<char*>(header), 16))
    throw Error(ErrorCode::BadMatrixFile, "truncated header");
  if (std::memcmp(header, "EMBM", 4) != 0) throw Error(ErrorCode::BadMatrixFile, "bad magic");
  if (get_u32(header + 4) != kVersion) throw Error(ErrorCode::BadMatrixFile, "unsupported version");
  EmbeddingMatrix m;
  m.rows = get_u32(header + 8);
  m.cols = get_u32(header + 12);
  if (m.rows == 0 || m.cols == 0) throw Error(ErrorCode::BadMatrixFile, "empty matrix");
  const std::size_t count = static_cast<std::size_t>(m.rows) * m.cols;
  std::vector<unsigned char> raw(count * 4);
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size())))
    throw Error(ErrorCode::BadMatrixFile, "truncated payload");
  if (in.peek() != std::char_traits<char>::eof()) throw Error(ErrorCode::BadMatrixFile, "trailing bytes");
  m.data.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    m.data[i] = std::bit_cast<float>(get_u32(raw.data() + 4 * i));
    if (!std::isfinite(m.data[i])) throw Error(ErrorCode::BadMatrixFile, "non-finite value");
  }
  return m;
}

void write_matrix(const EmbeddingMatrix& m, std::ostream& out) {
  if (m.data.size() != static_cast<std::size_t>(m.rows) * m.cols)
    throw Error(ErrorCode::InvalidArgument, "matrix data size does not match rows*cols");
  out.write("EMBM", 4);
  put_u32(out, kVersion);
  put_u32(out, m.rows);
  put_u32(out, m.cols);
  for (float v : m.data) put_u32(out, std::bit_cast<std::uint32_t>(v));
}

EmbeddingMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return read_matrix(in);
}

void write_matrix_file(const EmbeddingMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  write_matrix(m, out);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

std::vector<DescriptionIds> parse_description_ids(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("description ids: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "description ids must be a JSON object");
  std::vector<DescriptionIds> out;
  for (const auto& tok : vocab()) {
    auto it = j.find(std::string(tok.surface));
    if (it == j.end()) throw Error(ErrorCode::WrongCount, "missing ids for " + std::string(tok.surface));
    DescriptionIds d;
    d.token = tok.id;
    for (const auto& v : *it) {
      if (!v.is_number_unsigned()) throw Error(ErrorCode::IdOutOfRange, "ids must be non-negative integers");
      d.ids.push_back(v.get<std::uint32_t>());
    }
    out.push_back(std::move(d));
  }
  if (j.size() != vocab().size()) throw Error(ErrorCode::WrongCount, "unknown token surfaces in description ids");
  return out;
}

}  // namespace svgx
