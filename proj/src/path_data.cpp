#include "svgx/path_data.hpp"

#include <cctype>

#include "svgx/error.hpp"
#include "svgx/number.hpp"

namespace svgx {

namespace {

constexpr std::array<std::size_t, kPathOpCount> kArity{2, 2, 1, 1, 6, 4, 4, 2, 7, 0};
constexpr std::array<char, kPathOpCount> kLetters{'m', 'l', 'h', 'v', 'c',
                                                  's', 'q', 't', 'a', 'z'};

bool letter_to_op(char c, PathOp& op, bool& relative) {
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (std::size_t i = 0; i < kLetters.size(); ++i) {
    if (kLetters[i] == lower) {
      op = static_cast<PathOp>(i);
      relative = (c == lower);
      return true;
    }
  }
  return false;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

// Arc flags may be written without separators ("a1 1 0 0110 10").
bool scan_flag(std::string_view text, std::size_t& pos, double& out) {
  skip_separators(text, pos);
  if (pos < text.size() && (text[pos] == '0' || text[pos] == '1')) {
    out = text[pos] == '1' ? 1.0 : 0.0;
    ++pos;
    return true;
  }
  return false;
}

[[noreturn]] void fail(std::size_t pos, const char* what) {
  throw Error(ErrorCode::BadPathData,
              std::string("bad path data: ") + what + " at byte " + std::to_string(pos),
              pos);
}

}  // namespace

std::size_t arity(PathOp op) { return kArity[static_cast<std::size_t>(op)]; }

char command_letter(PathOp op) { return kLetters[static_cast<std::size_t>(op)]; }

bool operator==(const PathCmd& a, const PathCmd& b) {
  if (a.op != b.op || a.relative != b.relative) return false;
  const auto n = arity(a.op);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.args[i] != b.args[i]) return false;
  }
  return true;
}

PathData parse_path_data(std::string_view text) {
  PathData out;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && is_space(text[pos])) ++pos;
  };
  skip_ws();
  if (pos == text.size()) return out;

  PathOp op{};
  bool relative = false;
  bool have_command = false;
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    const char c = text[pos];
    PathOp next_op{};
    bool next_rel = false;
    if (letter_to_op(c, next_op, next_rel)) {
      if (!have_command && next_op != PathOp::MoveTo) fail(pos, "path must start with moveto");
      op = next_op;
      relative = next_rel;
      have_command = true;
      ++pos;
      if (op == PathOp::ClosePath) {
        out.push_back(PathCmd{PathOp::ClosePath, relative, {}});
        continue;
      }
    } else if (!have_command) {
      fail(pos, "expected command letter");
    } else if (op == PathOp::ClosePath) {
      fail(pos, "unexpected number after closepath");
    }

    // One argument group for the current op; repeats while numbers follow.
    PathCmd cmd{op, relative, {}};
    const std::size_t n = arity(op);
    for (std::size_t i = 0; i < n; ++i) {
      if (op == PathOp::Arc && (i == 3 || i == 4)) {
        if (!scan_flag(text, pos, cmd.args[i])) fail(pos, "bad arc flag");
        continue;
      }
      if (i > 0) skip_separators(text, pos);
      auto v = scan_number(text, pos);
      if (!v) fail(pos, "expected number");
      cmd.args[i] = *v;
    }
    out.push_back(cmd);
    // Coordinate pairs after a moveto are implicit linetos.
    if (op == PathOp::MoveTo) op = PathOp::LineTo;
    skip_separators(text, pos);
  }
  return out;
}

std::string format_path_args(const PathCmd& cmd) {
  std::string s;
  bool first = true;
  for (double v : cmd.values()) {
    if (!first) s += ' ';
    s += format_number(v);
    first = false;
  }
  return s;
}

std::string format_path_data(const PathData& path) {
  std::string s;
  for (const auto& cmd : path) {
    const char letter = command_letter(cmd.op);
    s += cmd.relative ? letter : static_cast<char>(std::toupper(letter));
    s += format_path_args(cmd);
  }
  return s;
}

}  // namespace svgx
