#include "xml.hpp"

#include <map>

#include "svgx/error.hpp"

namespace svgx::xml {

namespace {

constexpr std::size_t kMaxDepth = 512;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view text) : s_(text) {
    if (s_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    entities_ = {{"lt", "<"}, {"gt", ">"}, {"amp", "&"}, {"quot", "\""}, {"apos", "'"}};
  }

  std::vector<XmlNode> document() {
    std::vector<XmlNode> top;
    bool seen_root = false;
    while (true) {
      skip_ws();
      if (eof()) break;
      if (!starts_with("<")) fail("character data outside the root element");
      if (starts_with("<?")) {
        top.push_back(processing_instruction());
      } else if (starts_with("<!--")) {
        top.push_back(comment());
      } else if (starts_with("<!DOCTYPE")) {
        if (seen_root) fail("DOCTYPE after root element");
        top.push_back(doctype());
      } else {
        if (seen_root) fail("more than one root element");
        top.push_back(element(0));
        seen_root = true;
      }
    }
    if (!seen_root) fail("no root element");
    return top;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string, std::less<>> entities_;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::MalformedXml,
                "malformed XML: " + what + " at byte " + std::to_string(pos_), pos_);
  }

  bool eof() const { return pos_ >= s_.size(); }
  bool starts_with(std::string_view p) const { return s_.substr(pos_, p.size()) == p; }
  void skip_ws() {
    while (!eof() && is_space(s_[pos_])) ++pos_;
  }
  void expect(std::string_view p) {
    if (!starts_with(p)) fail("expected '" + std::string(p) + "'");
    pos_ += p.size();
  }

  std::string name() {
    if (eof() || !is_name_start(s_[pos_])) fail("expected a name");
    const auto begin = pos_;
    while (!eof() && is_name_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(begin, pos_ - begin));
  }

  std::string_view until(std::string_view terminator) {
    const auto end = s_.find(terminator, pos_);
    if (end == std::string_view::npos) fail("unterminated construct, missing '" + std::string(terminator) + "'");
    auto body = s_.substr(pos_, end - pos_);
    pos_ = end + terminator.size();
    return body;
  }

  // Expands entity and character references in `raw`; `base` is the
  // offset of raw within the input for error reporting.
  std::string decode(std::string_view raw, std::size_t base, int depth = 0) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const char c = raw[i];
      if (c == '<' && depth == 0) {
        pos_ = base + i;
        fail("'<' in attribute value");
      }
      if (c != '&') {
        out += c;
        continue;
      }
      const auto semi = raw.find(';', i);
      if (semi == std::string_view::npos) {
        pos_ = base + i;
        fail("unterminated entity reference");
      }
      const auto ref = raw.substr(i + 1, semi - i - 1);
      if (!ref.empty() && ref[0] == '#') {
        unsigned long cp = 0;
        bool ok = ref.size() > 1;
        const bool hex = ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X');
        for (std::size_t k = hex ? 2 : 1; k < ref.size() && ok; ++k) {
          const char d = ref[k];
          int v = -1;
          if (d >= '0' && d <= '9') v = d - '0';
          else if (hex && d >= 'a' && d <= 'f') v = d - 'a' + 10;
          else if (hex && d >= 'A' && d <= 'F') v = d - 'A' + 10;
          if (v < 0) ok = false;
          else cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(v);
          if (cp > 0x10FFFF) ok = false;
        }
        if (!ok || (hex && ref.size() == 2) || cp == 0) {
          pos_ = base + i;
          fail("bad character reference");
        }
        append_utf8(out, cp);
      } else {
        auto it = entities_.find(ref);
        if (it == entities_.end() || depth > 8) {
          pos_ = base + i;
          fail("undefined entity '" + std::string(ref) + "'");
        }
        out += (ref == "lt" || ref == "amp" || ref == "gt" || ref == "quot" || ref == "apos")
                   ? it->second
                   : decode(it->second, base + i, depth + 1);
      }
      i = semi;
    }
    return out;
  }

  XmlNode processing_instruction() {
    XmlNode node;
    node.type = NodeType::ProcessingInstruction;
    node.offset = pos_;
    expect("<?");
    node.name = name();
    node.text = std::string(until("?>"));
    return node;
  }

  XmlNode comment() {
    XmlNode node;
    node.type = NodeType::Comment;
    node.offset = pos_;
    expect("<!--");
    node.text = std::string(until("-->"));
    return node;
  }

  XmlNode doctype() {
    XmlNode node;
    node.type = NodeType::Doctype;
    node.offset = pos_;
    expect("<!DOCTYPE");
    const auto begin = pos_;
    // Scan to the closing '>' while honouring the internal subset.
    while (!eof() && s_[pos_] != '[' && s_[pos_] != '>') {
      if (s_[pos_] == '"' || s_[pos_] == '\'') {
        const char q = s_[pos_++];
        while (!eof() && s_[pos_] != q) ++pos_;
      }
      ++pos_;
    }
    if (eof()) fail("unterminated DOCTYPE");
    if (s_[pos_] == '[') {
      ++pos_;
      internal_subset();
    }
    skip_ws();
    expect(">");
    node.text = std::string(s_.substr(begin, pos_ - begin - 1));
    return node;
  }

  void internal_subset() {
    while (true) {
      skip_ws();
      if (eof()) fail("unterminated DOCTYPE internal subset");
      if (s_[pos_] == ']') {
        ++pos_;
        return;
      }
      if (starts_with("<!--")) {
        until("-->");
      } else if (starts_with("<!ENTITY")) {
        pos_ += 8;
        skip_ws();
        bool parameter = false;
        if (!eof() && s_[pos_] == '%') {
          parameter = true;
          ++pos_;
          skip_ws();
        }
        auto ename = name();
        skip_ws();
        if (eof() || (s_[pos_] != '"' && s_[pos_] != '\'')) {
          until(">");  // external entity, not expanded
          continue;
        }
        const char q = s_[pos_++];
        auto value = until(std::string_view(&q, 1));
        skip_ws();
        expect(">");
        if (!parameter) entities_.emplace(std::move(ename), std::string(value));
      } else if (starts_with("<?")) {
        until("?>");
      } else if (starts_with("<!")) {
        until(">");
      } else {
        ++pos_;
      }
    }
  }

  XmlNode element(std::size_t depth) {
    if (depth > kMaxDepth) fail("element nesting too deep");
    XmlNode node;
    node.type = NodeType::Element;
    node.offset = pos_;
    expect("<");
    node.name = name();
    while (true) {
      const bool had_space = !eof() && is_space(s_[pos_]);
      skip_ws();
      if (eof()) fail("unterminated start tag");
      if (starts_with("/>")) {
        pos_ += 2;
        return node;
      }
      if (s_[pos_] == '>') {
        ++pos_;
        break;
      }
      if (!had_space) fail("missing whitespace between attributes");
      Attr attr;
      attr.name = name();
      skip_ws();
      expect("=");
      skip_ws();
      if (eof() || (s_[pos_] != '"' && s_[pos_] != '\'')) fail("expected quoted attribute value");
      const char q = s_[pos_++];
      const auto vbegin = pos_;
      const auto end = s_.find(q, pos_);
      if (end == std::string_view::npos) fail("unterminated attribute value");
      attr.value = decode(s_.substr(vbegin, end - vbegin), vbegin);
      pos_ = end + 1;
      for (const auto& a : node.attrs) {
        if (a.name == attr.name) fail("duplicate attribute '" + attr.name + "'");
      }
      node.attrs.push_back(std::move(attr));
    }

    // Content.
    while (true) {
      if (eof()) fail("unclosed element <" + node.name + ">");
      if (starts_with("</")) {
        pos_ += 2;
        auto close = name();
        if (close != node.name) fail("mismatched end tag </" + close + "> for <" + node.name + ">");
        skip_ws();
        expect(">");
        return node;
      }
      if (starts_with("<!--")) {
        node.children.push_back(comment());
      } else if (starts_with("<![CDATA[")) {
        pos_ += 9;
        XmlNode text;
    text.type = NodeType::Text;
        text.offset = pos_;
        text.text = std::string(until("]]>"));
        node.children.push_back(std::move(text));
      } else if (starts_with("<?")) {
        node.children.push_back(processing_instruction());
      } else if (starts_with("<!")) {
        fail("unexpected markup declaration");
      } else if (s_[pos_] == '<') {
        node.children.push_back(element(depth + 1));
      } else {
        const auto begin = pos_;
        const auto end = s_.find('<', pos_);
        const auto stop = end == std::string_view::npos ? s_.size() : end;
        XmlNode text;
    text.type = NodeType::Text;
        text.offset = begin;
        text.text = decode_text(s_.substr(begin, stop - begin), begin);
        pos_ = stop;
        node.children.push_back(std::move(text));
      }
    }
  }

  std::string decode_text(std::string_view raw, std::size_t base) {
    // Character data may legitimately contain '>' but never a bare '<'.
    return decode(raw, base, 1);
  }
};

}  // namespace

const std::string* XmlNode::attr(std::string_view key) const {
  for (const auto& a : attrs) {
    if (a.name == key) return &a.value;
  }
  return nullptr;
}

std::vector<XmlNode> parse(std::string_view text) { return Reader(text).document(); }

std::string_view local_name(std::string_view qname) {
  const auto colon = qname.find(':');
  return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
}

std::string_view prefix(std::string_view qname) {
  const auto colon = qname.find(':');
  return colon == std::string_view::npos ? std::string_view{} : qname.substr(0, colon);
}

}  // namespace svgx::xml
