#pragma once

// Small non-validating XML reader: elements, attributes, character data,
// comments, processing instructions, DOCTYPE (with internal-subset general
// entities) and CDATA. Ill-formed input raises Error{MalformedXml}.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace svgx::xml {

enum class NodeType { Element, Text, Comment, ProcessingInstruction, Doctype };

struct Attr {
  std::string name;
  std::string value;
};

struct XmlNode {
  NodeType type = NodeType::Element;
  std::string name;   // element qname, PI target
  std::string text;   // character data, comment body, PI data
  std::vector<Attr> attrs;
  std::vector<XmlNode> children;
  std::size_t offset = 0;

  const std::string* attr(std::string_view key) const;
};

/// Top-level nodes of the document: prolog items, the root element and
/// any trailing comments/PIs.
std::vector<XmlNode> parse(std::string_view text);

std::string_view local_name(std::string_view qname);
std::string_view prefix(std::string_view qname);

}  // namespace svgx::xml
