#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace subdist {

// Parsed form of the identifier grammar shared by groups and subgroups:
//   ident := name (':' integer)* | name '(' ident ',' ident ')'
struct ParsedIdentifier {
  std::string head;
  std::vector<std::int64_t> params;
  std::vector<ParsedIdentifier> args;

  std::string to_string() const;
};

ParsedIdentifier parse_identifier(const std::string& text);

}  // namespace subdist
