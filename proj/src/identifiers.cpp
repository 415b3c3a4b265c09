#include "subdist/identifiers.hpp"

#include <cctype>
#include <charconv>

#include "subdist/group_models.hpp"

namespace subdist {
namespace {

class IdentifierParser {
 public:
  explicit IdentifierParser(const std::string& text) : text_(text) {}

  ParsedIdentifier parse() {
    ParsedIdentifier id = parse_ident();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return id;
  }

 private:
  ParsedIdentifier parse_ident() {
    skip_space();
    ParsedIdentifier id;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '-' || text_[pos_] == '_')) {
      id.head.push_back(text_[pos_++]);
    }
    if (id.head.empty()) fail("expected a name");
    skip_space();
    if (peek('(')) {
      ++pos_;
      id.args.push_back(parse_ident());
      skip_space();
      expect(',');
      id.args.push_back(parse_ident());
      skip_space();
      expect(')');
      return id;
    }
    while (peek(':')) {
      ++pos_;
      skip_space();
      std::size_t start = pos_;
      if (peek('-')) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
      if (ec != std::errc() || ptr != text_.data() + pos_ || start == pos_) {
        pos_ = start;
        fail("expected an integer parameter");
      }
      id.params.push_back(value);
      skip_space();
    }
    return id;
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("identifier \"" + text_ + "\" at column " + std::to_string(pos_ + 1) +
                          ": " + what);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string ParsedIdentifier::to_string() const {
  std::string out = head;
  if (!args.empty()) {
    out += "(" + args[0].to_string() + ", " + args[1].to_string() + ")";
    return out;
  }
  for (auto p : params) out += ":" + std::to_string(p);
  return out;
}

ParsedIdentifier parse_identifier(const std::string& text) { return IdentifierParser(text).parse(); }

}  // namespace subdist
