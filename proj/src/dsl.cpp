#include "starlab/dsl.hpp"

#include <cctype>
#include <limits>
#include <string>
#include <vector>

#include "starlab/error.hpp"

namespace starlab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {
    if (text_.size() > kMaxExpressionBytes) {
      throw ParseError(kMaxExpressionBytes, {"end of input"}, "input longer than 64 KiB");
    }
  }

  RingDescriptor expression() {
    skip_ws();
    const std::size_t start = pos_;
    if (keyword("Z")) {
      expect("(");
      const auto m = positive_integer();
      expect(")");
      return RingDescriptor::cyclic(m);
    }
    if (keyword("M")) {
      expect("(");
      const auto n = positive_integer();
      if (n > std::numeric_limits<std::uint32_t>::max()) fail_at(start, {"matrix size"});
      expect(",");
      skip_ws();
      const std::size_t base_at = pos_;
      auto base = expression();
      if (base.kind() != RingDescriptor::Kind::Cyclic) fail_at(base_at, {"Z("});
      expect(")");
      return RingDescriptor::matrix(static_cast<std::uint32_t>(n), std::move(base));
    }
    if (keyword("prod")) {
      expect("(");
      auto left = expression();
      expect(",");
      auto right = expression();
      expect(")");
      return RingDescriptor::product(std::move(left), std::move(right));
    }
    if (keyword("sub")) {
      expect("(");
      auto parent = expression();
      expect(";");
      std::vector<ElementLiteral> gens;
      gens.push_back(literal());
      while (accept(",")) gens.push_back(literal());
      expect(")");
      return RingDescriptor::subring(std::move(parent), std::move(gens));
    }
    fail_at(start, {"Z(", "M(", "prod(", "sub("});
  }

  ElementLiteral literal() {
    skip_ws();
    if (accept("[")) {
      std::vector<ElementLiteral> items;
      items.push_back(literal());
      while (accept(",")) items.push_back(literal());
      expect("]");
      return ElementLiteral::list(std::move(items));
    }
    if (accept("(")) {
      auto left = literal();
      expect(",");
      auto right = literal();
      expect(")");
      return ElementLiteral::tuple(std::move(left), std::move(right));
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const auto v = integer();
      if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        fail_at(pos_, {"integer"});
      }
      return ElementLiteral::integer(static_cast<std::int64_t>(v));
    }
    fail_at(pos_, {"integer", "[", "("});
  }

  void finish() {
    skip_ws();
    if (pos_ != text_.size()) fail_at(pos_, {"end of input"});
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  // Keywords must be followed by '(' so that e.g. "Zed" is not read as "Z".
  bool keyword(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) != word) return false;
    std::size_t after = pos_ + word.size();
    while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after]))) ++after;
    if (after >= text_.size() || text_[after] != '(') return false;
    pos_ += word.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail_at(pos_, {std::string(token)});
  }

  std::uint64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) fail_at(start, {"integer"});
      v = v * 10 + digit;
      ++pos_;
    }
    if (pos_ == start) fail_at(start, {"integer"});
    return v;
  }

  std::uint64_t positive_integer() {
    skip_ws();
    const std::size_t start = pos_;
    const auto v = integer();
    if (v == 0) fail_at(start, {"positive integer"});
    return v;
  }

  [[noreturn]] void fail_at(std::size_t offset, std::vector<std::string> expected) {
    std::string found = offset < text_.size() ? "'" + std::string(1, text_[offset]) + "'" : "end of input";
    throw ParseError(offset, std::move(expected), std::move(found));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RingDescriptor parse_ring_expr(std::string_view text) {
  Parser p(text);
  auto d = p.expression();
  p.finish();
  return d;
}

ElementLiteral parse_element_literal(std::string_view text) {
  Parser p(text);
  auto lit = p.literal();
  p.finish();
  return lit;
}

}  // namespace starlab
