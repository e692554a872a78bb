#include "fpt/parse.hpp"

#include <cctype>

namespace fpt {

namespace {

constexpr std::uint64_t kMaxExponent = 1u << 30;

class Parser {
public:
  Parser(std::string_view text, std::shared_ptr<const Ring> ring)
      : text_(text), ring_(std::move(ring)) {}

  SparsePoly run() {
    SparsePoly value = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) {
      throw SyntaxError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    }
    return value;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool consume(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  SparsePoly parse_expr() {
    skip_ws();
    bool negate = consume('-');
    SparsePoly value = parse_term();
    if (negate) value = -value;
    for (;;) {
      if (consume('+')) {
        value = value + parse_term();
      } else if (consume('-')) {
        value = value - parse_term();
      } else {
        return value;
      }
    }
  }

  SparsePoly parse_term() {
    SparsePoly value = parse_factor();
    while (consume('*')) value = value * parse_factor();
    return value;
  }

  SparsePoly parse_factor() {
    SparsePoly base = parse_base();
    if (!consume('^')) return base;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '-') throw NegativeExponentError(pos_);
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      throw SyntaxError("expected a natural number exponent", pos_);
    }
    const std::size_t at = pos_;
    std::uint64_t n = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      n = n * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (n > kMaxExponent) throw SyntaxError("exponent too large", at);
      ++pos_;
    }
    return base.pow(n);
  }

  SparsePoly parse_base() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePoly inner = parse_expr();
      if (!consume(')')) throw SyntaxError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_integer();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_variable();
    throw SyntaxError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  SparsePoly parse_integer() {
    const std::uint64_t p = ring_->p.value();
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = (value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) % p;
      ++pos_;
    }
    return SparsePoly::constant(ring_, value);
  }

  SparsePoly parse_variable() {
    const std::size_t at = pos_;
    std::string name;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      name += text_[pos_];
      ++pos_;
    }
    for (std::size_t j = 0; j < ring_->dim(); ++j) {
      if (ring_->vars[j] == name) {
        std::vector<std::uint32_t> exps(ring_->dim(), 0);
        exps[j] = 1;
        return SparsePoly::monomial(ring_, std::move(exps), 1);
      }
    }
    throw UnknownVariableError(name, at);
  }

  std::string_view text_;
  std::shared_ptr<const Ring> ring_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePoly parse_poly(std::string_view text, std::shared_ptr<const Ring> ring) {
  return Parser(text, std::move(ring)).run();
}

}  // namespace fpt
