#include "regtor/cli/polynomial_parser.hpp"

#include <cctype>

namespace regtor::cli {

namespace {

using poly::Polynomial;

constexpr unsigned kMaxExponent = 1000;

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables, const linalg::BaseRing& ring)
      : text_(text), variables_(variables), ring_(ring) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) fail("expected a polynomial");
    Polynomial p = expression();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  // expression := ['+'|'-'] term (('+'|'-') term)*
  Polynomial expression() {
    Polynomial acc(ring_, variables_.size());
    bool negate = false;
    skip_space();
    if (peek('+') || peek('-')) negate = take() == '-';
    acc = negate ? -term() : term();
    while (true) {
      skip_space();
      if (peek('+')) {
        take();
        acc = acc + term();
      } else if (peek('-')) {
        take();
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  // term := factor ('*' factor)*
  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      skip_space();
      if (!peek('*')) return acc;
      take();
      acc = acc * factor();
    }
  }

  // factor := '-' factor | primary ['^' integer]
  Polynomial factor() {
    skip_space();
    if (peek('-')) {
      take();
      return -factor();
    }
    Polynomial base = primary();
    skip_space();
    if (!peek('^')) return base;
    take();
    skip_space();
    const std::size_t start = pos_;
    mpz_class e = integer();
    if (e > kMaxExponent) fail_at(start, "exponent larger than " + std::to_string(kMaxExponent));
    return base.pow(static_cast<unsigned>(e.get_ui()));
  }

  // primary := integer | variable | '(' expression ')'
  Polynomial primary() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Polynomial::constant(ring_, variables_.size(), ring_.normalize(linalg::Scalar(integer())));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i] == name) return Polynomial::variable(ring_, variables_.size(), i);
      }
      fail_at(start, "unknown variable '" + name + "'");
    }
    if (c == '(') {
      const std::size_t open = pos_;
      take();
      Polynomial inner = expression();
      skip_space();
      if (!peek(')')) fail_at(open, "unbalanced '('");
      take();
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  bool peek(char c) const { return !at_end() && text_[pos_] == c; }
  char take() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const {
    throw PolynomialSyntaxError(pos + 1, message);
  }

  std::string_view text_;
  const std::vector<std::string>& variables_;
  const linalg::BaseRing& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables,
                            const linalg::BaseRing& ring) {
  return Parser(text, variables, ring).parse();
}

}  // namespace regtor::cli
