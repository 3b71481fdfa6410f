#include "talab/set_literal.hpp"

#include <cctype>
#include <string>

namespace talab {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const SetResolver& resolve) : text_(text), resolve_(resolve) {}

  EvaluableSet parse() {
    auto value = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  EvaluableSet expression() {
    EvaluableSet acc = term();
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) return acc;
      const char op = text_[pos_];
      if (op != '+' && op != '-' && op != '&') return acc;
      ++pos_;
      const EvaluableSet rhs = term();
      if (op == '+') acc = unite(acc, rhs);
      else if (op == '-') acc = subtract(acc, rhs);
      else acc = intersect(acc, rhs);
    }
  }

  EvaluableSet term() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a set");
    const char c = text_[pos_];
    if (c == '~') {
      ++pos_;
      return complement(term());
    }
    if (c == '(') {
      ++pos_;
      auto inner = expression();
      expect(')');
      return inner;
    }
    if (c == '{') return finite_set();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return named();
    fail(std::string("unexpected character '") + c + "'");
  }

  EvaluableSet finite_set() {
    expect('{');
    std::vector<std::uint64_t> pts;
    skip_space();
    if (peek('}')) {
      ++pos_;
      return CylinderSet{};
    }
    for (;;) {
      pts.push_back(number());
      skip_space();
      if (peek('}')) {
        ++pos_;
        return CylinderSet::finite(std::move(pts));
      }
      expect(',');
    }
  }

  EvaluableSet named() {
    const std::string id = identifier();
    if (id == "cyl") {
      expect('(');
      skip_space();
      expect('"');
      const auto end = text_.find('"', pos_);
      if (end == std::string_view::npos) fail("unterminated string");
      const auto bits = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      expect(')');
      return CylinderSet::cylinder(BitString::from_text(bits));
    }
    if (id == "omega") return CylinderSet::omega();
    if (id == "empty") return CylinderSet{};
    if (id == "evens") return evens();
    if (id == "odds") return odds();
    if (id == "primes") return primes();
    if (id == "pow2") return powers_of_two();
    if (id == "digit") {
      expect('(');
      const auto i = number();
      expect(')');
      return digit_set(static_cast<unsigned>(i));
    }
    if (id == "residue") {
      expect('(');
      const auto m = number();
      expect(';');
      std::vector<std::uint64_t> rs;
      skip_space();
      if (!peek(')')) {
        for (;;) {
          rs.push_back(number());
          skip_space();
          if (peek(')')) break;
          expect(',');
        }
      }
      expect(')');
      return residue_set(m, rs);
    }
    if (resolve_) {
      if (auto s = resolve_(id)) return *s;
    }
    fail("unknown set name '" + id + "'");
  }

  std::string identifier() {
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t number() {
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoull(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void expect(char c) {
    skip_space();
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("set literal, column " + std::to_string(pos_ + 1) + ": " + what);
  }

  std::string_view text_;
  const SetResolver& resolve_;
  std::size_t pos_ = 0;
};

}  // namespace

EvaluableSet parse_set_literal(std::string_view text, const SetResolver& resolve) {
  return Parser(text, resolve).parse();
}

}  // namespace talab
