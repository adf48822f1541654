#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "hbfde/cli.hpp"
#include "hbfde/errors.hpp"

namespace hbfde::cli {

struct Expression::Node {
  enum class Kind { number, x, t, add, sub, mul, div, pow, neg, sin, cos, exp, sqrt };
  Kind kind;
  double value = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using Ptr = std::shared_ptr<const Node>;

Ptr make(Node::Kind k, Ptr lhs = nullptr, Ptr rhs = nullptr, double value = 0.0) {
  return std::make_shared<const Node>(Node{k, value, std::move(lhs), std::move(rhs)});
}

double eval(const Node& n, double x, double t) {
  switch (n.kind) {
    case Node::Kind::number:
      return n.value;
    case Node::Kind::x:
      return x;
    case Node::Kind::t:
      return t;
    case Node::Kind::add:
      return eval(*n.lhs, x, t) + eval(*n.rhs, x, t);
    case Node::Kind::sub:
      return eval(*n.lhs, x, t) - eval(*n.rhs, x, t);
    case Node::Kind::mul:
      return eval(*n.lhs, x, t) * eval(*n.rhs, x, t);
    case Node::Kind::div:
      return eval(*n.lhs, x, t) / eval(*n.rhs, x, t);
    case Node::Kind::pow:
      return std::pow(eval(*n.lhs, x, t), eval(*n.rhs, x, t));
    case Node::Kind::neg:
      return -eval(*n.lhs, x, t);
    case Node::Kind::sin:
      return std::sin(eval(*n.lhs, x, t));
    case Node::Kind::cos:
      return std::cos(eval(*n.lhs, x, t));
    case Node::Kind::exp:
      return std::exp(eval(*n.lhs, x, t));
    case Node::Kind::sqrt:
      return std::sqrt(eval(*n.lhs, x, t));
  }
  return 0.0;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Ptr parse() {
    auto e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

  bool uses_t = false;

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("expression \"" + s_ + "\": " + what + " at position " + std::to_string(pos_ + 1));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Ptr sum() {
    auto lhs = product();
    for (;;) {
      if (eat('+')) {
        lhs = make(Node::Kind::add, lhs, product());
      } else if (eat('-')) {
        lhs = make(Node::Kind::sub, lhs, product());
      } else {
        return lhs;
      }
    }
  }

  Ptr product() {
    auto lhs = unary();
    for (;;) {
      if (eat('*')) {
        lhs = make(Node::Kind::mul, lhs, unary());
      } else if (eat('/')) {
        lhs = make(Node::Kind::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  // -x^2 is -(x^2); the exponent binds to the right.
  Ptr unary() {
    if (eat('-')) return make(Node::Kind::neg, unary());
    if (eat('+')) return unary();
    auto base = primary();
    if (eat('^')) return make(Node::Kind::pow, base, unary());
    return base;
  }

  Ptr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = sum();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
      if (ec != std::errc()) fail("malformed number");
      pos_ = static_cast<std::size_t>(end - s_.data());
      return make(Node::Kind::number, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (id == "x") return make(Node::Kind::x);
      if (id == "t") {
        uses_t = true;
        return make(Node::Kind::t);
      }
      if (id == "pi") return make(Node::Kind::number, nullptr, nullptr, std::numbers::pi);
      Node::Kind k;
      if (id == "sin") {
        k = Node::Kind::sin;
      } else if (id == "cos") {
        k = Node::Kind::cos;
      } else if (id == "exp") {
        k = Node::Kind::exp;
      } else if (id == "sqrt") {
        k = Node::Kind::sqrt;
      } else {
        pos_ = start;
        fail("unknown name '" + id + "'");
      }
      if (!eat('(')) fail("expected '(' after " + id);
      auto arg = sum();
      if (!eat(')')) fail("missing ')'");
      return make(k, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Parser p(text);
  Expression e;
  e.root_ = p.parse();
  e.uses_t_ = p.uses_t;
  e.text_ = text;
  return e;
}

double Expression::operator()(double x, double t) const { return eval(*root_, x, t); }

}  // namespace hbfde::cli
