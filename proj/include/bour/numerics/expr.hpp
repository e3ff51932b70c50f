#pragma once
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bour/errors.hpp"
#include "bour/numerics/jet.hpp"
#include "bour/numerics/scalar_fn.hpp"

// Profile-expression grammar (whitespace insignificant):
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;
//   unary   = "-" unary | power ;
//   power   = primary [ "^" unary ] ;          (right associative)
//   primary = number | "u" | "pi" | "e" | func "(" expr ")" | "(" expr ")" ;
//   func    = sin | cos | tan | sinh | cosh | tanh | asin | acos | atan
//           | asinh | acosh | atanh | sqrt | ln | exp | abs ;

namespace bour {

inline constexpr std::array<std::string_view, 16> expr_functions{
    "sin", "cos", "tan", "sinh", "cosh", "tanh", "asin", "acos", "atan", "asinh", "acosh", "atanh", "sqrt", "ln", "exp", "abs"};

struct ExprNode {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind;
  double value = 0;
  std::string name;  // function name, or constant name for pi/e
  std::shared_ptr<const ExprNode> lhs, rhs;
};

class ExprAst {
 public:
  explicit ExprAst(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

  double operator()(double u) const { return eval<double>(*root_, u); }
  Jet2 operator()(const Jet2& u) const { return eval<Jet2>(*root_, u); }

  std::string to_string() const { return print(*root_); }

  ScalarFn to_scalar_fn(Interval iv = {}) const {
    auto self = std::make_shared<const ExprAst>(*this);
    return ScalarFn::from_jet([self](const Jet2& u) { return (*self)(u); }, iv);
  }

  bool is_constant() const { return !mentions_u(*root_); }

 private:
  template <class T>
  static T apply(const std::string& f, const T& a) {
    using std::abs, std::acos, std::acosh, std::asin, std::asinh, std::atan, std::atanh, std::cos, std::cosh,
        std::exp, std::log, std::sin, std::sinh, std::sqrt, std::tan, std::tanh;
    if (f == "sin") return sin(a);
    if (f == "cos") return cos(a);
    if (f == "tan") return tan(a);
    if (f == "sinh") return sinh(a);
    if (f == "cosh") return cosh(a);
    if (f == "tanh") return tanh(a);
    if (f == "asin") return asin(a);
    if (f == "acos") return acos(a);
    if (f == "atan") return atan(a);
    if (f == "asinh") return asinh(a);
    if (f == "acosh") return acosh(a);
    if (f == "atanh") return atanh(a);
    if (f == "sqrt") return sqrt(a);
    if (f == "ln") return log(a);
    if (f == "exp") return exp(a);
    return abs(a);
  }

  static double power(double a, double b) { return std::pow(a, b); }
  static Jet2 power(const Jet2& a, const Jet2& b) { return pow(a, b); }

  template <class T>
  static T eval(const ExprNode& n, const T& u) {
    using K = ExprNode::Kind;
    switch (n.kind) {
      case K::Number: return T(n.value);
      case K::Var: return u;
      case K::Neg: return -eval(*n.lhs, u);
      case K::Add: return eval(*n.lhs, u) + eval(*n.rhs, u);
      case K::Sub: return eval(*n.lhs, u) - eval(*n.rhs, u);
      case K::Mul: return eval(*n.lhs, u) * eval(*n.rhs, u);
      case K::Div: return eval(*n.lhs, u) / eval(*n.rhs, u);
      case K::Pow: return power(eval(*n.lhs, u), eval(*n.rhs, u));
      case K::Call: return apply(n.name, eval(*n.lhs, u));
    }
    return T(0.0);
  }

  static std::string print(const ExprNode& n) {
    using K = ExprNode::Kind;
    switch (n.kind) {
      case K::Number: {
        if (!n.name.empty()) return n.name;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", n.value);
        return buf;
      }
      case K::Var: return "u";
      case K::Neg: return "(-" + print(*n.lhs) + ")";
      case K::Call: return n.name + "(" + print(*n.lhs) + ")";
      default: break;
    }
    const char* op = n.kind == K::Add ? " + " : n.kind == K::Sub ? " - " : n.kind == K::Mul ? " * " : n.kind == K::Div ? " / " : " ^ ";
    return "(" + print(*n.lhs) + op + print(*n.rhs) + ")";
  }

  static bool mentions_u(const ExprNode& n) {
    if (n.kind == ExprNode::Kind::Var) return true;
    return (n.lhs && mentions_u(*n.lhs)) || (n.rhs && mentions_u(*n.rhs));
  }

  std::shared_ptr<const ExprNode> root_;
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  ExprAst parse() {
    auto root = expr();
    skip();
    if (pos_ != s_.size()) fail({"+", "-", "*", "/", "^", "end of input"});
    return ExprAst(root);
  }

 private:
  using Ptr = std::shared_ptr<const ExprNode>;

  static Ptr node(ExprNode::Kind k, Ptr l = nullptr, Ptr r = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  [[noreturn]] void fail(std::set<std::string> expected) const { throw ParseError(pos_, std::move(expected)); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Ptr expr() {
    Ptr l = term();
    for (;;) {
      if (accept('+')) l = node(ExprNode::Kind::Add, l, term());
      else if (accept('-')) l = node(ExprNode::Kind::Sub, l, term());
      else return l;
    }
  }

  Ptr term() {
    Ptr l = unary();
    for (;;) {
      if (accept('*')) l = node(ExprNode::Kind::Mul, l, unary());
      else if (accept('/')) l = node(ExprNode::Kind::Div, l, unary());
      else return l;
    }
  }

  Ptr unary() {
    if (accept('-')) return node(ExprNode::Kind::Neg, unary());
    return power();
  }

  Ptr power() {
    Ptr base = primary();
    if (accept('^')) return node(ExprNode::Kind::Pow, base, unary());
    return base;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  Ptr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    }
    if (pos_ == start + 1 && s_[start] == '.') {
      pos_ = start;
      fail({"digit"});
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t k = pos_ + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && is_digit(s_[k])) {
        pos_ = k;
        while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
      }
    }
    auto n = node(ExprNode::Kind::Number);
    std::const_pointer_cast<ExprNode>(n)->value = std::stod(std::string(s_.substr(start, pos_ - start)));
    return n;
  }

  Ptr primary() {
    skip();
    if (pos_ >= s_.size()) fail(primary_expected());
    const char c = s_[pos_];
    if (is_digit(c) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Ptr inner = expr();
      if (!accept(')')) fail({")", "+", "-", "*", "/", "^"});
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id(s_.substr(start, pos_ - start));
      if (id == "u") return node(ExprNode::Kind::Var);
      if (id == "pi" || id == "e") {
        auto n = std::const_pointer_cast<ExprNode>(node(ExprNode::Kind::Number));
        n->value = id == "pi" ? std::numbers::pi : std::numbers::e;
        n->name = id;
        return n;
      }
      for (auto f : expr_functions) {
        if (id == f) {
          if (!accept('(')) fail({"("});
          Ptr arg = expr();
          if (!accept(')')) fail({")", "+", "-", "*", "/", "^"});
          auto n = std::const_pointer_cast<ExprNode>(node(ExprNode::Kind::Call, arg));
          n->name = id;
          return n;
        }
      }
      pos_ = start;
      fail(primary_expected());
    }
    fail(primary_expected());
  }

  static std::set<std::string> primary_expected() {
    std::set<std::string> e{"number", "u", "pi", "e", "(", "-"};
    for (auto f : expr_functions) e.insert(std::string(f));
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprAst parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

}  // namespace bour
