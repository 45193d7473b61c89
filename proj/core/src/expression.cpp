#include "selfsim/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <vector>

namespace selfsim {

struct Expression::Node {
  enum class Op { Const, VarX, VarY, Neg, Add, Sub, Mul, Div, Pow, Call1, Call2 };
  Op op = Op::Const;
  double value = 0.0;
  double (*f1)(double) = nullptr;
  double (*f2)(double, double) = nullptr;
  std::unique_ptr<Node> a, b;

  double eval(double x, double y) const {
    switch (op) {
      case Op::Const: return value;
      case Op::VarX: return x;
      case Op::VarY: return y;
      case Op::Neg: return -a->eval(x, y);
      case Op::Add: return a->eval(x, y) + b->eval(x, y);
      case Op::Sub: return a->eval(x, y) - b->eval(x, y);
      case Op::Mul: return a->eval(x, y) * b->eval(x, y);
      case Op::Div: return a->eval(x, y) / b->eval(x, y);
      case Op::Pow: return std::pow(a->eval(x, y), b->eval(x, y));
      case Op::Call1: return f1(a->eval(x, y));
      case Op::Call2: return f2(a->eval(x, y), b->eval(x, y));
    }
    return 0.0;
  }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::unique_ptr<Node>;

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression error at position " + std::to_string(pos) + ": " + what);
  }

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  NodePtr make(Node::Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  NodePtr constant(double v) {
    auto n = std::make_unique<Node>();
    n->value = v;
    return n;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = make(Node::Op::Add, std::move(lhs), term());
      else if (eat('-'))
        lhs = make(Node::Op::Sub, std::move(lhs), term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (eat('*'))
        lhs = make(Node::Op::Mul, std::move(lhs), factor());
      else if (eat('/'))
        lhs = make(Node::Op::Div, std::move(lhs), factor());
      else
        return lhs;
    }
  }

  NodePtr factor() {
    if (eat('-')) return make(Node::Op::Neg, factor());
    NodePtr base = primary();
    if (eat('^')) return make(Node::Op::Pow, std::move(base), factor());  // right-assoc
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      char* end = nullptr;
      const double v = std::strtod(s.c_str() + pos, &end);
      if (end == s.c_str() + pos) fail("malformed number");
      pos = end - s.c_str();
      return constant(v);
    }
    if (c == '(') {
      ++pos;
      NodePtr inner = expr();
      if (!eat(')')) fail("missing ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
      const std::string name = s.substr(start, pos - start);
      if (name == "x") return make(Node::Op::VarX);
      if (name == "y") return make(Node::Op::VarY);
      if (name == "pi") return constant(std::acos(-1.0));
      if (name == "e") return constant(std::exp(1.0));
      return call(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr call(const std::string& name) {
    static const struct {
      const char* name;
      double (*f)(double);
    } unary[] = {{"sin", std::sin}, {"cos", std::cos},   {"tan", std::tan},
                 {"exp", std::exp}, {"log", std::log},   {"sqrt", std::sqrt},
                 {"abs", std::fabs}, {"tanh", std::tanh}};
    static const struct {
      const char* name;
      double (*f)(double, double);
    } binary[] = {{"min", [](double a, double b) { return a < b ? a : b; }},
                  {"max", [](double a, double b) { return a > b ? a : b; }},
                  {"pow", static_cast<double (*)(double, double)>(std::pow)}};

    if (!eat('(')) fail("unknown identifier '" + name + "'");
    NodePtr first = expr();
    for (const auto& u : unary)
      if (name == u.name) {
        if (!eat(')')) fail("missing ')'");
        auto n = make(Node::Op::Call1, std::move(first));
        n->f1 = u.f;
        return n;
      }
    for (const auto& b : binary)
      if (name == b.name) {
        if (!eat(',')) fail("'" + name + "' takes two arguments");
        NodePtr second = expr();
        if (!eat(')')) fail("missing ')'");
        auto n = make(Node::Op::Call2, std::move(first), std::move(second));
        n->f2 = b.f;
        return n;
      }
    fail("unknown function '" + name + "'");
  }
};

}  // namespace

Expression::Expression(const std::string& text) {
  Parser p{text};
  root_ = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
}

Expression::~Expression() = default;
Expression::Expression(Expression&&) noexcept = default;
Expression& Expression::operator=(Expression&&) noexcept = default;

double Expression::eval(double x, double y) const { return root_->eval(x, y); }

}  // namespace selfsim
