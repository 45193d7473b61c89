#pragma once

#include <memory>
#include <string>

// Arithmetic expressions in the variables x and y for user-supplied initial
// data: literals, + - * / ^, unary minus, parentheses, the constants pi and
// e, and the functions sin cos tan exp log sqrt abs tanh min max pow.
// Parse errors carry the offending position.

namespace selfsim {

class Expression {
 public:
  explicit Expression(const std::string& text);
  ~Expression();
  Expression(Expression&&) noexcept;
  Expression& operator=(Expression&&) noexcept;

  double eval(double x, double y = 0.0) const;

  struct Node;

 private:
  std::unique_ptr<Node> root_;
};

}  // namespace selfsim
