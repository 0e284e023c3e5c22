#pragma once

#include <memory>
#include <string>

namespace fsi
{

/// Arithmetic expression in the variables x, y, t (plus the constant pi and
/// the functions sin, cos, tan, exp, log, sqrt, abs). Used for boundary
/// profiles such as "15.0*y*(2-y)*sin(2*pi*t)".
class Expression
{
public:
  Expression() = default; // constant zero
  explicit Expression(const std::string & text);

  double eval(double x, double y, double t) const;

  bool is_zero() const { return !root_; }
  const std::string & text() const { return text_; }

  struct Node;

private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

} // namespace fsi
