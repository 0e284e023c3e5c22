#include "expression.hpp"

#include "types.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <vector>

namespace fsi
{

struct Expression::Node
{
  enum class Kind
  {
    constant,
    var_x,
    var_y,
    var_t,
    add,
    sub,
    mul,
    div,
    pow,
    neg,
    call
  };

  Kind kind;
  double value = 0.0;
  double (*fn)(double) = nullptr;
  std::shared_ptr<const Node> a, b;

  double eval(double x, double y, double t) const
  {
    switch (kind)
    {
    case Kind::constant: return value;
    case Kind::var_x: return x;
    case Kind::var_y: return y;
    case Kind::var_t: return t;
    case Kind::add: return a->eval(x, y, t) + b->eval(x, y, t);
    case Kind::sub: return a->eval(x, y, t) - b->eval(x, y, t);
    case Kind::mul: return a->eval(x, y, t) * b->eval(x, y, t);
    case Kind::div: return a->eval(x, y, t) / b->eval(x, y, t);
    case Kind::pow: return std::pow(a->eval(x, y, t), b->eval(x, y, t));
    case Kind::neg: return -a->eval(x, y, t);
    case Kind::call: return fn(a->eval(x, y, t));
    }
    return 0.0;
  }
};

namespace
{

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr)
{
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_const(double v)
{
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::constant;
  n->value = v;
  return n;
}

struct Parser
{
  const std::string & s;
  size_t pos = 0;

  explicit Parser(const std::string & text): s(text) {}

  void skip_ws()
  {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  bool eat(char c)
  {
    skip_ws();
    if (pos < s.size() && s[pos] == c)
    {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string & msg)
  {
    throw SimError("expression", msg + " at position " + std::to_string(pos) + " in '" +
                                      s + "'");
  }

  NodePtr parse()
  {
    NodePtr e = expr();
    skip_ws();
    if (pos != s.size())
      fail("trailing input");
    return e;
  }

  NodePtr expr()
  {
    NodePtr lhs = term();
    for (;;)
    {
      if (eat('+'))
        lhs = make(Node::Kind::add, lhs, term());
      else if (eat('-'))
        lhs = make(Node::Kind::sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term()
  {
    NodePtr lhs = unary();
    for (;;)
    {
      if (eat('*'))
        lhs = make(Node::Kind::mul, lhs, unary());
      else if (eat('/'))
        lhs = make(Node::Kind::div, lhs, unary());
      else
        return lhs;
    }
  }

  NodePtr unary()
  {
    if (eat('-'))
      return make(Node::Kind::neg, unary());
    if (eat('+'))
      return unary();
    return power();
  }

  NodePtr power()
  {
    NodePtr base = atom();
    if (eat('^'))
      return make(Node::Kind::pow, base, unary()); // right associative
    return base;
  }

  NodePtr atom()
  {
    skip_ws();
    if (pos >= s.size())
      fail("unexpected end");
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return number();
    if (std::isalpha(static_cast<unsigned char>(c)))
      return identifier();
    if (eat('('))
    {
      NodePtr e = expr();
      if (!eat(')'))
        fail("expected ')'");
      return e;
    }
    fail("unexpected character");
  }

  NodePtr number()
  {
    size_t end = pos;
    while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) ||
                              s[end] == '.' || s[end] == 'e' || s[end] == 'E' ||
                              ((s[end] == '+' || s[end] == '-') && end > pos &&
                               (s[end - 1] == 'e' || s[end - 1] == 'E'))))
      ++end;
    double v = std::stod(s.substr(pos, end - pos));
    pos = end;
    return make_const(v);
  }

  NodePtr identifier()
  {
    size_t end = pos;
    while (end < s.size() && std::isalnum(static_cast<unsigned char>(s[end])))
      ++end;
    std::string name = s.substr(pos, end - pos);
    pos = end;
    if (name == "x")
      return make(Node::Kind::var_x);
    if (name == "y")
      return make(Node::Kind::var_y);
    if (name == "t")
      return make(Node::Kind::var_t);
    if (name == "pi")
      return make_const(M_PI);

    static const std::pair<const char *, double (*)(double)> fns[] = {
        {"sin", std::sin}, {"cos", std::cos},   {"tan", std::tan},
        {"exp", std::exp}, {"log", std::log},   {"sqrt", std::sqrt},
        {"abs", std::fabs}};
    for (const auto & [fname, fptr]: fns)
      if (name == fname)
      {
        if (!eat('('))
          fail("expected '(' after function name");
        NodePtr arg = expr();
        if (!eat(')'))
          fail("expected ')'");
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::call;
        n->fn = fptr;
        n->a = arg;
        return n;
      }
    fail("unknown identifier '" + name + "'");
  }
};

} // namespace

Expression::Expression(const std::string & text): text_(text)
{
  // an empty string (or literal "0") keeps the cheap is_zero path
  std::string stripped;
  for (char c: text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      stripped += c;
  if (stripped.empty() || stripped == "0" || stripped == "0.0")
    return;
  Parser p(text);
  root_ = p.parse();
}

double Expression::eval(double x, double y, double t) const
{
  if (!root_)
    return 0.0;
  return root_->eval(x, y, t);
}

} // namespace fsi
