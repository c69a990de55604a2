#include "wg/expr.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wg {

struct Expr::Node {
  enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp, Sqrt, Atan2 };
  Op op = Op::Const;
  double value = 0.0;
  int var = 0;  // 0..4: x, y, z, r, theta
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("expr: " + why + " at position " + std::to_string(pos_) + " in '" +
                                s_ + "'");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(uint8_t(s_[pos_]))) ++pos_;
  }
  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      if (consume('+'))
        lhs = make(Node::Op::Add, lhs, term());
      else if (consume('-'))
        lhs = make(Node::Op::Sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      if (consume('*'))
        lhs = make(Node::Op::Mul, lhs, factor());
      else if (consume('/'))
        lhs = make(Node::Op::Div, lhs, factor());
      else
        return lhs;
    }
  }

  NodePtr factor() {
    NodePtr base = unary();
    if (consume('^')) return make(Node::Op::Pow, base, factor());  // right associative
    return base;
  }

  NodePtr unary() {
    if (consume('-')) return make(Node::Op::Neg, unary());
    return primary();
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(uint8_t(c)) || c == '.') return number();
    if (std::isalpha(uint8_t(c))) return identifier();
    if (consume('(')) {
      NodePtr e = expr();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    fail("unexpected character");
  }

  NodePtr number() {
    size_t end = 0;
    double v;
    try {
      v = std::stod(s_.substr(pos_), &end);
    } catch (const std::exception&) {
      fail("bad number");
    }
    pos_ += end;
    auto n = std::make_shared<Node>();
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    const size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(uint8_t(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "pi") {
      auto n = std::make_shared<Node>();
      n->value = M_PI;
      return n;
    }
    static const char* vars[] = {"x", "y", "z", "r", "theta"};
    for (int i = 0; i < 5; ++i) {
      if (name == vars[i]) {
        auto n = std::make_shared<Node>();
        n->op = Node::Op::Var;
        n->var = i;
        return n;
      }
    }
    Node::Op op;
    int arity = 1;
    if (name == "sin") op = Node::Op::Sin;
    else if (name == "cos") op = Node::Op::Cos;
    else if (name == "exp") op = Node::Op::Exp;
    else if (name == "sqrt") op = Node::Op::Sqrt;
    else if (name == "atan2") { op = Node::Op::Atan2; arity = 2; }
    else fail("unknown identifier '" + name + "'");
    if (!consume('(')) fail("expected '(' after function name");
    NodePtr a = expr();
    NodePtr b;
    if (arity == 2) {
      if (!consume(',')) fail("atan2 takes two arguments");
      b = expr();
    }
    if (!consume(')')) fail("expected ')'");
    return make(op, a, b);
  }

  const std::string& s_;
  size_t pos_ = 0;
};

double eval(const Node& n, const Vec3& p) {
  switch (n.op) {
    case Node::Op::Const: return n.value;
    case Node::Op::Var:
      switch (n.var) {
        case 0: return p.x();
        case 1: return p.y();
        case 2: return p.z();
        case 3: return std::hypot(p.x(), p.y());
        default: return std::atan2(p.y(), p.x());
      }
    case Node::Op::Add: return eval(*n.a, p) + eval(*n.b, p);
    case Node::Op::Sub: return eval(*n.a, p) - eval(*n.b, p);
    case Node::Op::Mul: return eval(*n.a, p) * eval(*n.b, p);
    case Node::Op::Div: return eval(*n.a, p) / eval(*n.b, p);
    case Node::Op::Pow: return std::pow(eval(*n.a, p), eval(*n.b, p));
    case Node::Op::Neg: return -eval(*n.a, p);
    case Node::Op::Sin: return std::sin(eval(*n.a, p));
    case Node::Op::Cos: return std::cos(eval(*n.a, p));
    case Node::Op::Exp: return std::exp(eval(*n.a, p));
    case Node::Op::Sqrt: return std::sqrt(eval(*n.a, p));
    case Node::Op::Atan2: return std::atan2(eval(*n.a, p), eval(*n.b, p));
  }
  return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.root_ = Parser(text).run();
  return e;
}

double Expr::operator()(const Vec3& p) const {
  if (!root_) throw std::logic_error("expr: evaluating an empty expression");
  return eval(*root_, p);
}

}  // namespace wg
