#include "germkit/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <string>

#include "germkit/numerics.hpp"

namespace germkit {

namespace {

using ast::Kind;
using ast::Node;
using ast::NodePtr;

NodePtr make_number(double v, std::size_t pos = 0) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = v;
  n->pos = pos;
  return n;
}

NodePtr make_var(std::size_t pos = 0) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->pos = pos;
  return n;
}

NodePtr make_unary(UnaryOp op, NodePtr a, std::size_t pos = 0) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unary;
  n->uop = op;
  n->a = std::move(a);
  n->pos = pos;
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr a, NodePtr b, std::size_t pos = 0) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->bop = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->pos = pos;
  return n;
}

const char* func_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg:  return "-";
    case UnaryOp::Sin:  return "sin";
    case UnaryOp::Cos:  return "cos";
    case UnaryOp::Exp:  return "exp";
    case UnaryOp::Log:  return "log";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Atan: return "atan";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    skip_ws();
    if (at_end()) throw ParseError("empty input", 0);
    NodePtr e = parse_expr();
    skip_ws();
    if (!at_end()) throw ParseError("unexpected input", pos_);
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool consume(char c) {
    skip_ws();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_ws();
      const std::size_t p = pos_;
      if (consume('+')) {
        lhs = make_binary(BinaryOp::Add, lhs, parse_term(), p);
      } else if (consume('-')) {
        lhs = make_binary(BinaryOp::Sub, lhs, parse_term(), p);
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      skip_ws();
      const std::size_t p = pos_;
      if (consume('*')) {
        lhs = make_binary(BinaryOp::Mul, lhs, parse_factor(), p);
      } else if (consume('/')) {
        lhs = make_binary(BinaryOp::Div, lhs, parse_factor(), p);
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    skip_ws();
    const std::size_t p = pos_;
    if (consume('-')) return make_unary(UnaryOp::Neg, parse_factor(), p);
    NodePtr b = parse_base();
    skip_ws();
    const std::size_t q = pos_;
    if (consume('^')) return make_binary(BinaryOp::Pow, b, parse_factor(), q);
    return b;
  }

  NodePtr parse_base() {
    skip_ws();
    if (at_end()) throw ParseError("expected operand", pos_);
    const std::size_t p = pos_;
    const char c = peek();
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_expr();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if ((c >= '0' && c <= '9') || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return parse_identifier();
    }
    throw ParseError("expected operand", p);
  }

  NodePtr parse_number() {
    const std::size_t p = pos_;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) {
      throw ParseError("malformed number", p);
    }
    if (!std::isfinite(value)) throw ParseError("non-finite constant", p);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return make_number(value, p);
  }

  NodePtr parse_identifier() {
    const std::size_t p = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                         peek() == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(p, pos_ - p);
    if (name == "x") return make_var(p);
    static constexpr std::array<std::pair<std::string_view, UnaryOp>, 6>
        kFuncs = {{{"sin", UnaryOp::Sin},
                   {"cos", UnaryOp::Cos},
                   {"exp", UnaryOp::Exp},
                   {"log", UnaryOp::Log},
                   {"sqrt", UnaryOp::Sqrt},
                   {"atan", UnaryOp::Atan}}};
    for (const auto& [fname, op] : kFuncs) {
      if (name == fname) {
        if (!consume('(')) throw ParseError("expected '(' after function name", pos_);
        NodePtr arg = parse_expr();
        if (!consume(')')) throw ParseError("expected ')'", pos_);
        return make_unary(op, arg, p);
      }
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", p);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Precedence levels for printing: Add/Sub 1, Mul/Div 2, Neg 2, Pow 3,
// atoms and calls 4.
int prec(const Node& n) {
  switch (n.kind) {
    case Kind::Number:
      return n.value < 0 ? 2 : 4;
    case Kind::Variable:
      return 4;
    case Kind::Unary:
      return n.uop == UnaryOp::Neg ? 2 : 4;
    case Kind::Binary:
      switch (n.bop) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 3;
      }
  }
  return 4;
}

void print_node(const Node& n, std::string& out, int parent_prec) {
  const int self = prec(n);
  const bool needs_parens = self < parent_prec;
  if (needs_parens) out += '(';
  switch (n.kind) {
    case Kind::Number:
      out += format_double(n.value);
      break;
    case Kind::Variable:
      out += 'x';
      break;
    case Kind::Unary:
      if (n.uop == UnaryOp::Neg) {
        out += '-';
        print_node(*n.a, out, self + 1);
      } else {
        out += func_name(n.uop);
        out += '(';
        print_node(*n.a, out, 0);
        out += ')';
      }
      break;
    case Kind::Binary: {
      const char* op = nullptr;
      int lp = self, rp = self + 1;  // left assoc by default
      switch (n.bop) {
        case BinaryOp::Add: op = " + "; break;
        case BinaryOp::Sub: op = " - "; break;
        case BinaryOp::Mul: op = "*"; break;
        case BinaryOp::Div: op = "/"; break;
        case BinaryOp::Pow:
          op = "^";
          lp = self + 1;  // right assoc
          rp = self;
          break;
      }
      print_node(*n.a, out, lp);
      out += op;
      print_node(*n.b, out, rp);
      break;
    }
  }
  if (needs_parens) out += ')';
}

std::string describe(const Node& n) {
  std::string s;
  print_node(n, s, 0);
  if (s.size() > 40) s = s.substr(0, 37) + "...";
  return s;
}

[[noreturn]] void domain_fail(const Node& n, const std::string& reason) {
  throw DomainError(reason + " in sub-expression '" + describe(n) +
                    "' (offset " + std::to_string(n.pos) + ")");
}

double eval_node(const Node& n, double x) {
  switch (n.kind) {
    case Kind::Number:
      return n.value;
    case Kind::Variable:
      return x;
    case Kind::Unary: {
      const double v = eval_node(*n.a, x);
      switch (n.uop) {
        case UnaryOp::Neg:  return -v;
        case UnaryOp::Sin:  return std::sin(v);
        case UnaryOp::Cos:  return std::cos(v);
        case UnaryOp::Exp:  return std::exp(v);
        case UnaryOp::Log:
          if (v <= 0.0) domain_fail(n, "log of non-positive argument");
          return std::log(v);
        case UnaryOp::Sqrt:
          if (v < 0.0) domain_fail(n, "sqrt of negative argument");
          return std::sqrt(v);
        case UnaryOp::Atan: return std::atan(v);
      }
      break;
    }
    case Kind::Binary: {
      const double a = eval_node(*n.a, x);
      const double b = eval_node(*n.b, x);
      switch (n.bop) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div:
          if (b == 0.0) domain_fail(n, "division by zero");
          return a / b;
        case BinaryOp::Pow: {
          const double r = std::round(b);
          if (std::abs(b - r) < 1e-12 && std::abs(r) < 1e15) {
            const auto e = static_cast<long long>(r);
            if (a == 0.0 && e < 0) domain_fail(n, "zero base with negative exponent");
            return ipow(a, e);
          }
          if (a <= 0.0) domain_fail(n, "fractional power of non-positive base");
          return std::pow(a, b);
        }
      }
      break;
    }
  }
  domain_fail(n, "unreachable");
}

bool node_depends_on_x(const Node& n) {
  switch (n.kind) {
    case Kind::Number:   return false;
    case Kind::Variable: return true;
    case Kind::Unary:    return node_depends_on_x(*n.a);
    case Kind::Binary:
      return node_depends_on_x(*n.a) || node_depends_on_x(*n.b);
  }
  return false;
}

NodePtr diff_node(const NodePtr& n);

NodePtr diff_pow(const NodePtr& n) {
  const NodePtr& u = n->a;
  const NodePtr& v = n->b;
  if (!node_depends_on_x(*v)) {
    if (v->kind == Kind::Number && v->value == 0.0) return make_number(0.0);
    // d u^c = c * u^(c-1) * u'
    NodePtr c_minus_1 = make_binary(BinaryOp::Sub, v, make_number(1.0));
    NodePtr pw = make_binary(BinaryOp::Pow, u, c_minus_1);
    return make_binary(BinaryOp::Mul, make_binary(BinaryOp::Mul, v, pw),
                       diff_node(u));
  }
  // d u^v = u^v * (v' log u + v u'/u)
  NodePtr logu = make_unary(UnaryOp::Log, u);
  NodePtr t1 = make_binary(BinaryOp::Mul, diff_node(v), logu);
  NodePtr t2 = make_binary(BinaryOp::Div,
                           make_binary(BinaryOp::Mul, v, diff_node(u)), u);
  return make_binary(BinaryOp::Mul, NodePtr(n),
                     make_binary(BinaryOp::Add, t1, t2));
}

NodePtr diff_node(const NodePtr& n) {
  switch (n->kind) {
    case Kind::Number:
      return make_number(0.0);
    case Kind::Variable:
      return make_number(1.0);
    case Kind::Unary: {
      NodePtr du = diff_node(n->a);
      switch (n->uop) {
        case UnaryOp::Neg:
          return make_unary(UnaryOp::Neg, du);
        case UnaryOp::Sin:
          return make_binary(BinaryOp::Mul, make_unary(UnaryOp::Cos, n->a), du);
        case UnaryOp::Cos:
          return make_unary(
              UnaryOp::Neg,
              make_binary(BinaryOp::Mul, make_unary(UnaryOp::Sin, n->a), du));
        case UnaryOp::Exp:
          return make_binary(BinaryOp::Mul, NodePtr(n), du);
        case UnaryOp::Log:
          return make_binary(BinaryOp::Div, du, n->a);
        case UnaryOp::Sqrt:
          return make_binary(
              BinaryOp::Div, du,
              make_binary(BinaryOp::Mul, make_number(2.0), NodePtr(n)));
        case UnaryOp::Atan: {
          NodePtr sq = make_binary(BinaryOp::Mul, n->a, n->a);
          NodePtr den = make_binary(BinaryOp::Add, make_number(1.0), sq);
          return make_binary(BinaryOp::Div, du, den);
        }
      }
      break;
    }
    case Kind::Binary: {
      switch (n->bop) {
        case BinaryOp::Add:
          return make_binary(BinaryOp::Add, diff_node(n->a), diff_node(n->b));
        case BinaryOp::Sub:
          return make_binary(BinaryOp::Sub, diff_node(n->a), diff_node(n->b));
        case BinaryOp::Mul:
          return make_binary(
              BinaryOp::Add, make_binary(BinaryOp::Mul, diff_node(n->a), n->b),
              make_binary(BinaryOp::Mul, n->a, diff_node(n->b)));
        case BinaryOp::Div: {
          NodePtr num = make_binary(
              BinaryOp::Sub, make_binary(BinaryOp::Mul, diff_node(n->a), n->b),
              make_binary(BinaryOp::Mul, n->a, diff_node(n->b)));
          NodePtr den = make_binary(BinaryOp::Mul, n->b, n->b);
          return make_binary(BinaryOp::Div, num, den);
        }
        case BinaryOp::Pow:
          return diff_pow(n);
      }
      break;
    }
  }
  return make_number(0.0);
}

}  // namespace

Expr Expr::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty input", 0);
  return Expr(Parser(text).run());
}

Expr Expr::number(double v) { return Expr(make_number(v)); }

Expr Expr::variable() { return Expr(make_var()); }

double Expr::operator()(double x) const { return eval_node(*root_, x); }

Expr Expr::derivative() const { return Expr(diff_node(root_)); }

std::string Expr::str() const {
  std::string out;
  print_node(*root_, out, 0);
  return out;
}

bool Expr::depends_on_x() const { return node_depends_on_x(*root_); }

}  // namespace germkit
