#include "expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

namespace bis {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

NodePtr make_const(double v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->value = v;
  return n;
}

NodePtr make_var() {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  return n;
}

NodePtr make_unary(NodeKind k, NodePtr c) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(c);
  return n;
}

NodePtr make_call(FuncId fn, NodePtr c) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->fn = fn;
  n->lhs = std::move(c);
  return n;
}

NodePtr make_binary(NodeKind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

struct FuncName {
  const char* name;
  FuncId id;
};

constexpr FuncName kFuncs[] = {
    {"sin", FuncId::Sin},   {"cos", FuncId::Cos},   {"tan", FuncId::Tan},
    {"sinh", FuncId::Sinh}, {"cosh", FuncId::Cosh}, {"tanh", FuncId::Tanh},
    {"exp", FuncId::Exp},   {"log", FuncId::Log},   {"sqrt", FuncId::Sqrt},
    {"abs", FuncId::Abs},
};

const char* func_name(FuncId id) {
  for (const auto& f : kFuncs)
    if (f.id == id) return f.name;
  return "?";
}

bool lookup_func(const std::string& name, FuncId* out) {
  for (const auto& f : kFuncs) {
    if (name == f.name) {
      *out = f.id;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parsing

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  double num = 0.0;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    if (i_ >= src_.size()) return {Tok::End, src_.size(), 0.0, {}};
    const std::size_t start = i_;
    const char c = src_[i_];
    switch (c) {
      case '+': ++i_; return {Tok::Plus, start, 0.0, {}};
      case '-': ++i_; return {Tok::Minus, start, 0.0, {}};
      case '*': ++i_; return {Tok::Star, start, 0.0, {}};
      case '/': ++i_; return {Tok::Slash, start, 0.0, {}};
      case '^': ++i_; return {Tok::Caret, start, 0.0, {}};
      case '(': ++i_; return {Tok::LParen, start, 0.0, {}};
      case ')': ++i_; return {Tok::RParen, start, 0.0, {}};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = 0.0;
      const char* first = src_.data() + i_;
      const char* last = src_.data() + src_.size();
      auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc() || res.ptr == first)
        throw Error(ErrorCode::SyntaxError, "syntax error at offset " + std::to_string(start) + ": malformed number", start);
      i_ = static_cast<std::size_t>(res.ptr - src_.data());
      Token t{Tok::Number, start, 0.0, {}};
      t.num = v;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) ++j;
      Token t{Tok::Ident, start, 0.0, {}};
      t.text = std::string(src_.substr(i_, j - i_));
      i_ = j;
      return t;
    }
    throw Error(ErrorCode::SyntaxError,
                "syntax error at offset " + std::to_string(start) + ": unexpected character '" + std::string(1, c) + "'",
                start);
  }

 private:
  std::string_view src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(std::string_view src, std::string_view var) : lex_(src), var_(var) { advance(); }

  NodePtr parse_all() {
    NodePtr e = parse_sum();
    if (cur_.kind != Tok::End)
      fail("unexpected trailing input");
    return e;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorCode::SyntaxError,
                "syntax error at offset " + std::to_string(cur_.pos) + ": " + what, cur_.pos);
  }

  NodePtr parse_sum() {
    NodePtr e = parse_term();
    for (;;) {
      if (cur_.kind == Tok::Plus) {
        advance();
        e = make_binary(NodeKind::Add, e, parse_term());
      } else if (cur_.kind == Tok::Minus) {
        advance();
        e = make_binary(NodeKind::Sub, e, parse_term());
      } else {
        return e;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr e = parse_unary();
    for (;;) {
      if (cur_.kind == Tok::Star) {
        advance();
        e = make_binary(NodeKind::Mul, e, parse_unary());
      } else if (cur_.kind == Tok::Slash) {
        advance();
        e = make_binary(NodeKind::Div, e, parse_unary());
      } else {
        return e;
      }
    }
  }

  NodePtr parse_unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return make_unary(NodeKind::Negate, parse_unary());
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (cur_.kind == Tok::Caret) {
      advance();
      return make_binary(NodeKind::Pow, base, parse_unary());
    }
    return base;
  }

  NodePtr parse_primary() {
    switch (cur_.kind) {
      case Tok::Number: {
        double v = cur_.num;
        advance();
        return make_const(v);
      }
      case Tok::LParen: {
        advance();
        NodePtr e = parse_sum();
        if (cur_.kind != Tok::RParen) fail("expected ')'");
        advance();
        return e;
      }
      case Tok::Ident: {
        const std::string name = cur_.text;
        const std::size_t pos = cur_.pos;
        advance();
        if (cur_.kind == Tok::LParen) {
          FuncId fn;
          if (!lookup_func(name, &fn))
            throw Error(ErrorCode::UnknownIdentifier, "unknown function '" + name + "' at offset " + std::to_string(pos), pos);
          advance();
          NodePtr arg = parse_sum();
          if (cur_.kind != Tok::RParen) fail("expected ')'");
          advance();
          return make_call(fn, arg);
        }
        if (name == var_) return make_var();
        FuncId fn;
        if (lookup_func(name, &fn))
          throw Error(ErrorCode::SyntaxError,
                      "syntax error at offset " + std::to_string(cur_.pos) +
                          ": function '" + name + "' requires parentheses",
                      cur_.pos);
        throw Error(ErrorCode::UnknownIdentifier, "unknown identifier '" + name + "' at offset " + std::to_string(pos), pos);
      }
      default:
        fail("expected a number, '(', '-', the variable, or a function call");
    }
  }

  Lexer lex_;
  Token cur_{Tok::End, 0, 0.0, {}};
  std::string var_;
};

// ---------------------------------------------------------------------------
// Printing.  Levels: Add/Sub 1, Mul/Div 2, Negate 3, Pow 4, leaves 5.
// A child is parenthesized when its level is below the minimum its slot
// requires, which makes printing a fixed point of parse.

int node_level(const Node& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Negate: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

void print_node(const Node& n, const std::string& var, std::string& out, int min_level);

void print_child(const NodePtr& c, const std::string& var, std::string& out, int min_level) {
  if (node_level(*c) < min_level) {
    out += '(';
    print_node(*c, var, out, 1);
    out += ')';
  } else {
    print_node(*c, var, out, 1);
  }
}

void print_node(const Node& n, const std::string& var, std::string& out, int /*min_level*/) {
  switch (n.kind) {
    case NodeKind::Constant:
      out += format_double(n.value);
      return;
    case NodeKind::Variable:
      out += var;
      return;
    case NodeKind::Negate:
      out += '-';
      print_child(n.lhs, var, out, 3);
      return;
    case NodeKind::Add:
      print_child(n.lhs, var, out, 1);
      out += " + ";
      print_child(n.rhs, var, out, 2);
      return;
    case NodeKind::Sub:
      print_child(n.lhs, var, out, 1);
      out += " - ";
      print_child(n.rhs, var, out, 2);
      return;
    case NodeKind::Mul:
      print_child(n.lhs, var, out, 2);
      out += " * ";
      print_child(n.rhs, var, out, 3);
      return;
    case NodeKind::Div:
      print_child(n.lhs, var, out, 2);
      out += " / ";
      print_child(n.rhs, var, out, 3);
      return;
    case NodeKind::Pow:
      print_child(n.lhs, var, out, 5);
      out += " ^ ";
      print_child(n.rhs, var, out, 3);
      return;
    case NodeKind::Call:
      out += func_name(n.fn);
      out += '(';
      print_node(*n.lhs, var, out, 1);
      out += ')';
      return;
  }
}

std::string print_tree(const NodePtr& root, const std::string& var) {
  std::string out;
  print_node(*root, var, out, 1);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

[[noreturn]] void domain_fail(const Node& n, const std::string& var, const std::string& what, double x) {
  NodePtr self(&n, [](const Node*) {});
  std::string sub = print_tree(self, var);
  throw Error(ErrorCode::DomainError,
              "domain error in '" + sub + "' at " + var + " = " + format_double(x) + ": " + what,
              Error::kNoOffset, sub);
}

double eval_node(const Node& n, double x, const std::string& var) {
  switch (n.kind) {
    case NodeKind::Constant: return n.value;
    case NodeKind::Variable: return x;
    case NodeKind::Negate: return -eval_node(*n.lhs, x, var);
    case NodeKind::Add: {
      double v = eval_node(*n.lhs, x, var) + eval_node(*n.rhs, x, var);
      if (!std::isfinite(v)) domain_fail(n, var, "non-finite result", x);
      return v;
    }
    case NodeKind::Sub: {
      double v = eval_node(*n.lhs, x, var) - eval_node(*n.rhs, x, var);
      if (!std::isfinite(v)) domain_fail(n, var, "non-finite result", x);
      return v;
    }
    case NodeKind::Mul: {
      double v = eval_node(*n.lhs, x, var) * eval_node(*n.rhs, x, var);
      if (!std::isfinite(v)) domain_fail(n, var, "non-finite result", x);
      return v;
    }
    case NodeKind::Div: {
      double den = eval_node(*n.rhs, x, var);
      if (den == 0.0) domain_fail(n, var, "division by zero", x);
      double v = eval_node(*n.lhs, x, var) / den;
      if (!std::isfinite(v)) domain_fail(n, var, "non-finite result", x);
      return v;
    }
    case NodeKind::Pow: {
      double a = eval_node(*n.lhs, x, var);
      double b = eval_node(*n.rhs, x, var);
      double v = std::pow(a, b);
      if (std::isnan(v)) domain_fail(n, var, "invalid power", x);
      if (!std::isfinite(v)) domain_fail(n, var, "non-finite result", x);
      return v;
    }
    case NodeKind::Call: {
      double a = eval_node(*n.lhs, x, var);
      double v = 0.0;
      switch (n.fn) {
        case FuncId::Sin: v = std::sin(a); break;
        case FuncId::Cos: v = std::cos(a); break;
        case FuncId::Tan: v = std::tan(a); break;
        case FuncId::Sinh: v = std::sinh(a); break;
        case FuncId::Cosh: v = std::cosh(a); break;
        case FuncId::Tanh: v = std::tanh(a); break;
        case FuncId::Exp: v = std::exp(a); break;
        case FuncId::Log:
          if (a <= 0.0) domain_fail(n, var, "log of non-positive argument", x);
          v = std::log(a);
          break;
        case FuncId::Sqrt:
          if (a < 0.0) domain_fail(n, var, "sqrt of negative argument", x);
          v = std::sqrt(a);
          break;
        case FuncId::Abs: v = std::fabs(a); break;
      }
      if (!std::isfinite(v)) domain_fail(n, var, "non-finite result", x);
      return v;
    }
  }
  domain_fail(n, var, "corrupt expression node", x);
}

// ---------------------------------------------------------------------------
// Differentiation with folding smart constructors (best effort, value-safe
// only up to erasing domain errors of subtrees multiplied by zero).

bool is_const(const NodePtr& n, double v) {
  return n->kind == NodeKind::Constant && n->value == v;
}

bool is_const(const NodePtr& n) { return n->kind == NodeKind::Constant; }

bool contains_var(const Node& n) {
  if (n.kind == NodeKind::Variable) return true;
  if (n.lhs && contains_var(*n.lhs)) return true;
  if (n.rhs && contains_var(*n.rhs)) return true;
  return false;
}

NodePtr c_neg(NodePtr a) {
  if (is_const(a)) return make_const(-a->value);
  return make_unary(NodeKind::Negate, std::move(a));
}

NodePtr c_add(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return make_const(a->value + b->value);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make_binary(NodeKind::Add, std::move(a), std::move(b));
}

NodePtr c_sub(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return make_const(a->value - b->value);
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return c_neg(std::move(b));
  return make_binary(NodeKind::Sub, std::move(a), std::move(b));
}

NodePtr c_mul(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return make_const(a->value * b->value);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return make_binary(NodeKind::Mul, std::move(a), std::move(b));
}

NodePtr c_div(NodePtr a, NodePtr b) {
  if (is_const(b, 1.0)) return a;
  if (is_const(a, 0.0)) return make_const(0.0);
  return make_binary(NodeKind::Div, std::move(a), std::move(b));
}

NodePtr c_pow(NodePtr a, NodePtr b) {
  if (is_const(b, 1.0)) return a;
  if (is_const(b, 0.0)) return make_const(1.0);
  return make_binary(NodeKind::Pow, std::move(a), std::move(b));
}

NodePtr diff_node(const NodePtr& n) {
  switch (n->kind) {
    case NodeKind::Constant: return make_const(0.0);
    case NodeKind::Variable: return make_const(1.0);
    case NodeKind::Negate: return c_neg(diff_node(n->lhs));
    case NodeKind::Add: return c_add(diff_node(n->lhs), diff_node(n->rhs));
    case NodeKind::Sub: return c_sub(diff_node(n->lhs), diff_node(n->rhs));
    case NodeKind::Mul:
      return c_add(c_mul(diff_node(n->lhs), n->rhs), c_mul(n->lhs, diff_node(n->rhs)));
    case NodeKind::Div:
      return c_div(c_sub(c_mul(diff_node(n->lhs), n->rhs), c_mul(n->lhs, diff_node(n->rhs))),
                   c_pow(n->rhs, make_const(2.0)));
    case NodeKind::Pow: {
      if (!contains_var(*n->rhs)) {
        // d(u^c) = c u^(c-1) u'
        NodePtr cm1 = is_const(n->rhs) ? make_const(n->rhs->value - 1.0)
                                       : c_sub(n->rhs, make_const(1.0));
        return c_mul(c_mul(n->rhs, c_pow(n->lhs, std::move(cm1))), diff_node(n->lhs));
      }
      // d(u^v) = u^v (v' log u + v u'/u)
      NodePtr t1 = c_mul(diff_node(n->rhs), make_call(FuncId::Log, n->lhs));
      NodePtr t2 = c_div(c_mul(n->rhs, diff_node(n->lhs)), n->lhs);
      return c_mul(c_pow(n->lhs, n->rhs), c_add(std::move(t1), std::move(t2)));
    }
    case NodeKind::Call: {
      NodePtr u = n->lhs;
      NodePtr du = diff_node(u);
      NodePtr outer;
      switch (n->fn) {
        case FuncId::Sin: outer = make_call(FuncId::Cos, u); break;
        case FuncId::Cos: outer = c_neg(make_call(FuncId::Sin, u)); break;
        case FuncId::Tan:
          return c_div(du, c_pow(make_call(FuncId::Cos, u), make_const(2.0)));
        case FuncId::Sinh: outer = make_call(FuncId::Cosh, u); break;
        case FuncId::Cosh: outer = make_call(FuncId::Sinh, u); break;
        case FuncId::Tanh:
          return c_div(du, c_pow(make_call(FuncId::Cosh, u), make_const(2.0)));
        case FuncId::Exp: outer = make_call(FuncId::Exp, u); break;
        case FuncId::Log: return c_div(du, u);
        case FuncId::Sqrt:
          return c_div(du, c_mul(make_const(2.0), make_call(FuncId::Sqrt, u)));
        case FuncId::Abs:
          // sign(u) as u/abs(u); undefined at u = 0.
          outer = c_div(u, make_call(FuncId::Abs, u));
          break;
      }
      return c_mul(std::move(outer), std::move(du));
    }
  }
  return make_const(0.0);
}

}  // namespace

Expr Expr::parse(std::string_view src, std::string_view variable) {
  Parser p(src, variable);
  return Expr(p.parse_all(), std::string(variable));
}

double Expr::eval(double x) const {
  if (!root_) throw Error(ErrorCode::InvalidArgument, "empty expression");
  return eval_node(*root_, x, var_);
}

Expr Expr::derivative() const {
  if (!root_) throw Error(ErrorCode::InvalidArgument, "empty expression");
  return Expr(diff_node(root_), var_);
}

std::string Expr::str() const {
  if (!root_) return {};
  return print_tree(root_, var_);
}

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Constant: return a->value == b->value;
    case NodeKind::Variable: return true;
    case NodeKind::Call:
      if (a->fn != b->fn) return false;
      return structurally_equal(a->lhs, b->lhs);
    case NodeKind::Negate: return structurally_equal(a->lhs, b->lhs);
    default:
      return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
}

bool operator==(const Expr& a, const Expr& b) {
  return a.var_ == b.var_ && structurally_equal(a.root_, b.root_);
}

}  // namespace bis
