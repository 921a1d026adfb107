#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "error.hpp"

namespace bis {

enum class NodeKind { Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

enum class FuncId { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  double value = 0.0;       // Constant
  FuncId fn = FuncId::Sin;  // Call
  NodePtr lhs, rhs;         // Negate/Call use lhs only
};

// Immutable symbolic expression in one real variable.
//
// Grammar: '+'/'-' < '*'/'/' < unary '-' < '^' (right-assoc); no implicit
// multiplication; functions sin cos tan sinh cosh tanh exp log sqrt abs.
//
// eval raises DomainError (never returns NaN/Inf) for log of non-positive
// arguments, sqrt of negatives, division by zero, and any non-finite
// intermediate; the error's detail() names the offending subexpression.
//
// derivative() is exact on the same node set.  d(abs u) uses u/abs(u), the
// piecewise sign; evaluating it at u = 0 is a DomainError (the derivative of
// abs is undefined there).
class Expr {
 public:
  Expr() = default;

  static Expr parse(std::string_view src, std::string_view variable);

  double eval(double x) const;
  Expr derivative() const;
  std::string str() const;

  const std::string& variable() const { return var_; }
  const NodePtr& root() const { return root_; }
  bool valid() const { return root_ != nullptr; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  Expr(NodePtr root, std::string var) : root_(std::move(root)), var_(std::move(var)) {}

  NodePtr root_;
  std::string var_;
};

bool structurally_equal(const NodePtr& a, const NodePtr& b);

// %.17g, round-trips through strtod.
std::string format_double(double v);

}  // namespace bis
