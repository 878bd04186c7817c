#pragma once

#include "swept/expr.hpp"

namespace swept {

struct ExprNode {
  Expr::Op op;
  Number value;
  Var var = Var::X;
  int exponent = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<Expr> kids;
  std::uint32_t mask = 0;  // bit 0: depends on x, bit 1: depends on y
  std::size_t size = 1;
};

struct ExprAccess {
  static Expr wrap(std::shared_ptr<const ExprNode> n) { return Expr(std::move(n)); }
};

Expr make_node(Expr::Op op, std::vector<Expr> kids, int exponent = 0, double lo = 0.0,
               double hi = 0.0);

}  // namespace swept
