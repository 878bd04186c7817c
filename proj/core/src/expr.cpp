#include "expr_internal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swept {

namespace mp = boost::multiprecision;

Number::Number(const Rational& r) : exact_(r), value_(r.convert_to<double>()) {}

bool Number::is_integer() const {
  if (exact()) return mp::denominator(*exact_) == 1;
  return std::isfinite(value_) && std::floor(value_) == value_;
}

bool Number::is_finite() const { return exact() || std::isfinite(value_); }

Number operator+(const Number& a, const Number& b) {
  if (a.exact() && b.exact()) return Number(a.rational() + b.rational());
  return Number(a.value() + b.value());
}

Number operator-(const Number& a, const Number& b) {
  if (a.exact() && b.exact()) return Number(a.rational() - b.rational());
  return Number(a.value() - b.value());
}

Number operator*(const Number& a, const Number& b) {
  if (a.exact() && b.exact()) return Number(a.rational() * b.rational());
  return Number(a.value() * b.value());
}

Number operator/(const Number& a, const Number& b) {
  if (a.exact() && b.exact() && b.rational() != 0) return Number(a.rational() / b.rational());
  return Number(a.value() / b.value());
}

Number operator-(const Number& a) {
  if (a.exact()) return Number(Rational(-a.rational()));
  return Number(-a.value());
}

bool operator==(const Number& a, const Number& b) {
  if (a.exact() && b.exact()) return a.rational() == b.rational();
  return a.value() == b.value();
}

Number Number::pow(int n) const {
  if (exact() && !(n < 0 && *exact_ == 0)) {
    Rational acc(1);
    const Rational base = n < 0 ? Rational(1) / *exact_ : *exact_;
    for (int k = 0; k < std::abs(n); ++k) acc *= base;
    return Number(acc);
  }
  return Number(std::pow(value_, n));
}

std::optional<Number> Number::sqrt() const {
  if (value_ < 0.0) return std::nullopt;
  if (exact()) {
    const mp::cpp_int num = mp::numerator(*exact_);
    const mp::cpp_int den = mp::denominator(*exact_);
    const mp::cpp_int sn = mp::sqrt(num);
    const mp::cpp_int sd = mp::sqrt(den);
    if (sn * sn == num && sd * sd == den) return Number(Rational(sn, sd));
  }
  return Number(std::sqrt(value_));
}

// ---------------------------------------------------------------------------

Expr make_node(Expr::Op op, std::vector<Expr> kids, int exponent, double lo, double hi) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->exponent = exponent;
  n->lo = lo;
  n->hi = hi;
  for (const auto& k : kids) {
    n->mask |= k.raw()->mask;
    n->size += k.raw()->size;
  }
  n->kids = std::move(kids);
  return ExprAccess::wrap(std::move(n));
}

namespace {

Expr const_node(const Number& v) {
  auto n = std::make_shared<ExprNode>();
  n->op = Expr::Op::Const;
  n->value = v;
  return ExprAccess::wrap(std::move(n));
}

const ExprNode& node(const Expr& e) { return *e.raw(); }

}  // namespace

Expr::Expr() : Expr(Number()) {}
Expr::Expr(int v) : Expr(Number::integer(v)) {}
Expr::Expr(const Number& n) : node_(const_node(n).node_) {}

Expr Expr::var(Var v) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Var;
  n->var = v;
  n->mask = v == Var::X ? 1u : 2u;
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr::Op Expr::op() const { return node_->op; }
const Number& Expr::constant() const { return node_->value; }
Var Expr::variable() const { return node_->var; }
std::size_t Expr::arity() const { return node_->kids.size(); }
const Expr& Expr::operand(std::size_t i) const { return node_->kids.at(i); }
int Expr::exponent() const { return node_->exponent; }
double Expr::clamp_lo() const { return node_->lo; }
double Expr::clamp_hi() const { return node_->hi; }
std::size_t Expr::node_count() const { return node_->size; }

bool Expr::depends_on(Var v) const {
  return (node_->mask & (v == Var::X ? 1u : 2u)) != 0;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.raw() == b.raw()) return true;
  const ExprNode& x = node(a);
  const ExprNode& y = node(b);
  if (x.op != y.op || x.kids.size() != y.kids.size()) return false;
  switch (x.op) {
    case Expr::Op::Const: return x.value == y.value;
    case Expr::Op::Var: return x.var == y.var;
    case Expr::Op::Pow:
      if (x.exponent != y.exponent) return false;
      break;
    case Expr::Op::Clamp:
      if (x.lo != y.lo || x.hi != y.hi) return false;
      break;
    default: break;
  }
  for (std::size_t k = 0; k < x.kids.size(); ++k)
    if (!(x.kids[k] == y.kids[k])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Smart constructors

namespace {

// k * rest with a negative constant k, so a sum can absorb the sign.
bool negative_scaled(const Expr& e) {
  return e.op() == Expr::Op::Mul && e.operand(0).is_constant() && e.operand(0).constant().value() < 0.0 &&
         !e.operand(1).is_constant();
}

Expr flip_scale(const Expr& e) { return make_node(Expr::Op::Mul, {Expr(-e.operand(0).constant()), e.operand(1)}); }

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.constant() + b.constant());
  if (a.is_constant() && a.constant().is_zero()) return b;
  if (b.is_constant() && b.constant().is_zero()) return a;
  if (b.is_constant() && b.constant().value() < 0.0) return make_node(Expr::Op::Sub, {a, Expr(-b.constant())});
  if (b.op() == Expr::Op::Neg) return a - b.operand(0);
  if (negative_scaled(b)) return make_node(Expr::Op::Sub, {a, flip_scale(b)});
  return make_node(Expr::Op::Add, {a, b});
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.constant() - b.constant());
  if (b.is_constant() && b.constant().is_zero()) return a;
  if (a.is_constant() && a.constant().is_zero()) return -b;
  if (b.is_constant() && b.constant().value() < 0.0) return make_node(Expr::Op::Add, {a, Expr(-b.constant())});
  if (b.op() == Expr::Op::Neg) return a + b.operand(0);
  if (negative_scaled(b)) return make_node(Expr::Op::Add, {a, flip_scale(b)});
  return make_node(Expr::Op::Sub, {a, b});
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr(a.constant() * b.constant());
  if (a.is_constant()) {
    if (a.constant().is_zero()) return a;
    if (a.constant().is_one()) return b;
    if (a.constant().is_minus_one()) return -b;
  }
  if (b.is_constant()) {
    if (b.constant().is_zero()) return b;
    if (b.constant().is_one()) return a;
    if (b.constant().is_minus_one()) return -a;
  }
  return make_node(Expr::Op::Mul, {a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() && !b.constant().is_zero())
    return Expr(a.constant() / b.constant());
  if (b.is_constant() && b.constant().is_one()) return a;
  return make_node(Expr::Op::Div, {a, b});
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr(-a.constant());
  if (a.op() == Expr::Op::Neg) return a.operand(0);
  if (a.op() == Expr::Op::Mul && a.operand(0).is_constant())
    return Expr(-a.operand(0).constant()) * a.operand(1);
  return make_node(Expr::Op::Neg, {a});
}

Expr pow(const Expr& base, int n) {
  if (n == 0) return Expr(1);
  if (n == 1) return base;
  if (base.is_constant() && !(n < 0 && base.constant().is_zero()))
    return Expr(base.constant().pow(n));
  return make_node(Expr::Op::Pow, {base}, n);
}

Expr sqrt(const Expr& a) {
  if (a.is_constant()) {
    if (auto r = a.constant().sqrt()) return Expr(*r);
  }
  return make_node(Expr::Op::Sqrt, {a});
}

Expr clamp(const Expr& a, double lo, double hi) {
  if (a.is_constant()) {
    const double v = a.constant().value();
    if (v < lo) return Expr::number(lo);
    if (v > hi) return Expr::number(hi);
    return a;
  }
  return make_node(Expr::Op::Clamp, {a}, 0, lo, hi);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void domain_fail(const char* what, const Expr& e) {
  throw EvalError(std::string(what) + " in '" + to_string(e) + "'");
}

double eval_rec(const Expr& e, double x, double y) {
  const ExprNode& n = node(e);
  switch (n.op) {
    case Expr::Op::Const: return n.value.value();
    case Expr::Op::Var: return n.var == Var::X ? x : y;
    case Expr::Op::Neg: return -eval_rec(n.kids[0], x, y);
    case Expr::Op::Add: return eval_rec(n.kids[0], x, y) + eval_rec(n.kids[1], x, y);
    case Expr::Op::Sub: return eval_rec(n.kids[0], x, y) - eval_rec(n.kids[1], x, y);
    case Expr::Op::Mul: return eval_rec(n.kids[0], x, y) * eval_rec(n.kids[1], x, y);
    case Expr::Op::Div: {
      const double den = eval_rec(n.kids[1], x, y);
      if (den == 0.0) domain_fail("division by zero", e);
      return eval_rec(n.kids[0], x, y) / den;
    }
    case Expr::Op::Pow: {
      const double b = eval_rec(n.kids[0], x, y);
      if (n.exponent < 0 && b == 0.0) domain_fail("division by zero", e);
      switch (n.exponent) {
        case 2: return b * b;
        case 3: return b * b * b;
        default: return std::pow(b, n.exponent);
      }
    }
    case Expr::Op::Sqrt: {
      const double a = eval_rec(n.kids[0], x, y);
      if (a < 0.0) domain_fail("square root of a negative value", e);
      return std::sqrt(a);
    }
    case Expr::Op::Clamp: {
      const double u = eval_rec(n.kids[0], x, y);
      return u < n.lo ? n.lo : (u > n.hi ? n.hi : u);
    }
  }
  return 0.0;
}

std::optional<Rational> exact_rec(const Expr& e, const Rational& x) {
  const ExprNode& n = node(e);
  switch (n.op) {
    case Expr::Op::Const:
      if (!n.value.exact()) return std::nullopt;
      return n.value.rational();
    case Expr::Op::Var:
      if (n.var != Var::X) return std::nullopt;
      return x;
    case Expr::Op::Neg: {
      auto a = exact_rec(n.kids[0], x);
      if (!a) return std::nullopt;
      return Rational(-*a);
    }
    case Expr::Op::Add:
    case Expr::Op::Sub:
    case Expr::Op::Mul:
    case Expr::Op::Div: {
      auto a = exact_rec(n.kids[0], x);
      if (!a) return std::nullopt;
      auto b = exact_rec(n.kids[1], x);
      if (!b) return std::nullopt;
      if (n.op == Expr::Op::Add) return Rational(*a + *b);
      if (n.op == Expr::Op::Sub) return Rational(*a - *b);
      if (n.op == Expr::Op::Mul) return Rational(*a * *b);
      if (*b == 0) domain_fail("division by zero", e);
      return Rational(*a / *b);
    }
    case Expr::Op::Pow: {
      auto a = exact_rec(n.kids[0], x);
      if (!a) return std::nullopt;
      if (n.exponent < 0 && *a == 0) domain_fail("division by zero", e);
      return Number(*a).pow(n.exponent).rational();
    }
    case Expr::Op::Sqrt: {
      auto a = exact_rec(n.kids[0], x);
      if (!a) return std::nullopt;
      if (*a < 0) domain_fail("square root of a negative value", e);
      auto r = Number(*a).sqrt();
      if (!r || !r->exact()) return std::nullopt;
      return r->rational();
    }
    case Expr::Op::Clamp: {
      if (!std::isfinite(n.lo) && !std::isfinite(n.hi)) return exact_rec(n.kids[0], x);
      auto u = exact_rec(n.kids[0], x);
      if (!u) return std::nullopt;
      if (std::isfinite(n.lo) && *u < Rational(n.lo)) return Rational(n.lo);
      if (std::isfinite(n.hi) && *u > Rational(n.hi)) return Rational(n.hi);
      return u;
    }
  }
  return std::nullopt;
}

}  // namespace

double eval(const Expr& e, double x, double y) { return eval_rec(e, x, y); }

std::optional<Rational> eval_exact(const Expr& e, const Rational& x) { return exact_rec(e, x); }

bool is_rational_function(const Expr& e) {
  const ExprNode& n = node(e);
  switch (n.op) {
    case Expr::Op::Const: return n.value.exact();
    case Expr::Op::Var: return n.var == Var::X;
    case Expr::Op::Sqrt:
    case Expr::Op::Clamp: return false;
    default: break;
  }
  return std::all_of(n.kids.begin(), n.kids.end(), is_rational_function);
}

// ---------------------------------------------------------------------------
// Symbolic transforms

Expr differentiate(const Expr& e, Var v) {
  const ExprNode& n = node(e);
  if (!e.depends_on(v)) return Expr(0);
  switch (n.op) {
    case Expr::Op::Const: return Expr(0);
    case Expr::Op::Var: return Expr(n.var == v ? 1 : 0);
    case Expr::Op::Neg: return -differentiate(n.kids[0], v);
    case Expr::Op::Add: return differentiate(n.kids[0], v) + differentiate(n.kids[1], v);
    case Expr::Op::Sub: return differentiate(n.kids[0], v) - differentiate(n.kids[1], v);
    case Expr::Op::Mul: {
      const Expr& a = n.kids[0];
      const Expr& b = n.kids[1];
      return differentiate(a, v) * b + a * differentiate(b, v);
    }
    case Expr::Op::Div: {
      const Expr& a = n.kids[0];
      const Expr& b = n.kids[1];
      if (!b.depends_on(v)) return differentiate(a, v) / b;
      return (differentiate(a, v) * b - a * differentiate(b, v)) / pow(b, 2);
    }
    case Expr::Op::Pow: {
      const Expr& a = n.kids[0];
      return Expr(n.exponent) * pow(a, n.exponent - 1) * differentiate(a, v);
    }
    case Expr::Op::Sqrt: return differentiate(n.kids[0], v) / (Expr(2) * e);
    case Expr::Op::Clamp:
      throw EvalError("clamp(...) has no closed-form derivative");
  }
  return Expr(0);
}

Expr substitute(const Expr& e, Var v, const Expr& replacement) {
  const ExprNode& n = node(e);
  if (!e.depends_on(v)) return e;
  switch (n.op) {
    case Expr::Op::Const: return e;
    case Expr::Op::Var: return n.var == v ? replacement : e;
    case Expr::Op::Neg: return -substitute(n.kids[0], v, replacement);
    case Expr::Op::Add:
      return substitute(n.kids[0], v, replacement) + substitute(n.kids[1], v, replacement);
    case Expr::Op::Sub:
      return substitute(n.kids[0], v, replacement) - substitute(n.kids[1], v, replacement);
    case Expr::Op::Mul:
      return substitute(n.kids[0], v, replacement) * substitute(n.kids[1], v, replacement);
    case Expr::Op::Div:
      return substitute(n.kids[0], v, replacement) / substitute(n.kids[1], v, replacement);
    case Expr::Op::Pow: return pow(substitute(n.kids[0], v, replacement), n.exponent);
    case Expr::Op::Sqrt: return sqrt(substitute(n.kids[0], v, replacement));
    case Expr::Op::Clamp: return clamp(substitute(n.kids[0], v, replacement), n.lo, n.hi);
  }
  return e;
}

Expr swap_variables(const Expr& e) {
  const ExprNode& n = node(e);
  if (n.mask == 0) return e;
  switch (n.op) {
    case Expr::Op::Var: return Expr::var(n.var == Var::X ? Var::Y : Var::X);
    case Expr::Op::Neg: return -swap_variables(n.kids[0]);
    case Expr::Op::Add: return swap_variables(n.kids[0]) + swap_variables(n.kids[1]);
    case Expr::Op::Sub: return swap_variables(n.kids[0]) - swap_variables(n.kids[1]);
    case Expr::Op::Mul: return swap_variables(n.kids[0]) * swap_variables(n.kids[1]);
    case Expr::Op::Div: return swap_variables(n.kids[0]) / swap_variables(n.kids[1]);
    case Expr::Op::Pow: return pow(swap_variables(n.kids[0]), n.exponent);
    case Expr::Op::Sqrt: return sqrt(swap_variables(n.kids[0]));
    case Expr::Op::Clamp: return clamp(swap_variables(n.kids[0]), n.lo, n.hi);
    case Expr::Op::Const: break;
  }
  return e;
}

}  // namespace swept
