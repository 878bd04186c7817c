#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swept {

using Rational = boost::multiprecision::cpp_rational;

enum class Var : std::uint8_t { X, Y };

// A numeric constant that remembers whether it is an exact rational.
// Inexact constants only carry their double value.
class Number {
public:
  Number() : exact_(Rational(0)), value_(0.0) {}
  explicit Number(const Rational& r);
  Number(const Rational& r, double nearest) : exact_(r), value_(nearest) {}
  explicit Number(double v) : value_(v) {}
  static Number integer(long long v) { return Number(Rational(v)); }

  bool exact() const { return exact_.has_value(); }
  const Rational& rational() const { return *exact_; }
  double value() const { return value_; }

  bool is_zero() const { return value_ == 0.0; }
  bool is_one() const { return exact() ? *exact_ == 1 : value_ == 1.0; }
  bool is_minus_one() const { return exact() ? *exact_ == -1 : value_ == -1.0; }
  bool is_integer() const;
  bool is_finite() const;

  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator/(const Number& a, const Number& b);
  friend Number operator-(const Number& a);
  friend bool operator==(const Number& a, const Number& b);

  Number pow(int n) const;
  std::optional<Number> sqrt() const;

private:
  std::optional<Rational> exact_;
  double value_;
};

class EvalError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

struct ExprNode;

class Expr {
public:
  enum class Op : std::uint8_t { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Sqrt, Clamp };

  Expr();
  Expr(int v);  // NOLINT: integer literals read naturally in formula code
  explicit Expr(const Number& n);
  static Expr number(const Number& n) { return Expr(n); }
  static Expr number(const Rational& r) { return Expr(Number(r)); }
  static Expr number(double v) { return Expr(Number(v)); }
  static Expr var(Var v);
  static Expr x() { return var(Var::X); }
  static Expr y() { return var(Var::Y); }

  Op op() const;
  bool is_constant() const { return op() == Op::Const; }
  const Number& constant() const;
  Var variable() const;
  std::size_t arity() const;
  const Expr& operand(std::size_t i) const;
  int exponent() const;
  double clamp_lo() const;
  double clamp_hi() const;

  bool depends_on(Var v) const;
  std::size_t node_count() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  const ExprNode* raw() const { return node_.get(); }

private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;

  friend struct ExprAccess;
};

// Smart constructors: fold constants and drop the identities 0+e, 1*e, e^1.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, int n);
Expr sqrt(const Expr& a);
Expr clamp(const Expr& a, double lo, double hi);

double eval(const Expr& e, double x, double y = 0.0);
std::optional<Rational> eval_exact(const Expr& e, const Rational& x);

// True when every constant is exact and no sqrt, clamp or y occurs.
bool is_rational_function(const Expr& e);

Expr differentiate(const Expr& e, Var v = Var::X);
Expr substitute(const Expr& e, Var v, const Expr& replacement);
Expr swap_variables(const Expr& e);

std::string to_string(const Expr& e);
std::string to_latex(const Expr& e);
std::string to_mathematica(const Expr& e);
std::string format_double(double v);

struct ParseOptions {
  std::vector<Var> variables{Var::X};
  bool allow_clamp = false;
  // Named constants usable inside expressions (job-file parameters).
  const std::map<std::string, Expr, std::less<>>* constants = nullptr;
};

Expr parse(std::string_view text, const ParseOptions& opts = {});

// Parses a constant expression ("3", "-1/2", "5*sqrt(3)", "inf").
Number parse_number(std::string_view text,
                    const std::map<std::string, Expr, std::less<>>* constants = nullptr);

}  // namespace swept
