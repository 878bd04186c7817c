#include "expr_internal.hpp"

#include <array>
#include <charconv>
#include <algorithm>
#include <cmath>
#include <optional>

namespace swept {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

enum class Style { Plain, Latex, Mathematica };

constexpr int kSum = 1;
constexpr int kProduct = 2;
constexpr int kUnary = 3;
constexpr int kPower = 4;
constexpr int kAtom = 5;

bool negative_number(const Number& n) {
  return n.exact() ? n.rational() < 0 : std::signbit(n.value());
}

int precedence(const Expr& e, Style style) {
  switch (e.op()) {
    case Expr::Op::Const: {
      const Number& n = e.constant();
      return negative_number(n) ? kUnary : kAtom;
    }
    case Expr::Op::Var:
    case Expr::Op::Sqrt: return kAtom;
    case Expr::Op::Clamp: return style == Style::Latex ? kUnary : kAtom;
    case Expr::Op::Pow: return kPower;
    case Expr::Op::Neg: return kUnary;
    case Expr::Op::Mul: return kProduct;
    case Expr::Op::Div: return style == Style::Latex ? kAtom : kProduct;
    case Expr::Op::Add:
    case Expr::Op::Sub: return kSum;
  }
  return kAtom;
}

// p/q with q = 2^a 5^b has a finite decimal expansion; print it that way.
std::optional<std::string> terminating_decimal(const boost::multiprecision::cpp_int& num,
                                               const boost::multiprecision::cpp_int& den) {
  boost::multiprecision::cpp_int d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  const int digits = std::max(twos, fives);
  if (d != 1 || digits > 24) return std::nullopt;
  boost::multiprecision::cpp_int scale = 1;
  for (int k = 0; k < digits; ++k) scale *= 10;
  boost::multiprecision::cpp_int scaled = num * scale / den;
  const bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return (neg ? "-" : "") + s;
}

std::string number_text(const Number& n, Style style) {
  if (n.exact()) {
    const Rational& r = n.rational();
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    if (auto dec = terminating_decimal(num, den)) return *dec;
    if (style == Style::Latex) {
      const bool neg = num < 0;
      const auto mag = neg ? decltype(num)(-num) : num;
      return std::string(neg ? "-" : "") + "\\frac{" + mag.str() + "}{" + den.str() + "}";
    }
    return "(" + num.str() + "/" + den.str() + ")";
  }
  const double v = n.value();
  if (std::isinf(v)) {
    if (style == Style::Mathematica) return v > 0 ? "Infinity" : "-Infinity";
    if (style == Style::Latex) return v > 0 ? "\\infty" : "-\\infty";
    return v > 0 ? "inf" : "-inf";
  }
  std::string s = format_double(v);
  const auto e = s.find('e');
  if (e == std::string::npos || style == Style::Plain) return s;
  std::string mant = s.substr(0, e);
  std::string expo = s.substr(e + 1);
  if (!expo.empty() && expo[0] == '+') expo.erase(0, 1);
  if (style == Style::Mathematica) return mant + "*^" + expo;
  return mant + " \\times 10^{" + expo + "}";
}

class Printer {
public:
  explicit Printer(Style s) : style_(s) {}

  std::string print(const Expr& e, int min_prec) {
    std::string body = raw(e);
    if (precedence(e, style_) < min_prec) return open() + body + close();
    return body;
  }

private:
  Style style_;

  std::string open() const { return style_ == Style::Latex ? "\\left(" : "("; }
  std::string close() const { return style_ == Style::Latex ? "\\right)" : ")"; }

  std::string raw(const Expr& e) {
    switch (e.op()) {
      case Expr::Op::Const: return number_text(e.constant(), style_);
      case Expr::Op::Var: return e.variable() == Var::X ? "x" : "y";
      case Expr::Op::Neg: return "-" + print(e.operand(0), kUnary);
      case Expr::Op::Add: return print(e.operand(0), kSum) + " + " + print(e.operand(1), kProduct);
      case Expr::Op::Sub: return print(e.operand(0), kSum) + " - " + print(e.operand(1), kProduct);
      case Expr::Op::Mul: return product(e);
      case Expr::Op::Div:
        if (style_ == Style::Latex)
          return "\\frac{" + print(e.operand(0), 0) + "}{" + print(e.operand(1), 0) + "}";
        return print(e.operand(0), kProduct) + "/" + print(e.operand(1), kUnary);
      case Expr::Op::Pow: {
        const std::string base = print(e.operand(0), kAtom);
        if (style_ == Style::Latex) return base + "^{" + std::to_string(e.exponent()) + "}";
        if (style_ == Style::Mathematica && e.exponent() < 0)
          return base + "^(" + std::to_string(e.exponent()) + ")";
        return base + "^" + std::to_string(e.exponent());
      }
      case Expr::Op::Sqrt:
        if (style_ == Style::Latex) return "\\sqrt{" + print(e.operand(0), 0) + "}";
        if (style_ == Style::Mathematica) return "Sqrt[" + print(e.operand(0), 0) + "]";
        return "sqrt(" + print(e.operand(0), 0) + ")";
      case Expr::Op::Clamp: return clamp_text(e);
    }
    return {};
  }

  std::string product(const Expr& e) {
    const Expr& a = e.operand(0);
    const Expr& b = e.operand(1);
    std::string left = print(a, kProduct);
    std::string right = print(b, kUnary);
    if (style_ == Style::Latex) {
      const bool juxtapose = a.is_constant() && !b.is_constant() && right.rfind("\\left(", 0) != 0 &&
                             (b.op() == Expr::Op::Var || b.op() == Expr::Op::Pow ||
                              b.op() == Expr::Op::Sqrt);
      return left + (juxtapose ? " " : " \\cdot ") + right;
    }
    return left + "*" + right;
  }

  std::string clamp_text(const Expr& e) {
    const Number lo(e.clamp_lo());
    const Number hi(e.clamp_hi());
    const std::string u = print(e.operand(0), 0);
    if (style_ == Style::Mathematica)
      return "Clip[" + u + ", {" + number_text(lo, style_) + ", " + number_text(hi, style_) + "}]";
    if (style_ == Style::Plain)
      return "clamp(" + u + ", " + number_text(lo, style_) + ", " + number_text(hi, style_) + ")";
    const std::string l = number_text(lo, style_);
    const std::string h = number_text(hi, style_);
    std::string s = "\\begin{cases} ";
    if (std::isfinite(e.clamp_lo())) s += l + " & " + u + " \\le " + l + " \\\\ ";
    if (std::isfinite(e.clamp_hi())) s += h + " & " + u + " \\ge " + h + " \\\\ ";
    return s + u + " & \\text{otherwise} \\end{cases}";
  }
};

}  // namespace

std::string to_string(const Expr& e) { return Printer(Style::Plain).print(e, 0); }
std::string to_latex(const Expr& e) { return Printer(Style::Latex).print(e, 0); }
std::string to_mathematica(const Expr& e) { return Printer(Style::Mathematica).print(e, 0); }

}  // namespace swept
