#include "expr_internal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace swept {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
};

class Lexer {
public:
  explicit Lexer(std::string_view s) : src_(s) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

private:
  std::string_view src_;
  std::size_t at_ = 0;
  Token cur_{Tok::End, 0, {}};

  void advance() {
    while (at_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[at_]))) ++at_;
    const std::size_t start = at_;
    if (at_ >= src_.size()) {
      cur_ = {Tok::End, start, {}};
      return;
    }
    const char c = src_[at_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (at_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[at_])) || src_[at_] == '.')) ++at_;
      if (at_ < src_.size() && (src_[at_] == 'e' || src_[at_] == 'E')) {
        std::size_t k = at_ + 1;
        if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
        if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
          at_ = k;
          while (at_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[at_]))) ++at_;
        }
      }
      cur_ = {Tok::Number, start, src_.substr(start, at_ - start)};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (at_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[at_])) || src_[at_] == '_'))
        ++at_;
      cur_ = {Tok::Ident, start, src_.substr(start, at_ - start)};
      return;
    }
    ++at_;
    Tok k = Tok::End;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    cur_ = {k, start, src_.substr(start, 1)};
  }
};

// Decimal literal as an exact rational; "1.25e-3" -> 125/100000.
Number literal(const Token& t) {
  std::string_view s = t.text;
  std::string digits;
  int frac_len = 0;
  bool seen_dot = false;
  std::size_t k = 0;
  for (; k < s.size() && s[k] != 'e' && s[k] != 'E'; ++k) {
    if (s[k] == '.') {
      if (seen_dot) throw ParseError("malformed number '" + std::string(s) + "'", t.pos);
      seen_dot = true;
    } else {
      digits.push_back(s[k]);
      if (seen_dot) ++frac_len;
    }
  }
  if (digits.empty()) throw ParseError("malformed number '" + std::string(s) + "'", t.pos);
  long exp10 = 0;
  if (k < s.size()) {
    const auto* first = s.data() + k + 1;
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), exp10);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ParseError("malformed number '" + std::string(s) + "'", t.pos);
  }
  exp10 -= frac_len;
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  if (std::labs(exp10) > 400) return Number(v);
  // A leading zero would make cpp_int read the digits as octal.
  const auto nz = digits.find_first_not_of('0');
  boost::multiprecision::cpp_int mant(nz == std::string::npos ? std::string("0") : digits.substr(nz));
  boost::multiprecision::cpp_int scale = 1;
  for (long i = 0; i < std::labs(exp10); ++i) scale *= 10;
  if (exp10 >= 0) return Number(Rational(mant * scale), v);
  return Number(Rational(mant, scale), v);
}

class Parser {
public:
  Parser(std::string_view text, const ParseOptions& opts) : lex_(text), opts_(opts) {}

  Expr run() {
    Expr e = expr();
    if (lex_.peek().kind != Tok::End)
      throw ParseError("unexpected '" + std::string(lex_.peek().text) + "'", lex_.peek().pos);
    return e;
  }

private:
  Lexer lex_;
  const ParseOptions& opts_;

  Token expect(Tok k, const char* what) {
    if (lex_.peek().kind != k) {
      const Token& t = lex_.peek();
      throw ParseError(std::string("expected ") + what +
                           (t.kind == Tok::End ? " before end of input"
                                               : " but found '" + std::string(t.text) + "'"),
                       t.pos);
    }
    return lex_.take();
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (lex_.peek().kind == Tok::Plus) {
        lex_.take();
        e = e + term();
      } else if (lex_.peek().kind == Tok::Minus) {
        lex_.take();
        e = e - term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (lex_.peek().kind == Tok::Star) {
        lex_.take();
        e = e * unary();
      } else if (lex_.peek().kind == Tok::Slash) {
        lex_.take();
        e = e / unary();
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return -unary();
    }
    if (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      return unary();
    }
    return power();
  }

  Expr power() {
    Expr b = base();
    if (lex_.peek().kind != Tok::Caret) return b;
    lex_.take();
    bool paren = false;
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      paren = true;
    }
    int sign = 1;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      sign = -1;
    } else if (lex_.peek().kind == Tok::Plus) {
      lex_.take();
    }
    const Token t = expect(Tok::Number, "an integer exponent");
    int n = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size())
      throw ParseError("exponent must be an integer, got '" + std::string(t.text) + "'", t.pos);
    if (paren) expect(Tok::RParen, "')'");
    return pow(b, sign * n);
  }

  bool variable_allowed(Var v) const {
    return std::find(opts_.variables.begin(), opts_.variables.end(), v) != opts_.variables.end();
  }

  Expr constant_argument(const Token& fn) {
    expect(Tok::LParen, "'('");
    const std::size_t at = lex_.peek().pos;
    Expr a = expr();
    expect(Tok::RParen, "')'");
    if (!a.is_constant())
      throw ParseError(std::string(fn.text) + "() accepts only constant arguments", at);
    return a;
  }

  Expr base() {
    const Token t = lex_.take();
    switch (t.kind) {
      case Tok::Number: return Expr(literal(t));
      case Tok::LParen: {
        Expr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: return identifier(t);
      case Tok::End: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected '" + std::string(t.text) + "'", t.pos);
    }
  }

  Expr identifier(const Token& t) {
    const std::string_view id = t.text;
    if (id == "x" || id == "y") {
      const Var v = id == "x" ? Var::X : Var::Y;
      if (!variable_allowed(v))
        throw ParseError("variable '" + std::string(id) + "' is not allowed here", t.pos);
      return Expr::var(v);
    }
    if (id == "pi") return Expr::number(std::numbers::pi);
    if (id == "inf") return Expr::number(std::numeric_limits<double>::infinity());
    if (id == "sqrt") {
      expect(Tok::LParen, "'('");
      Expr a = expr();
      expect(Tok::RParen, "')'");
      return sqrt(a);
    }
    if (id == "sin" || id == "cos" || id == "tan") {
      const double v = constant_argument(t).constant().value();
      if (id == "sin") return Expr::number(std::sin(v));
      if (id == "cos") return Expr::number(std::cos(v));
      return Expr::number(std::tan(v));
    }
    if (id == "clamp" && opts_.allow_clamp) {
      expect(Tok::LParen, "'('");
      Expr u = expr();
      expect(Tok::Comma, "','");
      const std::size_t at = lex_.peek().pos;
      Expr lo = expr();
      expect(Tok::Comma, "','");
      Expr hi = expr();
      expect(Tok::RParen, "')'");
      if (!lo.is_constant() || !hi.is_constant())
        throw ParseError("clamp() bounds must be constants", at);
      return clamp(u, lo.constant().value(), hi.constant().value());
    }
    if (opts_.constants) {
      auto it = opts_.constants->find(id);
      if (it != opts_.constants->end()) return it->second;
    }
    throw ParseError("unknown identifier '" + std::string(id) + "'", t.pos);
  }
};

}  // namespace

Expr parse(std::string_view text, const ParseOptions& opts) { return Parser(text, opts).run(); }

Number parse_number(std::string_view text,
                    const std::map<std::string, Expr, std::less<>>* constants) {
  ParseOptions opts;
  opts.variables.clear();
  opts.constants = constants;
  Expr e = parse(text, opts);
  if (!e.is_constant()) throw ParseError("expected a constant", 0);
  return e.constant();
}

}  // namespace swept
