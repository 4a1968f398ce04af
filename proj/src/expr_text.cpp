#include "qcluster/expr_text.hpp"

#include <cctype>

#include "qcluster/error.hpp"

namespace qcluster::text {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError,
                msg + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  long long integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    long long v = std::stoll(std::string(s_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }

  std::vector<int> int_list(char close) {
    std::vector<int> out;
    if (accept(close)) return out;
    do {
      out.push_back(static_cast<int>(integer()));
    } while (accept(','));
    expect(close);
    return out;
  }

  int power() {
    if (!accept('^')) return 1;
    if (accept('{')) {
      int v = static_cast<int>(integer());
      expect('}');
      return v;
    }
    if (peek() == '(') {
      ++pos_;
      int v = static_cast<int>(integer());
      expect(')');
      return v;
    }
    return static_cast<int>(integer());
  }

  HalfInt q_exponent() {
    if (!accept('^')) return HalfInt::integer(1);
    char close = '\0';
    if (accept('{')) close = '}';
    else if (accept('(')) close = ')';
    long long num = integer();
    long long den = 1;
    if (close != '\0') {
      if (accept('/')) den = integer();
      expect(close);
    }
    if (den == 1) return HalfInt::integer(num);
    if (den == 2) return HalfInt::from_twice(num);
    fail("q exponents must be integers or halves");
  }

  Rational number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Rational(std::string(s_.substr(start, pos_ - start)));
  }

  static Expr product(const Expr& a, const Expr& b) {
    Expr out;
    for (const auto& ta : a)
      for (const auto& tb : b) {
        Term t;
        t.scalar = ta.scalar * tb.scalar;
        if (t.scalar.is_zero()) continue;
        t.factors = ta.factors;
        t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
        out.push_back(std::move(t));
      }
    return out;
  }

  static Expr scalar_expr(QCoeff c) {
    Term t;
    t.scalar = std::move(c);
    return {t};
  }

  bool at_factor_start() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '_' || c == '(' || c == '[';
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
      ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  // A scalar divisor after '/': a rational number or a power of q.
  QCoeff scalar_divisor() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return QCoeff(number());
    if (c == 'q') {
      ++pos_;
      return QCoeff::qpow(q_exponent());
    }
    fail("expected a number or a power of q after '/'");
  }

  Expr factor() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++pos_;
      Factor b;
      b.kind = Factor::Kind::Bracket;
      while (!accept(']')) {
        if (peek() == '*') {
          ++pos_;
          continue;
        }
        Expr inner = factor();
        if (inner.size() != 1 || !inner[0].scalar.is_one() || inner[0].factors.size() != 1 ||
            inner[0].factors[0].kind == Factor::Kind::Bracket)
          fail("a bracket holds plain factors only");
        b.inner.push_back(std::move(inner[0].factors[0]));
      }
      if (b.inner.empty()) fail("empty bracket");
      Term t;
      t.factors.push_back(std::move(b));
      return {t};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return scalar_expr(QCoeff(number()));
    std::string id = identifier();
    if (id.empty()) fail("expected a factor");
    if (id == "q") return scalar_expr(QCoeff::qpow(q_exponent()));
    Factor f;
    if (id == "X" && peek() == '[') {
      ++pos_;
      f.kind = Factor::Kind::Torus;
      f.ints = int_list(']');
    } else if (id == "D" && peek() == '(') {
      ++pos_;
      f.kind = Factor::Kind::Plucker;
      f.ints = int_list(')');
      f.exp = power();
    } else {
      f.kind = Factor::Kind::Name;
      f.name = id;
      f.exp = power();
    }
    Term t;
    t.factors.push_back(std::move(f));
    return {t};
  }

  Expr term() {
    Expr acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = product(acc, factor());
      } else if (accept('/')) {
        acc = product(acc, scalar_expr(inverse(scalar_divisor())));
      } else if (at_factor_start()) {
        acc = product(acc, factor());
      } else {
        return acc;
      }
    }
  }

  Expr expr() {
    Expr out;
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    for (;;) {
      Expr t = term();
      for (auto& tt : t) {
        if (neg) tt.scalar = -tt.scalar;
        out.push_back(std::move(tt));
      }
      if (accept('+')) neg = false;
      else if (accept('-')) neg = true;
      else return out;
    }
  }
};

}  // namespace

Expr parse_expression(std::string_view text) {
  Reader r(text);
  return r.parse_all();
}

std::string scalar_prefix(const QCoeff& c, bool has_factors) {
  if (!has_factors) return to_string(c);
  if (c.is_one()) return "";
  if (c == QCoeff(-1)) return "-";
  if (c.size() > 1) return "(" + to_string(c) + ")*";
  return to_string(c) + "*";
}

}  // namespace qcluster::text
