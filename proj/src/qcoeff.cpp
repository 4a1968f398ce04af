#include "qcluster/qcoeff.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "qcluster/error.hpp"
#include "qcluster/expr_text.hpp"

namespace qcluster {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotQuasiCommuting: return "NotQuasiCommuting";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::IncompatiblePair: return "IncompatiblePair";
    case ErrorCode::NotSkewSymmetric: return "NotSkewSymmetric";
    case ErrorCode::NotSkewSymmetrizable: return "NotSkewSymmetrizable";
    case ErrorCode::FrameFormMismatch: return "FrameFormMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotWeaklySeparated: return "NotWeaklySeparated";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NotConsecutivelyGeneric: return "NotConsecutivelyGeneric";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotWeaklySeparatedInternal: return "NotWeaklySeparatedInternal";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::LaurentViolation: return "LaurentViolation";
  }
  return "Unknown";
}

std::string to_string(HalfInt h) {
  if (h.is_integer()) return std::to_string(h.twice / 2);
  return std::to_string(h.twice) + "/2";
}

QCoeff::QCoeff(long value) {
  if (value != 0) terms_.emplace_back(0, Rational(value));
}

QCoeff::QCoeff(const Rational& value) {
  if (value != 0) terms_.emplace_back(0, value);
}

QCoeff QCoeff::qpow(HalfInt e) { return monomial(Rational(1), e); }

QCoeff QCoeff::monomial(const Rational& c, HalfInt e) {
  QCoeff r;
  if (c != 0) r.terms_.emplace_back(e.twice, c);
  return r;
}

QCoeff QCoeff::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  QCoeff r;
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first) {
      r.terms_.back().second += t.second;
      if (r.terms_.back().second == 0) r.terms_.pop_back();
    } else if (t.second != 0) {
      r.terms_.push_back(std::move(t));
    }
  }
  return r;
}

bool QCoeff::is_one() const {
  return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

bool QCoeff::is_pure_qpow() const {
  return terms_.size() == 1 && terms_[0].second == 1;
}

bool QCoeff::has_integer_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.second.get_den() == 1; });
}

HalfInt QCoeff::min_exponent() const {
  return terms_.empty() ? HalfInt{} : HalfInt{terms_.front().first};
}

HalfInt QCoeff::max_exponent() const {
  return terms_.empty() ? HalfInt{} : HalfInt{terms_.back().first};
}

QCoeff QCoeff::operator-() const {
  QCoeff r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

// Merge of two sorted term lists, b scaled by sign.
std::vector<QCoeff::Term> merge(const std::vector<QCoeff::Term>& a,
                                const std::vector<QCoeff::Term>& b, bool negate) {
  std::vector<QCoeff::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, negate ? Rational(-b[j].second) : b[j].second);
      ++j;
    } else {
      Rational s = negate ? Rational(a[i].second - b[j].second)
                          : Rational(a[i].second + b[j].second);
      if (s != 0) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

QCoeff& QCoeff::operator+=(const QCoeff& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

QCoeff& QCoeff::operator-=(const QCoeff& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

QCoeff operator*(const QCoeff& a, const QCoeff& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.terms_.size() == 1) {
    QCoeff r = a;
    for (auto& t : r.terms_) {
      t.first += b.terms_[0].first;
      t.second *= b.terms_[0].second;
    }
    return r;
  }
  if (a.terms_.size() == 1) return b * a;
  std::vector<QCoeff::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) prod.emplace_back(ea + eb, ca * cb);
  return QCoeff::from_terms(std::move(prod));
}

QCoeff& QCoeff::operator*=(const QCoeff& o) {
  *this = *this * o;
  return *this;
}

QCoeff& QCoeff::shift(HalfInt e) {
  for (auto& t : terms_) t.first += e.twice;
  return *this;
}

Rational QCoeff::at_one() const {
  Rational s = 0;
  for (const auto& t : terms_) s += t.second;
  return s;
}

QCoeff add(const QCoeff& a, const QCoeff& b) { return a + b; }
QCoeff mul(const QCoeff& a, const QCoeff& b) { return a * b; }

QCoeff bar(const QCoeff& a) {
  std::vector<QCoeff::Term> t;
  t.reserve(a.terms().size());
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it)
    t.emplace_back(-it->first, it->second);
  return QCoeff::from_terms(std::move(t));
}

QCoeff inverse(const QCoeff& unit) {
  if (!unit.is_monomial())
    throw Error(ErrorCode::NotInvertible, "coefficient " + to_string(unit) + " is not a unit");
  const auto& [e, c] = unit.terms().front();
  return QCoeff::monomial(Rational(1) / c, HalfInt{-e});
}

QCoeff divide_exact(const QCoeff& num, const QCoeff& den) {
  if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "divide_exact by zero");
  if (num.is_zero()) return {};
  if (den.is_monomial()) return num * inverse(den);

  // Work in t = q^{1/2}: num = t^a N(t), den = t^b D(t) with N(0), D(0) != 0.
  // Laurent divisibility is then ordinary divisibility N | D in Q[t].
  const std::int64_t a = num.terms().front().first;
  const std::int64_t b = den.terms().front().first;
  const std::int64_t deg_n = num.terms().back().first - a;
  const std::int64_t deg_d = den.terms().back().first - b;
  if (deg_n < deg_d)
    throw Error(ErrorCode::NotDivisible, to_string(num) + " by " + to_string(den));

  std::vector<Rational> rem(static_cast<std::size_t>(deg_n + 1), Rational(0));
  for (const auto& [e, c] : num.terms()) rem[static_cast<std::size_t>(e - a)] = c;
  std::vector<Rational> dv(static_cast<std::size_t>(deg_d + 1), Rational(0));
  for (const auto& [e, c] : den.terms()) dv[static_cast<std::size_t>(e - b)] = c;

  std::vector<QCoeff::Term> quot;
  const Rational& lead = dv.back();
  for (std::int64_t top = deg_n; top >= deg_d; --top) {
    const Rational& r = rem[static_cast<std::size_t>(top)];
    if (r == 0) continue;
    Rational f = r / lead;
    const std::int64_t shift = top - deg_d;
    for (std::int64_t j = 0; j <= deg_d; ++j)
      rem[static_cast<std::size_t>(shift + j)] -= f * dv[static_cast<std::size_t>(j)];
    quot.emplace_back(shift + a - b, std::move(f));
  }
  for (const auto& r : rem)
    if (r != 0) throw Error(ErrorCode::NotDivisible, to_string(num) + " by " + to_string(den));
  return QCoeff::from_terms(std::move(quot));
}

namespace {

std::string qfactor(std::int64_t twice) {
  if (twice == 2) return "q";
  if (twice % 2 == 0) return "q^{" + std::to_string(twice / 2) + "}";
  return "q^{" + std::to_string(twice) + "/2}";
}

}  // namespace

std::string to_string(const QCoeff& c) {
  if (c.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it) {
    const auto& [e, coef] = *it;
    Rational mag = abs(coef);
    if (first) {
      if (coef < 0) out += "-";
    } else {
      out += coef < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += qfactor(e);
    } else {
      out += mag.get_str() + "*" + qfactor(e);
    }
  }
  return out;
}

QCoeff parse_qcoeff(std::string_view text) {
  const auto parsed = text::parse_expression(text);
  QCoeff out;
  for (const auto& term : parsed) {
    if (!term.factors.empty())
      throw Error(ErrorCode::ParseError, "non-scalar factor in coefficient '" + std::string(text) + "'");
    out += term.scalar;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const QCoeff& c) { return os << to_string(c); }

}  // namespace qcluster
