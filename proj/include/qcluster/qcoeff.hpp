#pragma once

// Scalars of the quantum torus: Laurent polynomials in q^{1/2} with rational
// coefficients, i.e. the ring Q[q^{1/2}, q^{-1/2}].

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcluster {

using Rational = mpq_class;

/// An exponent of q stored as twice its value, so q^{k/2} has twice == k.
struct HalfInt {
  std::int64_t twice = 0;

  static constexpr HalfInt from_twice(std::int64_t t) { return HalfInt{t}; }
  static constexpr HalfInt integer(std::int64_t v) { return HalfInt{2 * v}; }

  constexpr bool is_integer() const { return twice % 2 == 0; }

  constexpr HalfInt operator-() const { return HalfInt{-twice}; }
  constexpr HalfInt operator+(HalfInt o) const { return HalfInt{twice + o.twice}; }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt{twice - o.twice}; }
  constexpr HalfInt& operator+=(HalfInt o) { twice += o.twice; return *this; }

  constexpr auto operator<=>(const HalfInt&) const = default;
};

std::string to_string(HalfInt h);

class QCoeff {
 public:
  // (twice-exponent, coefficient), strictly increasing exponents, no zero coefficient.
  using Term = std::pair<std::int64_t, Rational>;

  QCoeff() = default;
  QCoeff(long value);  // NOLINT: integers are scalars
  explicit QCoeff(const Rational& value);

  static QCoeff qpow(HalfInt e);
  static QCoeff monomial(const Rational& c, HalfInt e);
  /// Builds from arbitrary (exponent, coefficient) pairs; merges and drops zeros.
  static QCoeff from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// A single term with coefficient exactly one.
  bool is_pure_qpow() const;
  /// A single term (a unit of the ring).
  bool is_monomial() const { return terms_.size() == 1; }
  bool has_integer_coefficients() const;

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  HalfInt min_exponent() const;
  HalfInt max_exponent() const;

  QCoeff operator-() const;
  QCoeff& operator+=(const QCoeff& o);
  QCoeff& operator-=(const QCoeff& o);
  QCoeff& operator*=(const QCoeff& o);
  friend QCoeff operator+(QCoeff a, const QCoeff& b) { return a += b; }
  friend QCoeff operator-(QCoeff a, const QCoeff& b) { return a -= b; }
  friend QCoeff operator*(const QCoeff& a, const QCoeff& b);

  /// Multiplies by q^{e} in place (shifts every exponent).
  QCoeff& shift(HalfInt e);
  QCoeff shifted(HalfInt e) const { QCoeff c = *this; c.shift(e); return c; }

  /// Value at q = 1.
  Rational at_one() const;

  friend bool operator==(const QCoeff& a, const QCoeff& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const QCoeff& a, const QCoeff& b) { return a.terms_ < b.terms_; }

 private:
  std::vector<Term> terms_;
};

inline QCoeff qpow(HalfInt e) { return QCoeff::qpow(e); }

QCoeff add(const QCoeff& a, const QCoeff& b);
QCoeff mul(const QCoeff& a, const QCoeff& b);

/// q^{1/2} -> q^{-1/2}.
QCoeff bar(const QCoeff& a);

/// Returns c with c * den == num. Throws NotDivisible when no such c exists in
/// Q[q^{1/2}, q^{-1/2}] and DivisionByZero when den is zero.
QCoeff divide_exact(const QCoeff& num, const QCoeff& den);

/// Inverse of a unit (single-term) coefficient; NotInvertible otherwise.
QCoeff inverse(const QCoeff& unit);

/// Renders e.g. `3*q^{1/2} - q^{-2}`; terms by descending exponent.
std::string to_string(const QCoeff& c);
/// Parses the format written by to_string (and a few looser spellings).
QCoeff parse_qcoeff(std::string_view text);

std::ostream& operator<<(std::ostream& os, const QCoeff& c);

}  // namespace qcluster
