#pragma once

// Based quantum torus: basis X^a (a in Z^m), X^a X^b = q^{Λ(a,b)/2} X^{a+b}.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcluster/intmat.hpp"
#include "qcluster/qcoeff.hpp"

namespace qcluster {

class SkewForm {
 public:
  /// Throws NotSkewSymmetric unless lambda is square and skew-symmetric.
  explicit SkewForm(IntMatrix lambda);

  int rank() const { return static_cast<int>(lambda_.rows()); }
  const IntMatrix& matrix() const { return lambda_; }
  long long operator()(int i, int j) const { return lambda_(i, j); }

  /// aᵗ Λ b.
  long long pair(const ExpVec& a, const ExpVec& b) const;

  friend bool operator==(const SkewForm& a, const SkewForm& b) { return a.lambda_ == b.lambda_; }

 private:
  IntMatrix lambda_;
};

using FormPtr = std::shared_ptr<const SkewForm>;

inline FormPtr make_form(IntMatrix lambda) {
  return std::make_shared<const SkewForm>(std::move(lambda));
}

/// (Λ(a,b)/2, a+b); RankMismatch when lengths differ from the form's rank.
std::pair<HalfInt, ExpVec> monomial_mul(const SkewForm& form, const ExpVec& a, const ExpVec& b);

class TorusElement {
 public:
  using Terms = std::map<ExpVec, QCoeff>;

  TorusElement() = default;  // detached zero; only useful as a placeholder
  explicit TorusElement(FormPtr form) : form_(std::move(form)) {}

  static TorusElement one(FormPtr form);
  static TorusElement monomial(FormPtr form, ExpVec a, QCoeff c = QCoeff(1));
  static TorusElement generator(FormPtr form, int i);

  const FormPtr& form() const { return form_; }
  int rank() const { return form_ ? form_->rank() : 0; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  /// Lex-largest exponent and its coefficient. Requires nonzero.
  const Terms::value_type& leading() const { return *terms_.rbegin(); }

  void add_term(const ExpVec& a, const QCoeff& c);

  TorusElement operator-() const;
  TorusElement& operator+=(const TorusElement& o);
  TorusElement& operator-=(const TorusElement& o);
  TorusElement& operator*=(const QCoeff& c);
  friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
  friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
  friend TorusElement operator*(TorusElement a, const QCoeff& c) { return a *= c; }
  friend TorusElement operator*(const QCoeff& c, TorusElement a) { return a *= c; }
  friend TorusElement operator*(const TorusElement& a, const TorusElement& b);

  /// Structural equality; forms must agree (same pointer or equal matrices).
  friend bool operator==(const TorusElement& a, const TorusElement& b);
  friend bool operator<(const TorusElement& a, const TorusElement& b) { return a.terms_ < b.terms_; }

 private:
  FormPtr form_;
  Terms terms_;
};

TorusElement mul(const TorusElement& x, const TorusElement& y);
TorusElement bar(const TorusElement& x);
bool is_bar_invariant(const TorusElement& x);
bool has_integer_coefficients(const TorusElement& x);

/// Inverse of a single-term element; NotInvertible otherwise.
TorusElement inverse(const TorusElement& x);
/// x^e; negative e only for single-term x.
TorusElement power(const TorusElement& x, int e);

/// The integer c with x y = q^c y x, or empty when the two elements do not
/// q-commute.
std::optional<long long> q_commutation(const TorusElement& x, const TorusElement& y);

struct WordFactor {
  TorusElement element;
  int exp = 1;
};

/// Bar-invariant normalized product [f_1^{k_1} ... f_r^{k_r}]: the ordered
/// product times q^{-1/2 Σ_{i<j} k_i k_j c_ij} where f_i f_j = q^{c_ij} f_j f_i.
/// Throws NotQuasiCommuting when some pair does not q-commute.
TorusElement normalized_from_word(const std::vector<WordFactor>& factors);

/// Same product when the pairwise commutation exponents are already known:
/// frame[i] frame[j] = q^{commutation(i,j)} frame[j] frame[i].
TorusElement normalized_monomial(const std::vector<TorusElement>& frame, const IntMatrix& commutation,
                                 const ExpVec& exps);

/// Y with divisor * Y == dividend; NotDivisible when no torus element works.
TorusElement exact_left_divide(const TorusElement& divisor, const TorusElement& dividend);

/// Value at q = 1 with X^{e_i} set to values[i] (all nonzero).
Rational evaluate_classical(const TorusElement& x, const std::vector<Rational>& values);

/// Text form `q^{1/2}*X[1,0,-2] + X[0,1,0]`, terms in descending lex order.
std::string to_string(const TorusElement& x);
TorusElement parse_torus(std::string_view text, FormPtr form);

}  // namespace qcluster
