#pragma once

// The quantum matrix algebra C_q[M(k,n)] as a rewriting system, quantum
// minors, and localized expressions in quantum Plücker coordinates. This is
// the independent side of every equality check: it never looks at seeds or
// tori.
//
// Generators x_ij are numbered (i-1)*n + (j-1), so a word is in normal order
// exactly when its letters are non-decreasing. Rewrites of an out-of-order
// adjacent pair b a (b = x_rl > a = x_ij):
//
//   same row or same column      b a -> q^{-1} a b
//   r > i, l < j                 b a -> a b
//   r > i, l > j                 b a -> a b - (q - q^{-1}) x_il x_rj

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qcluster/grassmann.hpp"
#include "qcluster/qcoeff.hpp"

namespace qcluster {

using Word = std::vector<std::uint8_t>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// Finite sum of words with nonzero coefficients.
class NCPoly {
 public:
  using Terms = std::map<Word, QCoeff>;

  NCPoly() = default;
  static NCPoly word(Word w, QCoeff c = QCoeff(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  void add_term(const Word& w, const QCoeff& c);

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(const QCoeff& c);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const QCoeff& c) { return a *= c; }
  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// The integer c with p = q^c r, or empty.
std::optional<long long> qpower_ratio(const NCPoly& p, const NCPoly& r);

class QuantumMatrixAlgebra {
 public:
  QuantumMatrixAlgebra(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::uint8_t letter(int i, int j) const;  // 1-based row and column
  std::pair<int, int> position(std::uint8_t letter) const;

  /// Normal form of one raw word, by memoized insertion.
  NCPoly normal_form(const Word& w) const;
  NCPoly normal_form(const NCPoly& p) const;
  /// Product of two normal-form polynomials.
  NCPoly multiply(const NCPoly& a, const NCPoly& b) const;

  /// Rewrites a raw word by repeatedly applying one rule at a descent chosen
  /// by `pick` (given the number of descents, returns an index). Slow; used
  /// to test that the result does not depend on the order of rewriting.
  NCPoly rewrite(const Word& w, const std::function<std::size_t(std::size_t)>& pick) const;

  /// Σ_σ (-q)^{ℓ(σ)} x_{i_1 j_σ(1)} ... x_{i_l j_σ(l)}; SizeMismatch when |I| != |J|.
  NCPoly quantum_minor(const std::vector<int>& rows, const std::vector<int>& cols) const;
  /// Δ_q^J = quantum_minor([1,k], J), cached.
  const NCPoly& plucker(const KSubset& j) const;

  /// c with Δ^I Δ^J = q^c Δ^J Δ^I, or empty.
  std::optional<long long> quasi_commutation_exponent(const KSubset& i, const KSubset& j) const;

  std::string to_string(const NCPoly& p) const;

 private:
  const std::vector<std::pair<Word, QCoeff>>& insert(const Word& w, std::uint8_t x) const;
  void append(std::map<Word, QCoeff>& out, const Word& w, std::uint8_t x, const QCoeff& c) const;

  int rows_;
  int cols_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Word, std::unique_ptr<std::vector<std::pair<Word, QCoeff>>>, WordHash> insert_memo_;
  mutable std::map<KSubset, std::unique_ptr<NCPoly>> plucker_cache_;
};

// ---- localized Plücker expressions ----------------------------------------

/// coeff * Δ^{word_1} ... Δ^{word_r} * T(frozen), where
/// T(e) = Δ^{F_1 e_1} ... Δ^{F_n e_n} in frozen_subsets order. Frozen
/// coordinates never appear in `word`; they are moved into the tail.
struct PluckerTerm {
  QCoeff coeff;
  std::vector<KSubset> word;
  std::vector<int> frozen;
};

class PluckerContext;

class LocalizedPluckerExpr {
 public:
  LocalizedPluckerExpr() = default;
  explicit LocalizedPluckerExpr(std::shared_ptr<const PluckerContext> ctx) : ctx_(std::move(ctx)) {}

  const std::shared_ptr<const PluckerContext>& context() const { return ctx_; }
  const std::vector<PluckerTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds a term in canonical shape; like terms are merged.
  void add_term(PluckerTerm t);

  LocalizedPluckerExpr& operator+=(const LocalizedPluckerExpr& o);
  LocalizedPluckerExpr& operator-=(const LocalizedPluckerExpr& o);
  LocalizedPluckerExpr& operator*=(const QCoeff& c);
  LocalizedPluckerExpr operator-() const;
  friend LocalizedPluckerExpr operator+(LocalizedPluckerExpr a, const LocalizedPluckerExpr& b) { return a += b; }
  friend LocalizedPluckerExpr operator-(LocalizedPluckerExpr a, const LocalizedPluckerExpr& b) { return a -= b; }
  friend LocalizedPluckerExpr operator*(LocalizedPluckerExpr a, const QCoeff& c) { return a *= c; }
  friend LocalizedPluckerExpr operator*(const QCoeff& c, LocalizedPluckerExpr a) { return a *= c; }
  friend LocalizedPluckerExpr operator*(const LocalizedPluckerExpr& a, const LocalizedPluckerExpr& b);

  /// Structural equality of the canonical form (not algebra equality; see
  /// expr_equal).
  friend bool operator==(const LocalizedPluckerExpr& a, const LocalizedPluckerExpr& b);

 private:
  std::shared_ptr<const PluckerContext> ctx_;
  std::vector<PluckerTerm> terms_;  // sorted by (word, frozen)
};

/// Shared data for one Gr(k,n): frozen labels, their Scott exponents, named
/// variables, and the quantum matrix algebra.
class PluckerContext : public std::enable_shared_from_this<PluckerContext> {
 public:
  static std::shared_ptr<PluckerContext> create(int k, int n);

  int k() const { return k_; }
  int n() const { return n_; }
  const std::vector<KSubset>& frozen() const { return frozen_; }
  /// Index of J among the frozen labels, or -1.
  int frozen_index(const KSubset& j) const;
  const QuantumMatrixAlgebra& algebra() const { return *algebra_; }

  /// Δ^I Δ^F = q^{frozen_exponent(I, f)} Δ^F Δ^I for the frozen label F.
  long long frozen_exponent(const KSubset& i, int f) const;

  /// Names usable in parsed expressions (y, z, ...). Not thread-safe; fill
  /// before sharing.
  void define(const std::string& name, LocalizedPluckerExpr value);
  const LocalizedPluckerExpr* lookup(const std::string& name) const;
  const std::map<std::string, LocalizedPluckerExpr>& names() const { return names_; }

  LocalizedPluckerExpr scalar(const QCoeff& c) const;
  LocalizedPluckerExpr plucker(const KSubset& j) const;
  /// Δ^F for the frozen label at index f, raised to e (any sign).
  LocalizedPluckerExpr frozen_power(int f, int e) const;

 private:
  PluckerContext(int k, int n);

  int k_;
  int n_;
  std::vector<KSubset> frozen_;
  std::unique_ptr<QuantumMatrixAlgebra> algebra_;
  std::map<std::string, LocalizedPluckerExpr> names_;
};

using ContextPtr = std::shared_ptr<const PluckerContext>;

/// x^e; negative e only for a single term without Plücker word.
LocalizedPluckerExpr power(const LocalizedPluckerExpr& x, int e);
LocalizedPluckerExpr inverse(const LocalizedPluckerExpr& x);

/// Right-multiplies by a frozen monomial so every tail is non-negative and
/// returns the numerator as a normal-form polynomial together with the
/// shift that was applied.
std::pair<NCPoly, std::vector<int>> plucker_to_ncpoly(const LocalizedPluckerExpr& e);

/// Equality in the localized quantum Grassmannian, decided on normal forms.
bool expr_equal(const LocalizedPluckerExpr& a, const LocalizedPluckerExpr& b);

/// c with a b = q^c b a, or empty.
std::optional<long long> expr_q_commutation(const LocalizedPluckerExpr& a, const LocalizedPluckerExpr& b);

struct BracketFactor {
  LocalizedPluckerExpr value;
  int exp = 1;
};

/// [f_1^{k_1} ... f_r^{k_r}] = q^{-1/2 Σ_{i<j} k_i k_j c_ij} f_1^{k_1} ... f_r^{k_r}.
/// NotQuasiCommuting when a pair fails to q-commute; an odd total exponent
/// leaves a half power of q, which is allowed.
LocalizedPluckerExpr bracket(const std::vector<BracketFactor>& factors);

/// Text form; frozen factors are printed last as D(...)^e.
std::string to_string(const LocalizedPluckerExpr& e);
/// Accepts D(...)^e (negative only for frozen), names defined in the
/// context, brackets and scalars.
LocalizedPluckerExpr parse_plucker_expr(std::string_view text, const ContextPtr& ctx);

/// Value at q = 1 with Δ^J replaced by minors(J).
Rational evaluate_classical(const LocalizedPluckerExpr& e, const std::function<Rational(const KSubset&)>& minors);

}  // namespace qcluster
