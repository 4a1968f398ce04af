#include "qcluster/qtorus.hpp"

#include <sstream>

#include "qcluster/error.hpp"
#include "qcluster/expr_text.hpp"

namespace qcluster {

std::vector<std::vector<long long>> to_rows(const IntMatrix& m) {
  std::vector<std::vector<long long>> rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) rows[static_cast<std::size_t>(i)].push_back(m(i, j));
  return rows;
}

IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, Eigen::Index cols_if_empty) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = rows.empty() ? cols_if_empty : static_cast<Eigen::Index>(rows[0].size());
  IntMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != c)
      throw Error(ErrorCode::ShapeMismatch, "ragged matrix row " + std::to_string(i));
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

std::string matrix_to_string(const IntMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "\t" : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

SkewForm::SkewForm(IntMatrix lambda) : lambda_(std::move(lambda)) {
  if (lambda_.rows() != lambda_.cols())
    throw Error(ErrorCode::NotSkewSymmetric, "form matrix is not square");
  if (lambda_ != -lambda_.transpose())
    throw Error(ErrorCode::NotSkewSymmetric, "form matrix is not skew-symmetric");
}

long long SkewForm::pair(const ExpVec& a, const ExpVec& b) const {
  const int m = rank();
  if (static_cast<int>(a.size()) != m || static_cast<int>(b.size()) != m)
    throw Error(ErrorCode::RankMismatch, "exponent length does not match torus rank");
  long long s = 0;
  for (int i = 0; i < m; ++i) {
    if (a[i] == 0) continue;
    long long row = 0;
    for (int j = 0; j < m; ++j)
      if (b[j] != 0) row += lambda_(i, j) * b[j];
    s += a[i] * row;
  }
  return s;
}

std::pair<HalfInt, ExpVec> monomial_mul(const SkewForm& form, const ExpVec& a, const ExpVec& b) {
  const long long l = form.pair(a, b);
  ExpVec sum(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
  return {HalfInt::from_twice(l), std::move(sum)};
}

namespace {

void require_same_form(const TorusElement& a, const TorusElement& b) {
  if (a.form() == b.form()) return;
  if (!a.form() || !b.form() || !(*a.form() == *b.form()))
    throw Error(ErrorCode::RankMismatch, "torus elements live over different forms");
}

}  // namespace

TorusElement TorusElement::one(FormPtr form) {
  const int m = form->rank();
  return monomial(std::move(form), ExpVec(static_cast<std::size_t>(m), 0));
}

TorusElement TorusElement::monomial(FormPtr form, ExpVec a, QCoeff c) {
  if (static_cast<int>(a.size()) != form->rank())
    throw Error(ErrorCode::RankMismatch, "exponent length does not match torus rank");
  TorusElement x(std::move(form));
  if (!c.is_zero()) x.terms_.emplace(std::move(a), std::move(c));
  return x;
}

TorusElement TorusElement::generator(FormPtr form, int i) {
  const int m = form->rank();
  if (i < 0 || i >= m) throw Error(ErrorCode::IndexOutOfRange, "generator index");
  ExpVec a(static_cast<std::size_t>(m), 0);
  a[static_cast<std::size_t>(i)] = 1;
  return monomial(std::move(form), std::move(a));
}

void TorusElement::add_term(const ExpVec& a, const QCoeff& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(a.size()) != rank())
    throw Error(ErrorCode::RankMismatch, "exponent length does not match torus rank");
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TorusElement TorusElement::operator-() const {
  TorusElement r = *this;
  for (auto& [a, c] : r.terms_) c = -c;
  return r;
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
  if (!form_) form_ = o.form_;
  require_same_form(*this, o);
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) {
  if (!form_) form_ = o.form_;
  require_same_form(*this, o);
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

TorusElement& TorusElement::operator*=(const QCoeff& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, v] : terms_) v *= c;
  return *this;
}

TorusElement operator*(const TorusElement& a, const TorusElement& b) {
  require_same_form(a, b);
  TorusElement r(a.form_);
  if (a.is_zero() || b.is_zero()) return r;
  const SkewForm& form = *a.form_;
  const int m = form.rank();
  std::vector<long long> row(static_cast<std::size_t>(m));
  ExpVec sum(static_cast<std::size_t>(m));
  for (const auto& [ea, ca] : a.terms_) {
    // row = eaᵗ Λ, so Λ(ea, eb) = row · eb.
    for (int j = 0; j < m; ++j) {
      long long s = 0;
      for (int i = 0; i < m; ++i)
        if (ea[i] != 0) s += ea[i] * form(i, j);
      row[static_cast<std::size_t>(j)] = s;
    }
    for (const auto& [eb, cb] : b.terms_) {
      long long l = 0;
      for (int j = 0; j < m; ++j) {
        l += row[static_cast<std::size_t>(j)] * eb[j];
        sum[static_cast<std::size_t>(j)] = ea[j] + eb[j];
      }
      r.add_term(sum, (ca * cb).shift(HalfInt::from_twice(l)));
    }
  }
  return r;
}

bool operator==(const TorusElement& a, const TorusElement& b) {
  if (a.terms_ != b.terms_) return false;
  if (a.is_zero()) return true;
  return a.form_ == b.form_ || (a.form_ && b.form_ && *a.form_ == *b.form_);
}

TorusElement mul(const TorusElement& x, const TorusElement& y) { return x * y; }

TorusElement bar(const TorusElement& x) {
  TorusElement r(x.form());
  for (const auto& [a, c] : x.terms()) r.add_term(a, bar(c));
  return r;
}

bool is_bar_invariant(const TorusElement& x) {
  for (const auto& [a, c] : x.terms())
    if (!(bar(c) == c)) return false;
  return true;
}

bool has_integer_coefficients(const TorusElement& x) {
  for (const auto& [a, c] : x.terms())
    if (!c.has_integer_coefficients()) return false;
  return true;
}

TorusElement inverse(const TorusElement& x) {
  if (!x.is_monomial()) throw Error(ErrorCode::NotInvertible, to_string(x) + " is not a unit of the torus");
  const auto& [a, c] = x.leading();
  ExpVec neg(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
  // X^a X^{-a} = q^{Λ(a,-a)/2} = 1.
  return TorusElement::monomial(x.form(), std::move(neg), qcluster::inverse(c));
}

TorusElement power(const TorusElement& x, int e) {
  if (e < 0) return power(inverse(x), -e);
  TorusElement r = TorusElement::one(x.form());
  TorusElement base = x;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

std::optional<long long> q_commutation(const TorusElement& x, const TorusElement& y) {
  if (x.is_zero() || y.is_zero()) return 0;
  if (x.is_monomial() && y.is_monomial())
    return x.form()->pair(x.leading().first, y.leading().first);
  const TorusElement xy = x * y;
  const TorusElement yx = y * x;
  if (xy.size() != yx.size()) return std::nullopt;
  const auto& [e1, c1] = xy.leading();
  const auto& [e2, c2] = yx.leading();
  if (e1 != e2) return std::nullopt;
  QCoeff ratio;
  try {
    ratio = divide_exact(c1, c2);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!ratio.is_pure_qpow() || !ratio.min_exponent().is_integer()) return std::nullopt;
  if (!(xy == yx * ratio)) return std::nullopt;
  return ratio.min_exponent().twice / 2;
}

TorusElement normalized_from_word(const std::vector<WordFactor>& factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidParams, "empty normalized product");
  const FormPtr& form = factors.front().element.form();
  long long twice_shift = 0;  // exponent of the prefactor, doubled
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      auto c = q_commutation(factors[i].element, factors[j].element);
      if (!c)
        throw Error(ErrorCode::NotQuasiCommuting,
                    "factors " + std::to_string(i) + " and " + std::to_string(j) + " do not q-commute");
      twice_shift -= static_cast<long long>(factors[i].exp) * factors[j].exp * *c;
    }
  }
  TorusElement r = TorusElement::one(form);
  for (const auto& f : factors) r = r * power(f.element, f.exp);
  return r * QCoeff::qpow(HalfInt::from_twice(twice_shift));
}

TorusElement normalized_monomial(const std::vector<TorusElement>& frame, const IntMatrix& commutation,
                                 const ExpVec& exps) {
  if (frame.empty() || exps.size() != frame.size())
    throw Error(ErrorCode::RankMismatch, "exponent length does not match frame size");
  long long twice_shift = 0;
  const auto m = exps.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (exps[i] == 0) continue;
    for (std::size_t j = i + 1; j < m; ++j)
      twice_shift -= static_cast<long long>(exps[i]) * exps[j] *
                     commutation(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  // Collect monomial factors into a single exponent first: a product of
  // basis monomials is a basis monomial up to a q-power.
  TorusElement r = TorusElement::one(frame.front().form());
  for (std::size_t i = 0; i < m; ++i) {
    if (exps[i] == 0) continue;
    r = r * power(frame[i], exps[i]);
  }
  return r * QCoeff::qpow(HalfInt::from_twice(twice_shift));
}

TorusElement exact_left_divide(const TorusElement& divisor, const TorusElement& dividend) {
  require_same_form(divisor, dividend);
  if (divisor.is_zero()) throw Error(ErrorCode::DivisionByZero, "torus division by zero");
  TorusElement quotient(divisor.form());
  if (dividend.is_zero()) return quotient;
  const SkewForm& form = *divisor.form();
  const int m = form.rank();

  // Newton polytopes add under multiplication, so every exponent of the
  // quotient lies in the box [min N - min D, max N - max D] coordinatewise.
  std::vector<int> lo(static_cast<std::size_t>(m)), hi(static_cast<std::size_t>(m));
  auto bounds = [m](const TorusElement& x, std::vector<int>& mn, std::vector<int>& mx) {
    mn.assign(static_cast<std::size_t>(m), 0);
    mx.assign(static_cast<std::size_t>(m), 0);
    bool first = true;
    for (const auto& [a, c] : x.terms()) {
      for (int j = 0; j < m; ++j) {
        if (first || a[j] < mn[j]) mn[j] = a[j];
        if (first || a[j] > mx[j]) mx[j] = a[j];
      }
      first = false;
    }
  };
  std::vector<int> dmin, dmax, nmin, nmax;
  bounds(divisor, dmin, dmax);
  bounds(dividend, nmin, nmax);
  for (int j = 0; j < m; ++j) {
    lo[j] = nmin[j] - dmin[j];
    hi[j] = nmax[j] - dmax[j];
    if (lo[j] > hi[j]) throw Error(ErrorCode::NotDivisible, "supports are incompatible");
  }

  const auto& [dlead, dcoef] = divisor.leading();
  TorusElement rem = dividend;
  while (!rem.is_zero()) {
    const auto [rlead, rcoef] = *rem.terms().rbegin();
    ExpVec e(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      e[j] = rlead[j] - dlead[j];
      if (e[j] < lo[j] || e[j] > hi[j])
        throw Error(ErrorCode::NotDivisible, "remainder " + to_string(rem) + " left over");
    }
    // X^{dlead} X^{e} = q^{Λ(dlead,e)/2} X^{rlead}.
    const QCoeff twist = QCoeff::qpow(HalfInt::from_twice(form.pair(dlead, e)));
    QCoeff c = divide_exact(rcoef, dcoef * twist);
    TorusElement step = TorusElement::monomial(divisor.form(), e, c);
    rem -= divisor * step;
    quotient += step;
  }
  return quotient;
}

Rational evaluate_classical(const TorusElement& x, const std::vector<Rational>& values) {
  if (static_cast<int>(values.size()) != x.rank()) throw Error(ErrorCode::RankMismatch, "value count");
  Rational total = 0;
  for (const auto& [a, c] : x.terms()) {
    Rational t = c.at_one();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      if (values[i] == 0) throw Error(ErrorCode::DivisionByZero, "coordinate evaluates to zero");
      Rational p = 1;
      for (int e = 0; e < std::abs(a[i]); ++e) p *= values[i];
      t = a[i] > 0 ? Rational(t * p) : Rational(t / p);
    }
    total += t;
  }
  return total;
}

std::string to_string(const TorusElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    const auto& [a, c] = *it;
    std::string mono = "X[";
    for (std::size_t i = 0; i < a.size(); ++i) mono += (i ? "," : "") + std::to_string(a[i]);
    mono += "]";
    std::string coef = text::scalar_prefix(c, true);
    if (!first) {
      if (!coef.empty() && coef[0] == '-') {
        out += " - ";
        coef.erase(0, 1);
      } else {
        out += " + ";
      }
    }
    first = false;
    out += coef + mono;
  }
  return out;
}

TorusElement parse_torus(std::string_view src, FormPtr form) {
  TorusElement out(form);
  const int m = form->rank();
  for (const auto& term : text::parse_expression(src)) {
    TorusElement t = TorusElement::one(form) * term.scalar;
    for (const auto& f : term.factors) {
      if (f.kind != text::Factor::Kind::Torus)
        throw Error(ErrorCode::ParseError, "only X[...] monomials are allowed in torus expressions");
      if (static_cast<int>(f.ints.size()) != m)
        throw Error(ErrorCode::RankMismatch, "monomial length does not match torus rank");
      t = t * TorusElement::monomial(form, f.ints);
    }
    out += t;
  }
  return out;
}

}  // namespace qcluster
