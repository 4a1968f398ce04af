#include "qcluster/qmatrix.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "qcluster/error.hpp"
#include "qcluster/expr_text.hpp"

namespace qcluster {

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (auto c : w) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h ^ w.size();
}

// ---- NCPoly ----------------------------------------------------------------

NCPoly NCPoly::word(Word w, QCoeff c) {
  NCPoly p;
  p.add_term(w, c);
  return p;
}

void NCPoly::add_term(const Word& w, const QCoeff& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(const QCoeff& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

std::optional<long long> qpower_ratio(const NCPoly& p, const NCPoly& r) {
  if (p.size() != r.size()) return std::nullopt;
  if (p.is_zero()) return 0;
  const auto& [w, cp] = *p.terms().begin();
  auto it = r.terms().find(w);
  if (it == r.terms().end()) return std::nullopt;
  QCoeff ratio;
  try {
    ratio = divide_exact(cp, it->second);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!ratio.is_pure_qpow() || !ratio.min_exponent().is_integer()) return std::nullopt;
  if (r * ratio != p) return std::nullopt;
  return ratio.min_exponent().twice / 2;
}

// ---- quantum matrix algebra --------------------------------------------------

namespace {

using Acc = std::map<Word, QCoeff>;

void accumulate(Acc& acc, const Word& w, const QCoeff& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) acc.erase(it);
}

const QCoeff& q_minus_q_inverse() {
  static const QCoeff c = QCoeff::qpow(HalfInt::integer(1)) - QCoeff::qpow(HalfInt::integer(-1));
  return c;
}

}  // namespace

QuantumMatrixAlgebra::QuantumMatrixAlgebra(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1 || rows * cols > 255)
    throw Error(ErrorCode::InvalidParams, "quantum matrix shape out of range");
}

std::uint8_t QuantumMatrixAlgebra::letter(int i, int j) const {
  if (i < 1 || i > rows_ || j < 1 || j > cols_) throw Error(ErrorCode::IndexOutOfRange, "generator out of range");
  return static_cast<std::uint8_t>((i - 1) * cols_ + (j - 1));
}

std::pair<int, int> QuantumMatrixAlgebra::position(std::uint8_t letter) const {
  return {letter / cols_ + 1, letter % cols_ + 1};
}

const std::vector<std::pair<Word, QCoeff>>& QuantumMatrixAlgebra::insert(const Word& w, std::uint8_t x) const {
  Word key = w;
  key.push_back(x);
  {
    std::shared_lock lock(mutex_);
    auto it = insert_memo_.find(key);
    if (it != insert_memo_.end()) return *it->second;
  }
  // w is normal with every letter above x: rewrite the last pair, then reinsert.
  Word prefix(w.begin(), w.end() - 1);
  const std::uint8_t y = w.back();
  auto [r, l] = position(y);
  auto [i, j] = position(x);
  struct Step {
    QCoeff c;
    std::uint8_t a, b;
  };
  std::vector<Step> steps;
  if (r == i || l == j) {
    steps.push_back({QCoeff::qpow(HalfInt::integer(-1)), x, y});
  } else if (l < j) {
    steps.push_back({QCoeff(1), x, y});
  } else {
    steps.push_back({QCoeff(1), x, y});
    steps.push_back({-q_minus_q_inverse(), letter(i, l), letter(r, j)});
  }
  Acc out;
  for (const auto& s : steps) {
    Acc first;
    append(first, prefix, s.a, s.c);
    for (const auto& [u, d] : first) append(out, u, s.b, d);
  }
  auto value = std::make_unique<std::vector<std::pair<Word, QCoeff>>>(out.begin(), out.end());
  std::unique_lock lock(mutex_);
  auto [it, inserted] = insert_memo_.try_emplace(std::move(key), std::move(value));
  return *it->second;
}

// Letters of w not above x are never touched: every rule rewrites b a into
// words whose letters are >= a. Only the tail above x is rewritten.
void QuantumMatrixAlgebra::append(std::map<Word, QCoeff>& out, const Word& w, std::uint8_t x,
                                  const QCoeff& c) const {
  auto split = std::upper_bound(w.begin(), w.end(), x);
  if (split == w.end()) {
    Word v = w;
    v.push_back(x);
    accumulate(out, v, c);
    return;
  }
  for (const auto& [u, d] : insert(Word(split, w.end()), x)) {
    Word v(w.begin(), split);
    v.insert(v.end(), u.begin(), u.end());
    accumulate(out, v, c * d);
  }
}

NCPoly QuantumMatrixAlgebra::normal_form(const Word& w) const {
  Acc cur{{Word{}, QCoeff(1)}};
  for (auto x : w) {
    if (x >= rows_ * cols_) throw Error(ErrorCode::IndexOutOfRange, "letter outside the generator range");
    Acc next;
    for (const auto& [u, c] : cur) {
      append(next, u, x, c);
    }
    cur = std::move(next);
  }
  NCPoly p;
  for (const auto& [u, c] : cur) p.add_term(u, c);
  return p;
}

NCPoly QuantumMatrixAlgebra::normal_form(const NCPoly& p) const {
  NCPoly out;
  for (const auto& [w, c] : p.terms()) out += normal_form(w) * c;
  return out;
}

NCPoly QuantumMatrixAlgebra::multiply(const NCPoly& a, const NCPoly& b) const {
  Acc out;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) {
      Acc cur{{u, cu * cv}};
      for (auto x : v) {
        Acc next;
        for (const auto& [w, c] : cur) {
          append(next, w, x, c);
        }
        cur = std::move(next);
      }
      for (const auto& [w, c] : cur) accumulate(out, w, c);
    }
  NCPoly p;
  for (const auto& [w, c] : out) p.add_term(w, c);
  return p;
}

NCPoly QuantumMatrixAlgebra::rewrite(const Word& w, const std::function<std::size_t(std::size_t)>& pick) const {
  Acc cur{{w, QCoeff(1)}};
  for (;;) {
    auto it = std::find_if(cur.begin(), cur.end(),
                           [](const auto& t) { return !std::is_sorted(t.first.begin(), t.first.end()); });
    if (it == cur.end()) break;
    Word u = it->first;
    QCoeff c = it->second;
    cur.erase(it);
    std::vector<std::size_t> descents;
    for (std::size_t p = 0; p + 1 < u.size(); ++p)
      if (u[p] > u[p + 1]) descents.push_back(p);
    const std::size_t p = descents[pick(descents.size()) % descents.size()];
    auto [r, l] = position(u[p]);
    auto [i, j] = position(u[p + 1]);
    Word swapped = u;
    std::swap(swapped[p], swapped[p + 1]);
    if (r == i || l == j) {
      accumulate(cur, swapped, c * QCoeff::qpow(HalfInt::integer(-1)));
    } else if (l < j) {
      accumulate(cur, swapped, c);
    } else {
      accumulate(cur, swapped, c);
      Word corr = u;
      corr[p] = letter(i, l);
      corr[p + 1] = letter(r, j);
      accumulate(cur, corr, -(c * q_minus_q_inverse()));
    }
  }
  NCPoly out;
  for (const auto& [u, c] : cur) out.add_term(u, c);
  return out;
}

NCPoly QuantumMatrixAlgebra::quantum_minor(const std::vector<int>& rows, const std::vector<int>& cols) const {
  if (rows.size() != cols.size()) throw Error(ErrorCode::SizeMismatch, "minor needs as many rows as columns");
  std::vector<int> perm(rows.size());
  std::iota(perm.begin(), perm.end(), 0);
  NCPoly out;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
      for (std::size_t b = a + 1; b < perm.size(); ++b) inversions += perm[a] > perm[b] ? 1 : 0;
    Word w;
    for (std::size_t t = 0; t < rows.size(); ++t) w.push_back(letter(rows[t], cols[perm[t]]));
    QCoeff c = QCoeff::monomial(Rational(inversions % 2 ? -1 : 1), HalfInt::integer(inversions));
    out += normal_form(w) * c;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

const NCPoly& QuantumMatrixAlgebra::plucker(const KSubset& j) const {
  {
    std::shared_lock lock(mutex_);
    auto it = plucker_cache_.find(j);
    if (it != plucker_cache_.end()) return *it->second;
  }
  if (j.size() != rows_) throw Error(ErrorCode::SizeMismatch, "Plücker label of the wrong size");
  std::vector<int> rows(static_cast<std::size_t>(rows_));
  std::iota(rows.begin(), rows.end(), 1);
  auto value = std::make_unique<NCPoly>(quantum_minor(rows, j.elems));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = plucker_cache_.try_emplace(j, std::move(value));
  return *it->second;
}

std::optional<long long> QuantumMatrixAlgebra::quasi_commutation_exponent(const KSubset& i, const KSubset& j) const {
  const NCPoly& a = plucker(i);
  const NCPoly& b = plucker(j);
  return qpower_ratio(multiply(a, b), multiply(b, a));
}

std::string QuantumMatrixAlgebra::to_string(const NCPoly& p) const {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [w, c] = *it;
    QCoeff shown = c;
    if (!first) {
      if (c.is_monomial() && c.terms().front().second < 0) {
        out += " - ";
        shown = -c;
      } else {
        out += " + ";
      }
    }
    first = false;
    out += text::scalar_prefix(shown, !w.empty());
    for (std::size_t t = 0; t < w.size(); ++t) {
      auto [i, j] = position(w[t]);
      if (t) out += "*";
      out += cols_ <= 9 ? "x" + std::to_string(i) + std::to_string(j)
                        : "x{" + std::to_string(i) + "," + std::to_string(j) + "}";
    }
  }
  return out;
}

// ---- localized Plücker expressions ------------------------------------------

namespace {

bool term_less(const PluckerTerm& a, const PluckerTerm& b) {
  if (a.word != b.word) return a.word < b.word;
  return a.frozen < b.frozen;
}

bool same_key(const PluckerTerm& a, const PluckerTerm& b) { return a.word == b.word && a.frozen == b.frozen; }

void require_context(const ContextPtr& a, const ContextPtr& b) {
  if (!a || !b) throw Error(ErrorCode::AmbientMismatch, "expression without a Grassmannian context");
  if (a != b && (a->k() != b->k() || a->n() != b->n()))
    throw Error(ErrorCode::AmbientMismatch, "expressions over different Grassmannians");
}

// Exponent c with T(a) T(b) = q^c T(a + b).
long long tail_merge_exponent(const PluckerContext& ctx, const std::vector<int>& a, const std::vector<int>& b) {
  long long c = 0;
  const auto& fr = ctx.frozen();
  for (std::size_t j = 0; j < fr.size(); ++j) {
    if (!b[j]) continue;
    for (std::size_t l = j + 1; l < fr.size(); ++l)
      if (a[l]) c += static_cast<long long>(a[l]) * b[j] * scott_lambda(fr[l], fr[j]);
  }
  return c;
}

// Exponent c with T(e) W = q^c W T(e).
long long tail_past_word(const PluckerContext& ctx, const std::vector<int>& e, const std::vector<KSubset>& w) {
  long long c = 0;
  for (std::size_t f = 0; f < e.size(); ++f) {
    if (!e[f]) continue;
    for (const auto& j : w) c -= static_cast<long long>(e[f]) * ctx.frozen_exponent(j, static_cast<int>(f));
  }
  return c;
}

}  // namespace

void LocalizedPluckerExpr::add_term(PluckerTerm t) {
  if (t.coeff.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t, term_less);
  if (it != terms_.end() && same_key(*it, t)) {
    it->coeff += t.coeff;
    if (it->coeff.is_zero()) terms_.erase(it);
    return;
  }
  terms_.insert(it, std::move(t));
}

LocalizedPluckerExpr& LocalizedPluckerExpr::operator+=(const LocalizedPluckerExpr& o) {
  if (!ctx_) ctx_ = o.ctx_;
  if (o.ctx_) require_context(ctx_, o.ctx_);
  for (const auto& t : o.terms_) add_term(t);
  return *this;
}

LocalizedPluckerExpr& LocalizedPluckerExpr::operator-=(const LocalizedPluckerExpr& o) {
  return *this += -o;
}

LocalizedPluckerExpr& LocalizedPluckerExpr::operator*=(const QCoeff& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

LocalizedPluckerExpr LocalizedPluckerExpr::operator-() const {
  LocalizedPluckerExpr out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

LocalizedPluckerExpr operator*(const LocalizedPluckerExpr& a, const LocalizedPluckerExpr& b) {
  require_context(a.ctx_, b.ctx_);
  const PluckerContext& ctx = *a.ctx_;
  LocalizedPluckerExpr out(a.ctx_);
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      PluckerTerm t;
      long long c = tail_past_word(ctx, ta.frozen, tb.word) + tail_merge_exponent(ctx, ta.frozen, tb.frozen);
      t.coeff = (ta.coeff * tb.coeff).shift(HalfInt::integer(c));
      t.word = ta.word;
      t.word.insert(t.word.end(), tb.word.begin(), tb.word.end());
      t.frozen.resize(ta.frozen.size());
      for (std::size_t f = 0; f < t.frozen.size(); ++f) t.frozen[f] = ta.frozen[f] + tb.frozen[f];
      out.add_term(std::move(t));
    }
  return out;
}

bool operator==(const LocalizedPluckerExpr& a, const LocalizedPluckerExpr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!same_key(a.terms_[i], b.terms_[i]) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

PluckerContext::PluckerContext(int k, int n)
    : k_(k), n_(n), frozen_(frozen_subsets(k, n)), algebra_(std::make_unique<QuantumMatrixAlgebra>(k, n)) {}

std::shared_ptr<PluckerContext> PluckerContext::create(int k, int n) {
  if (k < 1 || n <= k) throw Error(ErrorCode::InvalidParams, "need 1 <= k < n");
  return std::shared_ptr<PluckerContext>(new PluckerContext(k, n));
}

int PluckerContext::frozen_index(const KSubset& j) const {
  auto it = std::find(frozen_.begin(), frozen_.end(), j);
  return it == frozen_.end() ? -1 : static_cast<int>(it - frozen_.begin());
}

long long PluckerContext::frozen_exponent(const KSubset& i, int f) const {
  return scott_lambda(i, frozen_.at(static_cast<std::size_t>(f)));
}

void PluckerContext::define(const std::string& name, LocalizedPluckerExpr value) {
  names_.insert_or_assign(name, std::move(value));
}

const LocalizedPluckerExpr* PluckerContext::lookup(const std::string& name) const {
  auto it = names_.find(name);
  return it == names_.end() ? nullptr : &it->second;
}

LocalizedPluckerExpr PluckerContext::scalar(const QCoeff& c) const {
  LocalizedPluckerExpr out(shared_from_this());
  out.add_term({c, {}, std::vector<int>(static_cast<std::size_t>(n_), 0)});
  return out;
}

LocalizedPluckerExpr PluckerContext::plucker(const KSubset& j) const {
  if (j.size() != k_ || j.elems.back() > n_) throw Error(ErrorCode::AmbientMismatch, to_string(j) + " is not a label");
  int f = frozen_index(j);
  if (f >= 0) return frozen_power(f, 1);
  LocalizedPluckerExpr out(shared_from_this());
  out.add_term({QCoeff(1), {j}, std::vector<int>(static_cast<std::size_t>(n_), 0)});
  return out;
}

LocalizedPluckerExpr PluckerContext::frozen_power(int f, int e) const {
  std::vector<int> tail(static_cast<std::size_t>(n_), 0);
  tail.at(static_cast<std::size_t>(f)) = e;
  LocalizedPluckerExpr out(shared_from_this());
  out.add_term({QCoeff(1), {}, std::move(tail)});
  return out;
}

LocalizedPluckerExpr inverse(const LocalizedPluckerExpr& x) {
  if (x.terms().size() != 1 || !x.terms()[0].word.empty() || !x.terms()[0].coeff.is_monomial())
    throw Error(ErrorCode::NotInvertible, "only frozen monomials are invertible: " + to_string(x));
  const auto& t = x.terms()[0];
  std::vector<int> neg(t.frozen.size());
  for (std::size_t f = 0; f < neg.size(); ++f) neg[f] = -t.frozen[f];
  // T(e) T(-e) = q^c, so T(e)^{-1} = q^{-c} T(-e).
  long long c = tail_merge_exponent(*x.context(), t.frozen, neg);
  LocalizedPluckerExpr out(x.context());
  out.add_term({inverse(t.coeff).shift(HalfInt::integer(-c)), {}, std::move(neg)});
  return out;
}

LocalizedPluckerExpr power(const LocalizedPluckerExpr& x, int e) {
  if (e < 0) return power(inverse(x), -e);
  LocalizedPluckerExpr out = x.context()->scalar(QCoeff(1));
  for (int i = 0; i < e; ++i) out = out * x;
  return out;
}

namespace {

NCPoly numerator_with(const LocalizedPluckerExpr& e, const std::vector<int>& shift) {
  const PluckerContext& ctx = *e.context();
  const QuantumMatrixAlgebra& alg = ctx.algebra();
  NCPoly out;
  for (const auto& t : e.terms()) {
    std::vector<int> rest(t.frozen.size());
    for (std::size_t f = 0; f < rest.size(); ++f) rest[f] = t.frozen[f] - shift[f];
    // T(e) = q^{-c} T(e - E) T(E) with T(e - E) T(E) = q^c T(e).
    long long c = tail_merge_exponent(ctx, rest, shift);
    NCPoly acc = NCPoly::word({}, t.coeff.shifted(HalfInt::integer(-c)));
    for (const auto& j : t.word) acc = alg.multiply(acc, alg.plucker(j));
    for (std::size_t f = 0; f < rest.size(); ++f)
      for (int r = 0; r < rest[f]; ++r) acc = alg.multiply(acc, alg.plucker(ctx.frozen()[f]));
    out += acc;
  }
  return out;
}

std::vector<int> tail_minimum(std::initializer_list<const LocalizedPluckerExpr*> exprs, std::size_t n) {
  std::vector<int> m(n, 0);
  for (const auto* e : exprs)
    for (const auto& t : e->terms())
      for (std::size_t f = 0; f < n; ++f) m[f] = std::min(m[f], t.frozen[f]);
  return m;
}

}  // namespace

std::pair<NCPoly, std::vector<int>> plucker_to_ncpoly(const LocalizedPluckerExpr& e) {
  auto shift = tail_minimum({&e}, static_cast<std::size_t>(e.context()->n()));
  return {numerator_with(e, shift), shift};
}

bool expr_equal(const LocalizedPluckerExpr& a, const LocalizedPluckerExpr& b) {
  require_context(a.context(), b.context());
  return plucker_to_ncpoly(a - b).first.is_zero();
}

std::optional<long long> expr_q_commutation(const LocalizedPluckerExpr& a, const LocalizedPluckerExpr& b) {
  require_context(a.context(), b.context());
  LocalizedPluckerExpr ab = a * b, ba = b * a;
  auto shift = tail_minimum({&ab, &ba}, static_cast<std::size_t>(a.context()->n()));
  return qpower_ratio(numerator_with(ab, shift), numerator_with(ba, shift));
}

namespace {

// c with T(e) x = q^c x T(e) when every term of x gives the same c.
std::optional<long long> frozen_commutation(const PluckerContext& ctx, const std::vector<int>& e,
                                            const LocalizedPluckerExpr& x) {
  std::optional<long long> c;
  for (const auto& t : x.terms()) {
    long long v = tail_past_word(ctx, e, t.word) + tail_merge_exponent(ctx, e, t.frozen) -
                  tail_merge_exponent(ctx, t.frozen, e);
    if (c && *c != v) return std::nullopt;
    c = v;
  }
  return c.value_or(0);
}

bool is_frozen_monomial(const LocalizedPluckerExpr& x) {
  return x.terms().size() == 1 && x.terms()[0].word.empty();
}

}  // namespace

LocalizedPluckerExpr bracket(const std::vector<BracketFactor>& factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidParams, "empty bracket");
  const ContextPtr& ctx = factors.front().value.context();
  long long twice = 0;  // exponent of q^{1/2} in the prefactor
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      const auto& a = factors[i].value;
      const auto& b = factors[j].value;
      std::optional<long long> c;
      if (is_frozen_monomial(a)) c = frozen_commutation(*ctx, a.terms()[0].frozen, b);
      else if (is_frozen_monomial(b)) {
        c = frozen_commutation(*ctx, b.terms()[0].frozen, a);
        if (c) c = -*c;
      } else {
        c = expr_q_commutation(a, b);
      }
      if (!c)
        throw Error(ErrorCode::NotQuasiCommuting, to_string(a) + " and " + to_string(b) + " do not q-commute");
      twice -= static_cast<long long>(factors[i].exp) * factors[j].exp * *c;
    }
  LocalizedPluckerExpr out = ctx->scalar(QCoeff::qpow(HalfInt::from_twice(twice)));
  for (const auto& f : factors) out = out * power(f.value, f.exp);
  return out;
}

std::string to_string(const LocalizedPluckerExpr& e) {
  if (e.is_zero()) return "0";
  const auto& fr = e.context()->frozen();
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    QCoeff shown = t.coeff;
    if (!first) {
      if (t.coeff.is_monomial() && t.coeff.terms().front().second < 0) {
        out += " - ";
        shown = -t.coeff;
      } else {
        out += " + ";
      }
    }
    first = false;
    std::vector<std::string> parts;
    for (const auto& j : t.word) parts.push_back(to_string(j));
    for (std::size_t f = 0; f < fr.size(); ++f) {
      if (!t.frozen[f]) continue;
      parts.push_back(to_string(fr[f]) + (t.frozen[f] == 1 ? "" : "^" + std::to_string(t.frozen[f])));
    }
    out += text::scalar_prefix(shown, !parts.empty());
    for (std::size_t p = 0; p < parts.size(); ++p) out += (p ? "*" : "") + parts[p];
  }
  return out;
}

namespace {

LocalizedPluckerExpr factor_base(const text::Factor& f, const ContextPtr& ctx) {
  switch (f.kind) {
    case text::Factor::Kind::Plucker:
      return ctx->plucker(make_subset(f.ints, ctx->n()));
    case text::Factor::Kind::Name: {
      const auto* v = ctx->lookup(f.name);
      if (!v) throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + f.name + "'");
      return *v;
    }
    case text::Factor::Kind::Bracket: {
      std::vector<BracketFactor> inner;
      for (const auto& g : f.inner) inner.push_back({factor_base(g, ctx), g.exp});
      return bracket(inner);
    }
    case text::Factor::Kind::Torus:
      break;
  }
  throw Error(ErrorCode::ParseError, "torus monomials are not Plücker expressions");
}

}  // namespace

LocalizedPluckerExpr parse_plucker_expr(std::string_view text, const ContextPtr& ctx) {
  LocalizedPluckerExpr out(ctx);
  for (const auto& term : text::parse_expression(text)) {
    LocalizedPluckerExpr acc = ctx->scalar(term.scalar);
    for (const auto& f : term.factors) {
      LocalizedPluckerExpr base = factor_base(f, ctx);
      acc = acc * (f.kind == text::Factor::Kind::Bracket ? base : power(base, f.exp));
    }
    out += acc;
  }
  return out;
}

Rational evaluate_classical(const LocalizedPluckerExpr& e, const std::function<Rational(const KSubset&)>& minors) {
  const auto& fr = e.context()->frozen();
  std::vector<Rational> frozen_values;
  for (const auto& f : fr) frozen_values.push_back(minors(f));
  Rational total = 0;
  for (const auto& t : e.terms()) {
    Rational v = t.coeff.at_one();
    for (const auto& j : t.word) v *= minors(j);
    for (std::size_t f = 0; f < fr.size(); ++f)
      for (int r = 0; r < std::abs(t.frozen[f]); ++r) {
        if (t.frozen[f] > 0) v *= frozen_values[f];
        else v /= frozen_values[f];
      }
    total += v;
  }
  return total;
}

}  // namespace qcluster
