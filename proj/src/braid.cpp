#include "qcluster/braid.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

#include "qcluster/error.hpp"
#include "qcluster/parallel.hpp"

namespace qcluster {

namespace {

TorusElement rebase(const TorusElement& x, const FormPtr& form) {
  TorusElement out(form);
  for (const auto& [a, c] : x.terms()) out.add_term(a, c);
  return out;
}

QuantumSeed rebase(const QuantumSeed& s, const FormPtr& ambient) {
  std::vector<TorusElement> frame;
  for (const auto& f : s.frame()) frame.push_back(rebase(f, ambient));
  return s.with_frame(std::move(frame), ambient);
}

std::vector<ExpVec> shape_key(const TorusElement& x) {
  const ExpVec& lead = x.leading().first;
  std::vector<ExpVec> key;
  for (const auto& [a, c] : x.terms()) {
    ExpVec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - lead[i];
    key.push_back(std::move(d));
  }
  return key;
}

int gcd_d(int k, int n) { return std::gcd(k, n); }

void check_generator(int k, int n, int i) {
  const int d = gcd_d(k, n);
  if (d < 2 || i < 1 || i > d - 1)
    throw Error(ErrorCode::InvalidParams, "σ_" + std::to_string(i) + " needs 1 <= i <= gcd(k,n)-1 = " +
                                              std::to_string(d - 1));
}

QCoeff half_qpow(long long twice) { return QCoeff::qpow(HalfInt::from_twice(twice)); }

}  // namespace

std::shared_ptr<PluckerContext> make_grassmann_context(int k, int n) {
  auto ctx = PluckerContext::create(k, n);
  if (k == 3 && n == 6) {
    ctx->define("y", parse_plucker_expr("q^{-3/2}*(D(1,2,4) D(3,5,6) - q^-1 D(1,2,3) D(4,5,6))", ctx));
    ctx->define("z", parse_plucker_expr("q^{-1/2}*(D(1,4,5) D(2,3,6) - q^-2 D(1,2,3) D(4,5,6))", ctx));
  }
  return ctx;
}

// ---- catalog ----------------------------------------------------------------

int VariableCatalog::add(CatalogEntry e) {
  const int idx = static_cast<int>(entries_.size());
  if (e.label) by_label_[*e.label] = idx;
  by_name_[e.name] = idx;
  by_torus_.emplace(e.torus, idx);
  if (e.frozen < 0) by_shape_[shape_key(e.torus)].push_back(idx);
  entries_.push_back(std::move(e));
  return idx;
}

std::shared_ptr<const VariableCatalog> VariableCatalog::build(ContextPtr ctx, Scope scope, std::size_t max_seeds) {
  std::shared_ptr<VariableCatalog> cat(new VariableCatalog(rectangles_seed(ctx->k(), ctx->n())));
  cat->scope_ = scope;
  cat->ctx_ = ctx;
  const GrassmannSeed& rect = cat->rect_;
  const int nm = rect.seed.n_mutable();
  PluckerLabeler labeler(rect, 0xca7a1094ULL + static_cast<std::uint64_t>(ctx->k() * 100 + ctx->n()));

  for (int f = 0; f < static_cast<int>(ctx->frozen().size()); ++f) {
    const int pos = nm + f;
    cat->frozen_pos_.push_back(pos);
    const KSubset& lab = ctx->frozen()[static_cast<std::size_t>(f)];
    cat->add({to_string(lab), lab, f, rect.seed.frame()[static_cast<std::size_t>(pos)], ctx->plucker(lab)});
  }

  if (scope == Scope::AllClusterVariables) {
    ExchangeGraph g = enumerate_exchange_graph(rect.seed, max_seeds, [&](const TorusElement& x) {
      auto s = labeler(x);
      return s ? to_string(*s) : std::string();
    });
    for (std::size_t v = 0; v < g.variables.size(); ++v) {
      auto lab = labeler(g.variables[v]);
      CatalogEntry e{g.variable_labels[v], lab, -1, g.variables[v], std::nullopt};
      if (lab) e.expr = ctx->plucker(*lab);
      cat->graph_entry_.push_back(cat->add(std::move(e)));
    }
    cat->graph_ = std::move(g);
  } else {
    // Plücker clusters only; every k-subset sits in one of them.
    std::size_t wanted = 0;
    for (const auto& j : all_subsets(ctx->k(), ctx->n())) wanted += ctx->frozen_index(j) < 0 ? 1 : 0;
    std::set<KSubset> found;
    auto note = [&](const KSubset& lab, const TorusElement& x) {
      if (found.insert(lab).second) cat->add({to_string(lab), lab, -1, x, ctx->plucker(lab)});
    };
    std::deque<std::pair<QuantumSeed, std::vector<KSubset>>> queue;
    std::set<std::vector<KSubset>> seen;
    auto key = [&](std::vector<KSubset> labels) {
      std::sort(labels.begin(), labels.begin() + nm);
      return labels;
    };
    for (int p = 0; p < nm; ++p) note(rect.labels[static_cast<std::size_t>(p)], rect.seed.frame()[static_cast<std::size_t>(p)]);
    queue.emplace_back(rect.seed, rect.labels);
    seen.insert(key(rect.labels));
    while (!queue.empty() && found.size() < wanted) {
      auto [seed, labels] = std::move(queue.front());
      queue.pop_front();
      for (int p = 0; p < nm && found.size() < wanted; ++p) {
        QuantumSeed next = mutate(seed, p);
        auto lab = labeler(next.frame()[static_cast<std::size_t>(p)]);
        if (!lab) continue;
        auto l2 = labels;
        l2[static_cast<std::size_t>(p)] = *lab;
        if (!seen.insert(key(l2)).second) continue;
        if (seen.size() > max_seeds) throw Error(ErrorCode::BoundExceeded, "Plücker cluster search exceeded its bound");
        note(*lab, next.frame()[static_cast<std::size_t>(p)]);
        queue.emplace_back(std::move(next), std::move(l2));
      }
    }
    if (found.size() < wanted) throw Error(ErrorCode::BoundExceeded, "some Plücker coordinates were not reached");
  }

  // Named variables are matched to the enumerated ones by their torus form.
  for (const auto& [name, value] : ctx->names()) {
    TorusElement t = cat->torus_of(value);
    int idx = cat->index_of(t);
    if (idx >= 0 && !cat->entries_[static_cast<std::size_t>(idx)].label) {
      auto& e = cat->entries_[static_cast<std::size_t>(idx)];
      cat->by_name_.erase(e.name);
      e.name = name;
      e.expr = value;
      cat->by_name_[name] = idx;
    } else if (idx < 0) {
      cat->add({name, std::nullopt, -1, std::move(t), value});
    }
  }
  return cat;
}

int VariableCatalog::index_of(const KSubset& j) const {
  auto it = by_label_.find(j);
  return it == by_label_.end() ? -1 : it->second;
}

int VariableCatalog::index_of(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

int VariableCatalog::index_of(const TorusElement& x) const {
  auto it = by_torus_.find(x);
  return it == by_torus_.end() ? -1 : it->second;
}

std::optional<std::pair<int, Proportionality>> VariableCatalog::factor(const TorusElement& x) const {
  if (x.is_zero()) return std::nullopt;
  if (x.is_monomial()) {
    const auto& [a, c] = x.leading();
    std::vector<bool> frozen(a.size(), false);
    for (int p : frozen_pos_) frozen[static_cast<std::size_t>(p)] = true;
    bool ok = c.is_pure_qpow();
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = frozen[i] || a[i] == 0;
    if (ok) return std::pair{-1, Proportionality{static_cast<int>(c.min_exponent().twice), a}};
  }
  auto it = by_shape_.find(shape_key(x));
  if (it == by_shape_.end()) return std::nullopt;
  for (int idx : it->second)
    if (auto p = proportional(x, entries_[static_cast<std::size_t>(idx)].torus, frozen_pos_))
      return std::pair{idx, std::move(*p)};
  return std::nullopt;
}

TorusElement VariableCatalog::torus_of(const LocalizedPluckerExpr& e) const {
  const FormPtr& form = rect_.seed.form();
  TorusElement out(form);
  for (const auto& t : e.terms()) {
    TorusElement acc = TorusElement::monomial(form, ExpVec(static_cast<std::size_t>(form->rank()), 0), t.coeff);
    for (const auto& j : t.word) {
      int idx = index_of(j);
      if (idx < 0) throw Error(ErrorCode::UnknownSymbol, to_string(j) + " is not in the catalog");
      acc = acc * entries_[static_cast<std::size_t>(idx)].torus;
    }
    for (std::size_t f = 0; f < t.frozen.size(); ++f)
      if (t.frozen[f] != 0) acc = acc * power(TorusElement::generator(form, frozen_pos_[f]), t.frozen[f]);
    out += acc;
  }
  return out;
}

// ---- generators -------------------------------------------------------------

BraidWord parse_braid_word(std::string_view text) {
  BraidWord w;
  std::size_t p = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError, "braid word \"" + std::string(text) + "\": " + why);
  };
  auto skip = [&] {
    while (p < text.size() && (std::isspace(static_cast<unsigned char>(text[p])) || text[p] == '*')) ++p;
  };
  auto number = [&] {
    std::size_t start = p;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    if (start == p) fail("expected a number at position " + std::to_string(start));
    return std::stoi(std::string(text.substr(start, p - start)));
  };
  skip();
  while (p < text.size()) {
    if (text[p] != 's') fail("expected 's' at position " + std::to_string(p));
    ++p;
    BraidGenerator g{number(), 1};
    if (p < text.size() && text[p] == '^') {
      ++p;
      bool brace = p < text.size() && text[p] == '{';
      if (brace) ++p;
      if (p < text.size() && text[p] == '-') {
        ++p;
        g.sign = -1;
      }
      if (number() != 1) fail("only exponents 1 and -1 are supported");
      if (brace) {
        if (p >= text.size() || text[p] != '}') fail("missing '}'");
        ++p;
      }
    }
    if (g.i < 1) fail("generator index must be positive");
    w.push_back(g);
    skip();
  }
  return w;
}

std::string to_string(const BraidWord& w) {
  std::string out;
  for (const auto& g : w) {
    if (!out.empty()) out += ' ';
    out += "s" + std::to_string(g.i) + (g.sign < 0 ? "^-1" : "");
  }
  return out;
}

std::vector<int> sigma_bar(int n, int d, int i) {
  if (d < 2 || n % d != 0 || i < 1 || i > d - 1)
    throw Error(ErrorCode::InvalidParams, "σ̄ needs d | n and 1 <= i <= d-1");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  for (int j = 0; j < n / d; ++j) std::swap(perm[static_cast<std::size_t>(j * d + i - 1)], perm[static_cast<std::size_t>(j * d + i)]);
  return perm;
}

KSubset permute_subset(const std::vector<int>& perm, const KSubset& s) {
  std::vector<int> e;
  for (int x : s.elems) e.push_back(perm.at(static_cast<std::size_t>(x - 1)));
  return make_subset(std::move(e), static_cast<int>(perm.size()));
}

QuasiHomData R_sigma(int k, int n, int i) {
  check_generator(k, n, i);
  const int d = gcd_d(k, n);
  const int nm = (k - 1) * (n - k - 1);
  IntMatrix L = IntMatrix::Identity(n, n);
  for (int f = 0; f < n; ++f) {
    const int j = f + 1;
    if ((j - (i + 1)) % d != 0) continue;
    L(f, f) = -1;
    L((f + n - 1) % n, f) = 1;
    L((f + 1) % n, f) = 1;
  }
  return build_R(IntMatrix::Zero(n, nm), L);
}

std::map<KSubset, LocalizedPluckerExpr> sigma_base_images(const ContextPtr& ctx, int i) {
  const int k = ctx->k(), n = ctx->n();
  check_generator(k, n, i);
  const int d = gcd_d(k, n);
  const auto perm = sigma_bar(n, d, i);
  std::map<KSubset, LocalizedPluckerExpr> out;
  for (auto p : mutable_grid(k, n)) {
    KSubset lab = xi_label(p, k, n, i);
    out.emplace(lab, ctx->plucker(permute_subset(perm, lab)));
  }
  const auto& fr = ctx->frozen();
  for (int f = 0; f < n; ++f) {
    const int j = f + 1;
    if ((j - (i + 1)) % d != 0) {
      out.emplace(fr[static_cast<std::size_t>(f)], ctx->frozen_power(f, 1));
    } else {
      out.emplace(fr[static_cast<std::size_t>(f)],
                  bracket({{ctx->frozen_power((f + n - 1) % n, 1), 1}, {ctx->frozen_power(f, 1), -1},
                           {ctx->frozen_power((f + 1) % n, 1), 1}}));
    }
  }
  return out;
}

SigmaSeeds sigma_seeds(int k, int n, int i) {
  check_generator(k, n, i);
  GrassmannSeed source = x_i_seed(k, n, i);
  const auto perm = sigma_bar(n, gcd_d(k, n), i);
  std::vector<KSubset> labels;
  for (int p = 0; p < source.seed.n_mutable(); ++p)
    labels.push_back(permute_subset(perm, source.labels[static_cast<std::size_t>(p)]));
  GrassmannSeed target = plucker_seed(k, n, labels);
  return {std::move(source), std::move(target), R_sigma(k, n, i)};
}

// ---- tables -----------------------------------------------------------------

const SigmaImage* SigmaTable::find(int entry) const {
  auto it = images.find(entry);
  return it == images.end() ? nullptr : &it->second;
}

const LocalizedPluckerExpr& SigmaTable::plucker_image(const KSubset& j) const {
  const int idx = catalog->index_of(j);
  const SigmaImage* img = idx < 0 ? nullptr : find(idx);
  if (!img) throw Error(ErrorCode::UnknownSymbol, "no σ image tabulated for " + to_string(j));
  if (!img->expr)
    throw Error(ErrorCode::UnknownSymbol, "σ image of " + to_string(j) + " has no Plücker expansion");
  return *img->expr;
}

namespace {

// The bar-invariant bracket [X^p w] in the rectangles torus and its text.
std::pair<TorusElement, std::string> bracket_of(const VariableCatalog& cat, const ExpVec& p, int target) {
  const FormPtr& form = cat.rect().seed.form();
  std::vector<WordFactor> factors;
  std::string text;
  auto add_text = [&](const std::string& s) { text += (text.empty() ? "" : " ") + s; };
  for (std::size_t f = 0; f < cat.frozen_positions().size(); ++f) {
    const int pos = cat.frozen_positions()[f];
    const int e = p[static_cast<std::size_t>(pos)];
    if (e == 0) continue;
    factors.push_back({TorusElement::generator(form, pos), e});
    add_text(to_string(cat.context()->frozen()[f]) + (e == 1 ? "" : "^" + std::to_string(e)));
  }
  if (target >= 0) {
    factors.push_back({cat.entries()[static_cast<std::size_t>(target)].torus, 1});
    add_text(cat.entries()[static_cast<std::size_t>(target)].name);
  }
  if (factors.empty()) return {TorusElement::one(form), "1"};
  TorusElement t = normalized_from_word(factors);
  if (factors.size() > 1 || factors.front().exp != 1) text = "[" + text + "]";
  return {std::move(t), std::move(text)};
}

SigmaImage make_image(const VariableCatalog& cat, TorusElement torus, int target, Proportionality factor) {
  SigmaImage img{std::move(torus), target, std::move(factor), std::nullopt};
  const auto& ctx = cat.context();
  std::optional<LocalizedPluckerExpr> tail;
  if (target < 0) tail = ctx->scalar(QCoeff(1));
  else tail = cat.entries()[static_cast<std::size_t>(target)].expr;
  if (!tail) return img;
  std::vector<BracketFactor> fs;
  for (std::size_t f = 0; f < cat.frozen_positions().size(); ++f) {
    const int e = img.factor.p[static_cast<std::size_t>(cat.frozen_positions()[f])];
    if (e != 0) fs.push_back({ctx->frozen_power(static_cast<int>(f), 1), e});
  }
  LocalizedPluckerExpr pre = fs.empty() ? ctx->scalar(QCoeff(1)) : bracket(fs);
  img.expr = half_qpow(img.factor.twice_ell) * (pre * *tail);
  return img;
}

}  // namespace

std::string SigmaTable::render(int entry) const {
  const SigmaImage* img = find(entry);
  if (!img) throw Error(ErrorCode::UnknownSymbol, "no σ image tabulated for entry " + std::to_string(entry));
  auto [t, text] = bracket_of(*catalog, img->factor.p, img->target);
  QCoeff ratio = divide_exact(img->torus.leading().second, t.leading().second);
  if (ratio.is_one()) return text;
  return "q^{" + to_string(ratio.min_exponent()) + "}*" + text;
}

SigmaTable extend_sigma_table(const CatalogPtr& catalog, int i, std::size_t max_seeds) {
  const int k = catalog->k(), n = catalog->n();
  SigmaSeeds ss = sigma_seeds(k, n, i);
  const FormPtr& ambient = catalog->rect().seed.form();
  QuantumSeed src = rebase(ss.source.seed, ambient);
  QuantumSeed target = rebase(ss.target.seed, ambient);
  const int m = src.rank(), nm = src.n_mutable();

  SigmaTable table;
  table.i = i;
  table.sign = 1;
  table.catalog = catalog;
  table.L = ss.R.L;

  // Base images f(x_j) = X'^{r_j} over the image seed.
  std::vector<TorusElement> base;
  for (int j = 0; j < m; ++j) {
    ExpVec r(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) r[static_cast<std::size_t>(t)] = static_cast<int>(ss.R.R(t, j));
    base.push_back(frame_monomial(target, r));
  }
  QuantumSeed shadow = src.with_frame(std::move(base), ambient);

  std::set<int> attempted;
  auto record = [&](int entry, const TorusElement& image) {
    if (entry < 0) return;
    attempted.insert(entry);
    if (const SigmaImage* old = table.find(entry)) {
      if (!(old->torus == image))
        throw Error(ErrorCode::FactorizationFailed,
                    "σ image of " + catalog->entries()[static_cast<std::size_t>(entry)].name + " depends on the path");
      return;
    }
    auto f = catalog->factor(image);
    if (!f && catalog->scope() == VariableCatalog::Scope::PluckerOnly) return;
    if (!f)
      throw Error(ErrorCode::FactorizationFailed, "σ image of " + catalog->entries()[static_cast<std::size_t>(entry)].name +
                                                      " is not a frozen monomial times a known variable: " +
                                                      to_string(image));
    table.images.emplace(entry, make_image(*catalog, image, f->first, std::move(f->second)));
  };
  auto entry_of = [&](const TorusElement& x) {
    int e = catalog->index_of(x);
    if (e < 0 && catalog->scope() == VariableCatalog::Scope::AllClusterVariables)
      throw Error(ErrorCode::FactorizationFailed, "cluster variable missing from the catalog: " + to_string(x));
    return e;
  };

  for (int p = 0; p < m; ++p) record(entry_of(src.frame()[static_cast<std::size_t>(p)]), shadow.frame()[static_cast<std::size_t>(p)]);

  const bool full = catalog->scope() == VariableCatalog::Scope::AllClusterVariables;
  std::deque<std::pair<QuantumSeed, QuantumSeed>> queue;
  std::set<std::vector<TorusElement>> seen;
  queue.emplace_back(src, shadow);
  seen.insert(cluster_key(src));
  auto done = [&] { return !full && attempted.size() == catalog->entries().size(); };
  while (!queue.empty() && !done()) {
    auto [s, sh] = std::move(queue.front());
    queue.pop_front();
    for (int p = 0; p < nm; ++p) {
      QuantumSeed s2 = mutate(s, p);
      const int e = entry_of(s2.frame()[static_cast<std::size_t>(p)]);
      if (e < 0) continue;
      QuantumSeed sh2 = mutate(sh, p);
      record(e, sh2.frame()[static_cast<std::size_t>(p)]);
      if (!seen.insert(cluster_key(s2)).second) continue;
      if (seen.size() > max_seeds) {
        // Plücker-only tables may stay partial; unknown images surface as
        // UnknownSymbol when used.
        if (!full) return table;
        throw Error(ErrorCode::BoundExceeded, "σ replay exceeded its bound");
      }
      queue.emplace_back(std::move(s2), std::move(sh2));
    }
  }
  return table;
}

SigmaTable invert_sigma(const SigmaTable& table) {
  const auto& cat = *table.catalog;
  const FormPtr& form = cat.rect().seed.form();
  const auto& fpos = cat.frozen_positions();
  const int m = form->rank();
  SigmaTable inv;
  inv.i = table.i;
  inv.sign = -table.sign;
  inv.catalog = table.catalog;
  inv.L = table.L;  // L² = I
  auto frozen_map = [&](const ExpVec& p) {
    // X^p ↦ X^{Lp} on frozen monomials (L is its own inverse)
    ExpVec out(static_cast<std::size_t>(m), 0);
    for (std::size_t r = 0; r < fpos.size(); ++r) {
      long long s = 0;
      for (std::size_t c = 0; c < fpos.size(); ++c)
        s += table.L(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * p[static_cast<std::size_t>(fpos[c])];
      out[static_cast<std::size_t>(fpos[r])] = static_cast<int>(s);
    }
    return out;
  };
  for (const auto& [u, img] : table.images) {
    const auto& eu = cat.entries()[static_cast<std::size_t>(u)];
    if (img.target < 0) {
      if (eu.frozen < 0) throw Error(ErrorCode::NotBijective, "a cluster variable maps to a frozen monomial");
      ExpVec e(static_cast<std::size_t>(m), 0);
      e[static_cast<std::size_t>(fpos[static_cast<std::size_t>(eu.frozen)])] = 1;
      ExpVec a = frozen_map(e);
      inv.images.emplace(u, make_image(cat, TorusElement::monomial(form, a), -1, Proportionality{0, a}));
      continue;
    }
    const int w = img.target;
    if (inv.images.count(w))
      throw Error(ErrorCode::NotBijective, "two variables map onto " + cat.entries()[static_cast<std::size_t>(w)].name);
    ExpVec neg = frozen_map(img.factor.p);
    for (auto& x : neg) x = -x;
    TorusElement t = TorusElement::monomial(form, neg, half_qpow(-img.factor.twice_ell)) * eu.torus;
    auto f = proportional(t, eu.torus, fpos);
    if (!f) throw Error(ErrorCode::FactorizationFailed, "inverse image of " + cat.entries()[static_cast<std::size_t>(w)].name);
    inv.images.emplace(w, make_image(cat, std::move(t), u, std::move(*f)));
  }
  return inv;
}

const SigmaTable& SigmaCache::get(int i, int sign) {
  std::lock_guard lock(mutex_);
  auto key = std::pair{i, sign};
  auto it = tables_.find(key);
  if (it != tables_.end()) return *it->second;
  std::unique_ptr<SigmaTable> t;
  if (sign > 0) t = std::make_unique<SigmaTable>(extend_sigma_table(catalog_, i));
  else t = std::make_unique<SigmaTable>(invert_sigma(get(i, 1)));
  return *tables_.emplace(key, std::move(t)).first->second;
}

namespace {

LocalizedPluckerExpr apply_one(const SigmaTable& t, const LocalizedPluckerExpr& x) {
  const auto& ctx = x.context();
  LocalizedPluckerExpr out(ctx);
  const auto& fr = ctx->frozen();
  for (const auto& term : x.terms()) {
    LocalizedPluckerExpr acc = ctx->scalar(term.coeff);
    for (const auto& j : term.word) acc = acc * t.plucker_image(j);
    for (std::size_t f = 0; f < term.frozen.size(); ++f)
      if (term.frozen[f] != 0) acc = acc * power(t.plucker_image(fr[f]), term.frozen[f]);
    out += acc;
  }
  return out;
}

}  // namespace

LocalizedPluckerExpr apply_sigma(const BraidWord& word, const LocalizedPluckerExpr& x, SigmaCache& cache) {
  LocalizedPluckerExpr cur = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = apply_one(cache.get(it->i, it->sign), cur);
  return cur;
}

// ---- verification -----------------------------------------------------------

std::vector<Relation> relation_corpus(const CatalogPtr& catalog) {
  const auto& ctx = catalog->context();
  std::vector<Relation> out;
  const auto labels = all_subsets(ctx->k(), ctx->n());
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b) {
      const auto &I = labels[a], &J = labels[b];
      if (ctx->frozen_index(I) >= 0 && ctx->frozen_index(J) >= 0) continue;
      if (!weakly_separated(I, J)) continue;
      const long long c = scott_lambda(I, J);
      out.push_back({to_string(I) + "*" + to_string(J) + " = q^" + std::to_string(c) + " " + to_string(J) + "*" +
                         to_string(I),
                     "quasi-commutation", ctx->plucker(I) * ctx->plucker(J),
                     half_qpow(2 * c) * (ctx->plucker(J) * ctx->plucker(I))});
    }
  if (!catalog->graph()) return out;
  const ExchangeGraph& g = *catalog->graph();
  const auto& ent = catalog->entries();
  const auto& ids = catalog->graph_entry();
  std::set<std::pair<int, int>> done;
  for (std::size_t s = 0; s < g.seeds.size(); ++s) {
    const QuantumSeed& seed = g.seeds[s];
    const int nm = seed.n_mutable(), m = seed.rank();
    // catalog entry at every position of this seed
    std::vector<int> at(static_cast<std::size_t>(m));
    for (int p = 0; p < nm; ++p) at[static_cast<std::size_t>(p)] = ids[static_cast<std::size_t>(g.var_ids[s][static_cast<std::size_t>(p)])];
    for (int p = nm; p < m; ++p) at[static_cast<std::size_t>(p)] = p - nm;  // frozen entries come first in the catalog
    for (int k = 0; k < nm; ++k) {
      const int t = g.neighbors[s][static_cast<std::size_t>(k)];
      const int x = at[static_cast<std::size_t>(k)];
      int xp = -1;
      for (int v : g.var_ids[static_cast<std::size_t>(t)])
        if (std::find(g.var_ids[s].begin(), g.var_ids[s].end(), v) == g.var_ids[s].end()) xp = ids[static_cast<std::size_t>(v)];
      if (xp < 0 || !done.insert({std::min(x, xp), std::max(x, xp)}).second) continue;
      bool expressible = ent[static_cast<std::size_t>(x)].expr && ent[static_cast<std::size_t>(xp)].expr;
      ExpVec plus(static_cast<std::size_t>(m)), minus(static_cast<std::size_t>(m)), ek(static_cast<std::size_t>(m), 0);
      ek[static_cast<std::size_t>(k)] = 1;
      for (int j = 0; j < m; ++j) {
        plus[static_cast<std::size_t>(j)] = static_cast<int>(std::max<long long>(seed.btilde()(j, k), 0));
        minus[static_cast<std::size_t>(j)] = static_cast<int>(std::max<long long>(-seed.btilde()(j, k), 0));
        if ((plus[static_cast<std::size_t>(j)] || minus[static_cast<std::size_t>(j)]) && !ent[static_cast<std::size_t>(at[static_cast<std::size_t>(j)])].expr)
          expressible = false;
      }
      if (!expressible) continue;
      LocalizedPluckerExpr rhs(ctx);
      for (const ExpVec* v : {&plus, &minus}) {
        std::vector<BracketFactor> fs;
        for (int j = 0; j < m; ++j)
          if ((*v)[static_cast<std::size_t>(j)] != 0)
            fs.push_back({*ent[static_cast<std::size_t>(at[static_cast<std::size_t>(j)])].expr, (*v)[static_cast<std::size_t>(j)]});
        LocalizedPluckerExpr mono = fs.empty() ? ctx->scalar(QCoeff(1)) : bracket(fs);
        rhs += half_qpow(seed.form()->pair(ek, *v)) * mono;
      }
      out.push_back({ent[static_cast<std::size_t>(x)].name + "*" + ent[static_cast<std::size_t>(xp)].name, "exchange",
                     *ent[static_cast<std::size_t>(x)].expr * *ent[static_cast<std::size_t>(xp)].expr, std::move(rhs)});
    }
  }
  return out;
}

Report verify_preservation(const BraidWord& word, const std::vector<Relation>& corpus, SigmaCache& cache, int jobs) {
  for (const auto& g : word) cache.get(g.i, g.sign);  // build tables before going parallel
  std::vector<CheckResult> results(corpus.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t r) {
    const Relation& rel = corpus[r];
    CheckResult& out = results[r];
    out.name = rel.category + ": " + rel.name;
    if (!expr_equal(rel.lhs, rel.rhs)) {
      out.pass = false;
      out.detail = "rejected: the relation itself does not hold";
      return;
    }
    auto l = apply_sigma(word, rel.lhs, cache);
    auto rr = apply_sigma(word, rel.rhs, cache);
    out.pass = expr_equal(l, rr);
    if (!out.pass) out.detail = to_string(l) + " != " + to_string(rr);
  });
  Report rep;
  rep.checks = std::move(results);
  return rep;
}

Report verify_braid_relation(int i, int j, const std::vector<std::pair<std::string, LocalizedPluckerExpr>>& targets,
                             SigmaCache& cache, int jobs) {
  const auto& ctx = cache.catalog()->context();
  const int d = gcd_d(ctx->k(), ctx->n());
  if (i == j || i < 1 || j < 1 || i > d - 1 || j > d - 1)
    throw Error(ErrorCode::InvalidParams, "braid relation needs distinct generators in [1, d-1]");
  BraidWord w1, w2;
  if (std::abs(i - j) == 1) {
    w1 = {{i, 1}, {j, 1}, {i, 1}};
    w2 = {{j, 1}, {i, 1}, {j, 1}};
  } else {
    w1 = {{i, 1}, {j, 1}};
    w2 = {{j, 1}, {i, 1}};
  }
  cache.get(i, 1);
  cache.get(j, 1);
  std::vector<CheckResult> results(targets.size());
  parallel_for(targets.size(), jobs, [&](std::size_t t) {
    const auto& [name, x] = targets[t];
    auto a = apply_sigma(w1, x, cache);
    auto b = apply_sigma(w2, x, cache);
    results[t] = {to_string(w1) + " = " + to_string(w2) + " on " + name, expr_equal(a, b), {}};
    if (!results[t].pass) results[t].detail = to_string(a) + " != " + to_string(b);
  });
  Report rep;
  rep.checks = std::move(results);
  return rep;
}

std::vector<std::pair<std::string, LocalizedPluckerExpr>> braid_targets(const ContextPtr& ctx) {
  std::vector<std::pair<std::string, LocalizedPluckerExpr>> out;
  for (const auto& j : all_subsets(ctx->k(), ctx->n())) out.emplace_back(to_string(j), ctx->plucker(j));
  for (const auto& [name, value] : ctx->names()) out.emplace_back(name, value);
  return out;
}

}  // namespace qcluster
