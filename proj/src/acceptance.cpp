#include "qcluster/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <json.hpp>
#include <memory>
#include <numeric>
#include <sstream>

#include "qcluster/braid.hpp"
#include "qcluster/error.hpp"
#include "qcluster/sampling.hpp"

namespace qcluster {

const std::vector<CriterionInfo>& acceptance_criteria() {
  static const std::vector<CriterionInfo> all = {
      {1, "mutation", "Gr(3,6) mutation at D(1,2,4) gives D(1,3,5)", 1, false},
      {2, "enumeration", "Gr(3,6) has 16 mutable variables and 50 clusters", 30, false},
      {3, "scott", "quasi-commutation exponents agree with weak separation", 300, false},
      {4, "gr24", "Gr(2,4) sigma_1 images and relations", 1, false},
      {5, "table", "Gr(3,6) sigma_1, sigma_2 table (22 rows)", 120, false},
      {6, "four-term", "sigma_1 preserves the 4-term Plucker relation", 60, false},
      {7, "braid", "s1 s2 s1 = s2 s1 s2 on Gr(3,6)", 600, false},
      {8, "quasihom", "R_sigma quasi-homomorphism criterion on Gr(3,6)", 10, false},
      {9, "properties", "property suites", 300, false},
      {10, "gr48", "Gr(4,8) s1 s3 = s3 s1 on sampled Plucker coordinates", 3600, true},
  };
  return all;
}

namespace {

struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

// Lazily shared state so a catalog is built once per run.
struct Shared {
  std::map<std::pair<int, int>, std::shared_ptr<PluckerContext>> contexts;
  std::map<std::pair<int, int>, std::unique_ptr<SigmaCache>> caches;

  ContextPtr context(int k, int n) {
    auto& c = contexts[{k, n}];
    if (!c) c = make_grassmann_context(k, n);
    return c;
  }
  SigmaCache& cache(int k, int n, VariableCatalog::Scope scope = VariableCatalog::Scope::AllClusterVariables) {
    auto& c = caches[{k, n}];
    if (!c) c = std::make_unique<SigmaCache>(VariableCatalog::build(context(k, n), scope, 20000));
    return *c;
  }
};

LocalizedPluckerExpr parse(const ContextPtr& ctx, const char* s) { return parse_plucker_expr(s, ctx); }

// x (over the rectangles torus) equals e in the quantum Grassmannian: both
// sides are multiplied by a bracket of rectangle variables clearing x's
// mutable denominators, and the products are compared by normal forms.
bool torus_matches(const GrassmannSeed& rect, const ContextPtr& ctx, const TorusElement& x,
                   const LocalizedPluckerExpr& e) {
  const int m = rect.seed.rank(), nm = rect.seed.n_mutable();
  ExpVec shift(static_cast<std::size_t>(m), 0);
  for (const auto& [a, c] : x.terms())
    for (int p = 0; p < nm; ++p)
      shift[static_cast<std::size_t>(p)] = std::max(shift[static_cast<std::size_t>(p)], -a[static_cast<std::size_t>(p)]);
  auto monomial = [&](const ExpVec& a) {
    std::vector<BracketFactor> fs;
    for (int p = 0; p < m; ++p)
      if (a[static_cast<std::size_t>(p)] != 0)
        fs.push_back({ctx->plucker(rect.labels[static_cast<std::size_t>(p)]), a[static_cast<std::size_t>(p)]});
    return fs.empty() ? ctx->scalar(QCoeff(1)) : bracket(fs);
  };
  LocalizedPluckerExpr rhs(ctx);
  for (const auto& [a, c] : x.terms()) {
    ExpVec sum(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + shift[i];
    rhs += c * QCoeff::qpow(HalfInt::from_twice(rect.seed.form()->pair(a, shift))) * monomial(sum);
  }
  return expr_equal(e * monomial(shift), rhs);
}

// ---- criteria ---------------------------------------------------------------

std::string c_mutation(Shared& sh, const AcceptOptions&) {
  auto ctx = sh.context(3, 6);
  GrassmannSeed rect = rectangles_seed(3, 6);
  const KSubset d124 = make_subset({1, 2, 4}, 6);
  const int p = static_cast<int>(std::find(rect.labels.begin(), rect.labels.end(), d124) - rect.labels.begin());
  QuantumSeed next = mutate(rect.seed, p);
  PluckerLabeler labeler(rect, 7);
  auto lab = labeler(next.frame()[static_cast<std::size_t>(p)]);
  require(lab && *lab == make_subset({1, 3, 5}, 6), "the new variable is not D(1,3,5)");
  require(expr_equal(parse(ctx, "D(1,2,4) D(1,3,5)"), parse(ctx, "q [D(1,2,5) D(1,3,4)] + [D(1,2,3) D(1,4,5)]")),
          "oracle rejects D124 D135 = q[D125 D134] + [D123 D145]");
  require(torus_matches(rect, ctx, next.frame()[static_cast<std::size_t>(p)], parse(ctx, "D(1,3,5)")),
          "mutated element differs from the quantum minor D(1,3,5)");
  return "D(1,2,4)' = D(1,3,5); exchange relation oracle-equal";
}

std::string c_enumeration(Shared& sh, const AcceptOptions&) {
  auto ctx = sh.context(3, 6);
  GrassmannSeed rect = rectangles_seed(3, 6);
  ExchangeGraph g = enumerate_exchange_graph(rect.seed, 1000);
  require(g.seeds.size() == 50, "found " + std::to_string(g.seeds.size()) + " clusters, expected 50");
  require(g.variables.size() == 16, "found " + std::to_string(g.variables.size()) + " variables, expected 16");
  std::vector<std::string> expected = {"D(1,2,4)", "D(1,2,5)", "D(1,3,4)", "D(1,3,5)", "D(1,3,6)", "D(1,4,5)",
                                       "D(1,4,6)", "D(2,3,5)", "D(2,3,6)", "D(2,4,5)", "D(2,4,6)", "D(2,5,6)",
                                       "D(3,4,6)", "D(3,5,6)",
                                       "q^{-3/2}*(D(1,2,4) D(3,5,6) - q^-1 D(1,2,3) D(4,5,6))",
                                       "q^{-1/2}*(D(1,4,5) D(2,3,6) - q^-2 D(1,2,3) D(4,5,6))"};
  // q = 1 values on a generic sample pair each expression with a candidate;
  // the oracle then decides.
  std::mt19937_64 rng(99);
  VectorTuple v = random_sample(rng, 3, 6);
  std::vector<Rational> coords;
  for (const auto& l : rect.labels) coords.push_back(plucker_minor(v, l));
  auto minors = [&](const KSubset& j) { return plucker_minor(v, j); };
  std::vector<bool> used(g.variables.size(), false);
  for (const auto& text : expected) {
    auto e = parse_plucker_expr(text, ctx);
    const Rational val = evaluate_classical(e, minors);
    bool matched = false;
    for (std::size_t i = 0; i < g.variables.size() && !matched; ++i) {
      if (used[i] || evaluate_classical(g.variables[i], coords) != val) continue;
      if (torus_matches(rect, ctx, g.variables[i], e)) used[i] = matched = true;
    }
    require(matched, "no enumerated variable equals " + text);
  }
  return "50 clusters; 16 variables matched, y and z included";
}

std::string c_scott(Shared&, const AcceptOptions&) {
  std::size_t pairs = 0, separated = 0;
  for (auto [k, n] : {std::pair{2, 4}, {2, 5}, {2, 6}, {3, 6}}) {
    QuantumMatrixAlgebra alg(k, n);
    const auto labels = all_subsets(k, n);
    for (std::size_t a = 0; a < labels.size(); ++a)
      for (std::size_t b = a; b < labels.size(); ++b) {
        const auto &I = labels[a], &J = labels[b];
        auto e = alg.quasi_commutation_exponent(I, J);
        const bool ws = weakly_separated(I, J);
        require(e.has_value() == ws, "Gr(" + std::to_string(k) + "," + std::to_string(n) + ") " + to_string(I) +
                                         " " + to_string(J) + ": exponent defined != weakly separated");
        if (ws) {
          require(*e == scott_lambda(I, J), to_string(I) + " " + to_string(J) + ": exponent " +
                                                std::to_string(*e) + " != " + std::to_string(scott_lambda(I, J)));
          ++separated;
        }
        ++pairs;
      }
  }
  return std::to_string(pairs) + " pairs, " + std::to_string(separated) + " weakly separated, all agree";
}

std::string c_gr24(Shared& sh, const AcceptOptions&) {
  auto ctx = sh.context(2, 4);
  SigmaCache& cache = sh.cache(2, 4);
  const auto& t = cache.get(1, 1);
  const std::pair<const char*, const char*> images[] = {
      {"D(1,2)", "D(1,2)"}, {"D(1,3)", "D(2,4)"}, {"D(1,4)", "D(1,2) D(1,4)^-1 D(3,4)"},
      {"D(2,3)", "D(1,2) D(2,3)^-1 D(3,4)"}, {"D(3,4)", "D(3,4)"}};
  for (auto [x, y] : images) {
    std::vector<int> elems{x[2] - '0', x[4] - '0'};
    require(expr_equal(t.plucker_image(make_subset(elems, 4)), parse(ctx, y)), std::string("sigma_1(") + x + ") != " + y);
  }
  auto s1 = parse_braid_word("s1");
  const std::pair<const char*, const char*> relations[] = {
      {"D(1,3) D(2,4)", "q^-1 D(1,2) D(3,4) + q D(1,4) D(2,3)"}, {"D(1,4) D(2,3)", "D(2,3) D(1,4)"}};
  for (auto [l, r] : relations) {
    auto lhs = parse(ctx, l), rhs = parse(ctx, r);
    require(expr_equal(lhs, rhs), std::string("relation does not hold: ") + l + " = " + r);
    require(expr_equal(apply_sigma(s1, lhs, cache), apply_sigma(s1, rhs, cache)),
            std::string("sigma_1 breaks ") + l + " = " + r);
  }
  return "5 images; Plucker relation and commutation preserved";
}

struct TableRow {
  const char* x;
  const char* s1;
  const char* s2;
};

const TableRow kTable[] = {
    {"D(1,2,3)", "D(1,2,3)", "D(1,2,3)"},
    {"D(2,3,4)", "[D(1,2,3) D(2,3,4)^-1 D(3,4,5)]", "D(2,3,4)"},
    {"D(3,4,5)", "D(3,4,5)", "[D(2,3,4) D(3,4,5)^-1 D(4,5,6)]"},
    {"D(4,5,6)", "D(4,5,6)", "D(4,5,6)"},
    {"D(1,2,6)", "D(1,2,6)", "[D(1,2,3) D(1,2,6)^-1 D(1,5,6)]"},
    {"D(1,5,6)", "[D(1,2,6) D(1,5,6)^-1 D(4,5,6)]", "D(1,5,6)"},
    {"D(1,2,4)", "D(1,2,5)", "D(1,3,4)"},
    {"D(1,2,5)", "[D(1,2,6) D(1,5,6)^-1 D(1,4,5)]", "D(1,3,6)"},
    {"D(1,3,4)", "D(2,3,5)", "[D(1,4,5) D(3,4,5)^-1 D(2,3,4)]"},
    {"D(1,3,5)", "[D(1,5,6)^-1 z]", "[D(3,4,5)^-1 z]"},
    {"D(1,3,6)", "D(2,3,6)", "[D(1,2,3) D(1,5,6) D(2,4,5) D(1,2,6)^-1 D(3,4,5)^-1]"},
    {"D(1,4,5)", "D(2,4,5)", "D(1,4,6)"},
    {"D(1,4,6)", "D(2,5,6)", "[D(1,2,4) D(1,2,6)^-1 D(1,5,6)]"},
    {"D(2,3,5)", "[D(1,2,3) D(1,4,6) D(1,5,6)^-1 D(2,3,4)^-1 D(3,4,5)]", "D(2,3,6)"},
    {"D(2,3,6)", "[D(1,2,3) D(2,3,4)^-1 D(3,4,6)]", "[D(1,2,3) D(1,2,6)^-1 D(2,5,6)]"},
    {"D(2,4,5)", "[D(1,2,4) D(2,3,4)^-1 D(3,4,5)]", "D(3,4,6)"},
    {"D(2,4,6)", "[D(2,3,4)^-1 y]", "[D(1,2,6)^-1 y]"},
    {"D(2,5,6)", "[D(1,2,6) D(1,3,4) D(4,5,6) D(1,5,6)^-1 D(2,3,4)^-1]", "D(3,5,6)"},
    {"D(3,4,6)", "D(3,5,6)", "[D(1,2,5) D(1,2,6)^-1 D(2,3,4) D(3,4,5)^-1 D(4,5,6)]"},
    {"D(3,5,6)", "[D(1,3,6) D(1,5,6)^-1 D(4,5,6)]", "[D(2,3,5) D(3,4,5)^-1 D(4,5,6)]"},
    {"y", "[D(1,2,6) D(1,3,5) D(1,5,6)^-1 D(4,5,6)]", "[D(1,3,5) D(2,3,4) D(3,4,5)^-1 D(4,5,6)]"},
    {"z", "[D(1,2,3) D(2,3,4)^-1 D(2,4,6) D(3,4,5)]", "[D(1,2,3) D(1,2,6)^-1 D(1,5,6) D(2,4,6)]"},
};

std::string c_table(Shared& sh, const AcceptOptions&) {
  auto ctx = sh.context(3, 6);
  SigmaCache& cache = sh.cache(3, 6);
  const auto& cat = *cache.catalog();
  int rows = 0;
  for (const auto& row : kTable) {
    const int idx = cat.index_of(std::string(row.x));
    require(idx >= 0, std::string(row.x) + " is not in the catalog");
    for (int i : {1, 2}) {
      const SigmaImage* img = cache.get(i, 1).find(idx);
      require(img && img->expr, std::string("no image of ") + row.x);
      const char* want = i == 1 ? row.s1 : row.s2;
      require(expr_equal(*img->expr, parse(ctx, want)),
              "sigma_" + std::to_string(i) + "(" + row.x + ") = " + cache.get(i, 1).render(idx) + ", table says " + want);
    }
    ++rows;
  }
  require(cache.get(2, 1).render(cat.index_of(std::string("D(1,3,5)"))) == "[D(3,4,5)^-1 z]",
          "sigma_2(D(1,3,5)) does not render as [D(3,4,5)^-1 z]");
  return std::to_string(rows) + " rows match for sigma_1 and sigma_2";
}

std::string c_four_term(Shared& sh, const AcceptOptions&) {
  auto ctx = sh.context(3, 6);
  SigmaCache& cache = sh.cache(3, 6);
  auto lhs = parse(ctx, "D(1,2,4) D(3,5,6)");
  auto rhs = parse(ctx, "q^-1 D(1,2,3) D(4,5,6) + q D(1,2,5) D(3,4,6) - q^2 D(1,2,6) D(3,4,5)");
  require(expr_equal(lhs, rhs), "the 4-term relation does not hold");
  auto s1 = parse_braid_word("s1");
  auto l = apply_sigma(s1, lhs, cache), r = apply_sigma(s1, rhs, cache);
  require(expr_equal(l, r), "sigma_1 breaks the 4-term relation");
  auto scale = parse(ctx, "q D(1,5,6)");
  require(expr_equal(l * scale, parse(ctx, "D(1,2,5) D(1,3,6) D(4,5,6)")), "sigma_1(LHS) q D156 != D125 D136 D456");
  require(expr_equal(r * scale, parse(ctx, "D(1,2,3) D(4,5,6) D(1,5,6) + q^2 D(1,2,6) D(1,4,5) D(3,5,6) - "
                                           "q^3 D(1,2,6) D(3,4,5) D(1,5,6)")),
          "sigma_1(RHS) q D156 != the reduced right-hand side");
  require(expr_equal(parse(ctx, "D(1,2,5) D(1,3,6) D(4,5,6)"),
                     parse(ctx, "D(1,2,3) D(4,5,6) D(1,5,6) + q^2 D(1,2,6) D(1,4,5) D(3,5,6) - "
                                "q^3 D(1,2,6) D(3,4,5) D(1,5,6)")),
          "the reduced identity does not hold");
  return "relation, image and reduced identity oracle-equal";
}

std::string c_braid(Shared& sh, const AcceptOptions& opts) {
  SigmaCache& cache = sh.cache(3, 6);
  auto targets = braid_targets(cache.catalog()->context());
  Report rep = verify_braid_relation(1, 2, targets, cache, opts.jobs);
  require(rep.checks.size() == 22, "expected 22 targets");
  for (const auto& c : rep.checks) require(c.pass, c.name + ": " + c.detail);
  return "22 targets (20 Plucker, y, z)";
}

std::string c_quasihom(Shared&, const AcceptOptions&) {
  for (int i : {1, 2}) {
    const std::string tag = "sigma_" + std::to_string(i) + ": ";
    SigmaSeeds ss = sigma_seeds(3, 6, i);
    const IntMatrix& R = ss.R.R;
    require(R * R == IntMatrix::Identity(R.rows(), R.cols()), tag + "R^2 != I");
    Report rep = check_quasi_hom(ss.source.seed, ss.target.seed, R);
    for (const auto& c : rep.checks) require(c.pass, tag + c.name + " fails " + c.detail);
    for (int k = 0; k < ss.source.seed.n_mutable(); ++k) {
      Report mc = check_mutation_compat(ss.source.seed, ss.target.seed, R, k);
      require(mc.ok(), tag + "mutation compatibility fails in direction " + std::to_string(k));
    }
  }
  return "R^2 = I, (a)-(e) and mutation compatibility for i = 1, 2";
}

std::string c_properties(Shared& sh, const AcceptOptions& opts) {
  Rng rng(opts.rng_seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::ostringstream summary;

  // compatible pairs under 1000 random mutations
  int mutations = 0;
  while (mutations < 1000) {
    const int n = uniform(2, 4);
    QuantumSeed s = random_compatible_seed(rng, n);
    IntMatrix bt = s.btilde(), lam = s.lambda();
    auto d0 = compatible_diagonal(bt, lam);
    require(d0.has_value(), "random seed is not compatible");
    for (int step = 0; step < 10 && mutations < 1000; ++step, ++mutations) {
      const int k = uniform(0, n - 1);
      lam = mutate_lambda(lam, bt, k, default_lambda_rule());
      bt = mutate_btilde(bt, k);
      auto d = compatible_diagonal(bt, lam);
      require(d && *d == *d0, "compatibility lost after " + std::to_string(mutations + 1) + " mutations");
    }
  }
  summary << mutations << " mutations compatible";

  // bar-invariance of frames and transports
  GrassmannSeed rect = rectangles_seed(3, 6);
  ExchangeGraph g = enumerate_exchange_graph(rect.seed, 1000);
  for (const auto& seed : g.seeds)
    for (const auto& f : seed.frame()) require(is_bar_invariant(f), "frame element is not bar-invariant: " + to_string(f));
  for (int trial = 0; trial < 20; ++trial) {
    QuantumSeed s = random_compatible_seed(rng, uniform(2, 3));
    for (int step = 0; step < 4; ++step) s = mutate(s, uniform(0, s.n_mutable() - 1));
    for (const auto& f : s.frame()) require(is_bar_invariant(f), "random-seed frame element is not bar-invariant");
  }
  int transports = 0;
  for (int i : {1, 2}) {
    SigmaSeeds ss = sigma_seeds(3, 6, i);
    for (int trial = 0; trial < 50; ++trial, ++transports) {
      ExpVec a(static_cast<std::size_t>(ss.source.seed.rank()));
      for (auto& x : a) x = uniform(-2, 2);
      TorusElement t = transport_monomial(ss.source.seed.lambda(), ss.target.seed.form(), ss.R.R, a);
      require(is_bar_invariant(t), "transport of a monomial is not bar-invariant");
    }
  }
  summary << "; " << g.seeds.size() << " Gr(3,6) frames and " << transports << " transports bar-invariant";

  // normalized_from_word does not depend on the order of the factors
  int orders = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto& seed = g.seeds[static_cast<std::size_t>(uniform(0, static_cast<int>(g.seeds.size()) - 1))];
    std::vector<WordFactor> w;
    for (int p = 0; p < seed.rank(); ++p) {
      const int e = uniform(-1, 2);
      if (e == 0 || (e < 0 && !seed.frame()[static_cast<std::size_t>(p)].is_monomial())) continue;
      w.push_back({seed.frame()[static_cast<std::size_t>(p)], e});
    }
    if (w.empty()) continue;
    TorusElement ref = normalized_from_word(w);
    for (int shuffle = 0; shuffle < 4; ++shuffle, ++orders) {
      std::shuffle(w.begin(), w.end(), rng);
      require(normalized_from_word(w) == ref, "normalized product depends on factor order");
    }
  }
  summary << "; " << orders << " reorderings";

  // rewriting confluence
  int words = 0;
  for (auto [k, n] : {std::pair{2, 3}, {2, 4}, {3, 6}}) {
    QuantumMatrixAlgebra alg(k, n);
    for (int trial = 0; trial < 40; ++trial, ++words) {
      Word w(static_cast<std::size_t>(uniform(0, 6)));
      for (auto& c : w) c = static_cast<std::uint8_t>(uniform(0, k * n - 1));
      NCPoly nf = alg.normal_form(w);
      for (int order = 0; order < 3; ++order) {
        auto pick = [&](std::size_t m) { return std::uniform_int_distribution<std::size_t>(0, m - 1)(rng); };
        require(alg.rewrite(w, pick) == nf, "rewriting is not confluent on a random word");
      }
    }
  }
  summary << "; " << words << " words confluent";

  // q = 1 images against the window map
  int samples = 0;
  for (auto [k, n, d] : {std::tuple{2, 4, 2}, {3, 6, 3}}) {
    SigmaCache& cache = sh.cache(k, n);
    int done = 0;
    while (done < 100) {
      VectorTuple v = random_sample(rng, k, n);
      auto minors = [&](const KSubset& j) { return plucker_minor(v, j); };
      bool generic = true;
      for (int i = 1; i < d && generic; ++i) {
        std::map<KSubset, Rational> expect;
        try {
          expect = window_oracle(k, n, i, v);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotConsecutivelyGeneric) throw;
          generic = false;
          break;
        }
        for (const auto& [j, val] : expect)
          require(evaluate_classical(cache.get(i, 1).plucker_image(j), minors) == val,
                  "Gr(" + std::to_string(k) + "," + std::to_string(n) + ") sigma_" + std::to_string(i) + "(" +
                      to_string(j) + ") disagrees with the window map at q = 1");
      }
      if (generic) ++done, ++samples;
    }
  }
  summary << "; " << samples << " window samples";
  return summary.str();
}

std::string c_gr48(Shared& sh, const AcceptOptions& opts) {
  auto ctx = sh.context(4, 8);
  SigmaCache& cache = sh.cache(4, 8, VariableCatalog::Scope::PluckerOnly);
  auto labels = all_subsets(4, 8);
  Rng rng(opts.rng_seed);
  std::shuffle(labels.begin(), labels.end(), rng);
  const auto w1 = parse_braid_word("s1 s3"), w2 = parse_braid_word("s3 s1");
  int checked = 0, skipped = 0;
  for (const auto& j : labels) {
    if (checked >= opts.gr48_samples) break;
    if (ctx->frozen_index(j) >= 0) continue;
    LocalizedPluckerExpr a, b;
    try {
      a = apply_sigma(w1, ctx->plucker(j), cache);
      b = apply_sigma(w2, ctx->plucker(j), cache);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnknownSymbol) throw;
      ++skipped;  // an intermediate image is not a Plücker coordinate times frozens
      continue;
    }
    require(expr_equal(a, b), "s1 s3 != s3 s1 on " + to_string(j));
    ++checked;
  }
  require(checked > 0, "no sampled coordinate stays within Plücker images");
  return std::to_string(checked) + " coordinates agree (" + std::to_string(skipped) + " skipped)";
}

using CriterionFn = std::function<std::string(Shared&, const AcceptOptions&)>;

const std::map<int, CriterionFn>& criterion_fns() {
  static const std::map<int, CriterionFn> fns = {
      {1, c_mutation}, {2, c_enumeration}, {3, c_scott},      {4, c_gr24},       {5, c_table},
      {6, c_four_term}, {7, c_braid},      {8, c_quasihom},   {9, c_properties}, {10, c_gr48},
  };
  return fns;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptOptions& opts) {
  std::vector<const CriterionInfo*> selected;
  for (const auto& c : acceptance_criteria()) {
    bool pick = opts.only.empty() ? (!c.optional || opts.extended) : false;
    for (const auto& o : opts.only)
      if (o == c.key || o == std::to_string(c.id)) pick = true;
    if (pick) selected.push_back(&c);
  }
  for (const auto& o : opts.only) {
    bool known = false;
    for (const auto& c : acceptance_criteria()) known = known || o == c.key || o == std::to_string(c.id);
    if (!known) throw Error(ErrorCode::InvalidParams, "unknown criterion \"" + o + "\"");
  }

  const LambdaRule saved = default_lambda_rule();
  if (opts.inject_lambda_sign_bug) set_default_lambda_rule(LambdaRule::Literal);
  Shared shared;
  std::vector<CriterionResult> out;
  for (const CriterionInfo* c : selected) {
    CriterionResult r{c->id, c->key, c->title, c->optional, false, 0, c->limit_seconds, {}};
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      r.detail = criterion_fns().at(c->id)(shared, opts);
      ok = true;
    } catch (const Failure& f) {
      r.detail = f.what;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.pass = ok && r.seconds <= r.limit_seconds;
    if (ok && !r.pass) r.detail += " (over the time limit)";
    out.push_back(std::move(r));
  }
  set_default_lambda_rule(saved);
  return out;
}

std::string format_table(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << " " << std::left << std::setw(12) << r.key
       << std::right << std::fixed << std::setprecision(2) << std::setw(8) << r.seconds << "s/" << std::setprecision(0)
       << r.limit_seconds << "s  " << r.title;
    if (r.optional) os << " [optional]";
    if (!r.detail.empty()) os << ": " << r.detail;
    os << "\n";
  }
  return os.str();
}

std::string format_json(const std::vector<CriterionResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results)
    arr.push_back({{"id", r.id},
                   {"key", r.key},
                   {"title", r.title},
                   {"optional", r.optional},
                   {"pass", r.pass},
                   {"seconds", r.seconds},
                   {"limit_seconds", r.limit_seconds},
                   {"detail", r.detail}});
  return arr.dump(2) + "\n";
}

}  // namespace qcluster
