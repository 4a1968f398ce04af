// gr: command-line front end for seeds, mutation, checks, braid images and
// the acceptance suite.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <optional>
#include <sstream>

#include "qcluster/acceptance.hpp"
#include "qcluster/braid.hpp"
#include "qcluster/error.hpp"
#include "qcluster/sampling.hpp"
#include "qcluster/seed_io.hpp"

using namespace qcluster;
using nlohmann::json;

namespace {

struct Params {
  int k = 3;
  int n = 6;
  int xi = 0;
  int sigma = 0;
  int jobs = 1;
  std::size_t bound = 20000;
  int steps = 1000;
  std::uint64_t rng_seed = 20240611ULL;
  std::string format = "table";
  std::string seed_file;
  std::string out;
  bool sign_bug = false;
};

void print_report(const Report& rep, const std::string& format) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& c : rep.checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    std::cout << arr.dump(2) << "\n";
    return;
  }
  for (const auto& c : rep.checks) std::cout << c.name << "\t" << (c.pass ? "PASS" : "FAIL") << "\t" << c.detail << "\n";
}

KSubset parse_label(std::string_view s, int n) {
  std::string t(s);
  if (t.rfind("D(", 0) == 0 && t.back() == ')') t = t.substr(2, t.size() - 3);
  std::vector<int> elems;
  std::stringstream ss(t);
  std::string part;
  const bool dotted = t.find(',') != std::string::npos || t.find('.') != std::string::npos;
  if (dotted) {
    for (char& c : t)
      if (c == '.') c = ',';
    ss.str(t);
    while (std::getline(ss, part, ','))
      if (!part.empty()) elems.push_back(std::stoi(part));
  } else {
    for (char c : t) {
      if (c < '0' || c > '9') throw Error(ErrorCode::ParseError, "bad subset \"" + std::string(s) + "\"");
      elems.push_back(c - '0');
    }
  }
  return make_subset(elems, n);
}

// Plücker-labelled seeds: k and n come from the labels.
std::optional<GrassmannSeed> as_grassmann(const QuantumSeed& seed) {
  std::vector<KSubset> labels;
  int k = -1, n = 0;
  for (const auto& l : seed.labels()) {
    if (l.rfind("D(", 0) != 0) return std::nullopt;
    KSubset s;
    try {
      s = parse_label(l, 64);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (k >= 0 && s.size() != k) return std::nullopt;
    k = s.size();
    n = std::max(n, s.elems.back());
    labels.push_back(s);
  }
  if (k < 2 || n < k + 2) return std::nullopt;
  return GrassmannSeed{k, n, std::move(labels), seed};
}

// The Plücker-labelled seed whose torus carries the frame of `seed`.
std::optional<GrassmannSeed> base_of(const QuantumSeed& seed) {
  auto g = as_grassmann(seed);
  if (!g) return std::nullopt;
  const IntMatrix& amb = seed.ambient()->matrix();
  if (amb == seed.lambda()) {
    bool identity = true;
    for (int i = 0; i < seed.rank() && identity; ++i)
      identity = seed.frame()[static_cast<std::size_t>(i)] == TorusElement::generator(seed.ambient(), i);
    if (identity) return g;
  }
  std::vector<GrassmannSeed> candidates{rectangles_seed(g->k, g->n)};
  for (int i = 1; i < std::gcd(g->k, g->n); ++i) candidates.push_back(x_i_seed(g->k, g->n, i));
  for (auto& c : candidates)
    if (c.seed.lambda() == amb) return c;
  return std::nullopt;
}

std::string render_torus(const TorusElement& x, const std::vector<std::string>& names) {
  std::string out;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    const auto& [a, c] = *it;
    std::string coeff = to_string(c);
    std::string term;
    for (std::size_t p = 0; p < a.size(); ++p) {
      if (a[p] == 0) continue;
      term += (term.empty() ? "" : " ") + names[p] + (a[p] == 1 ? "" : "^" + std::to_string(a[p]));
    }
    if (!term.empty()) term = "[" + term + "]";
    std::string piece = term.empty() ? coeff : coeff == "1" ? term : "(" + coeff + ")*" + term;
    out += (out.empty() ? "" : " + ") + piece;
  }
  return out.empty() ? "0" : out;
}

int direction_of(const QuantumSeed& seed, const std::string& d, int n) {
  for (int i = 0; i < seed.n_mutable(); ++i)
    if (seed.labels()[static_cast<std::size_t>(i)] == d) return i;
  if (n > 0) {
    try {
      const std::string want = to_string(parse_label(d, n));
      for (int i = 0; i < seed.n_mutable(); ++i)
        if (seed.labels()[static_cast<std::size_t>(i)] == want) return i;
    } catch (const Error&) {
    }
  }
  if (!d.empty() && d.size() <= 4 && std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
      std::stoi(d) < seed.n_mutable())
    return std::stoi(d);
  throw Error(ErrorCode::InvalidParams, "no mutable direction \"" + d + "\"");
}

int cmd_init(const Params& p) {
  GrassmannSeed g = p.xi ? x_i_seed(p.k, p.n, p.xi) : rectangles_seed(p.k, p.n);
  if (p.out.empty()) std::cout << seed_to_json(g.seed);
  else write_seed_file(p.out, g.seed);
  return 0;
}

int cmd_mutate(const Params& p, const std::vector<std::string>& dirs) {
  QuantumSeed seed = read_seed_file(p.seed_file);
  auto base = base_of(seed);
  std::optional<PluckerLabeler> labeler;
  std::vector<std::string> names;
  if (base) {
    labeler.emplace(*base, 7);
    for (const auto& l : base->labels) names.push_back(to_string(l));
  } else {
    for (int i = 0; i < seed.rank(); ++i) names.push_back("X" + std::to_string(i + 1));
  }
  json printed = json::array();
  for (const auto& d : dirs) {
    const int k = direction_of(seed, d, base ? base->n : 0);
    const std::string old = seed.labels()[static_cast<std::size_t>(k)];
    QuantumSeed next = mutate(seed, k);
    const TorusElement& x = next.frame()[static_cast<std::size_t>(k)];
    std::optional<KSubset> lab = labeler ? (*labeler)(x) : std::nullopt;
    const std::string label = lab ? to_string(*lab) : old + "'";
    next.set_label(k, label);
    const std::string value = render_torus(x, names);
    if (p.format == "json") printed.push_back({{"direction", k}, {"old", old}, {"new", label}, {"value", value}});
    else std::cout << k << "\t" << old << "\t" << label << "\t" << value << "\n";
    seed = std::move(next);
  }
  if (p.format == "json") std::cout << printed.dump(2) << "\n";
  if (!p.out.empty()) write_seed_file(p.out, seed);
  return 0;
}

int cmd_enumerate(const Params& p) {
  std::optional<GrassmannSeed> from_file;
  if (!p.seed_file.empty()) {
    from_file = as_grassmann(read_seed_file(p.seed_file));
    if (!from_file) throw Error(ErrorCode::InvalidParams, "enumerate needs a Plücker-labelled seed");
  }
  const GrassmannSeed g = from_file ? *from_file : rectangles_seed(p.k, p.n);
  PluckerLabeler labeler(g, 7);
  std::vector<std::string> names;
  for (const auto& l : g.labels) names.push_back(to_string(l));
  ExchangeGraph graph = enumerate_exchange_graph(g.seed, p.bound);
  json vars = json::array();
  for (const auto& v : graph.variables) {
    auto lab = labeler(v);
    vars.push_back(lab ? to_string(*lab) : render_torus(v, names));
  }
  if (p.format == "json") {
    std::cout << json{{"clusters", graph.seeds.size()}, {"variables", vars}}.dump(2) << "\n";
  } else {
    std::cout << "clusters\t" << graph.seeds.size() << "\nvariables\t" << vars.size() << "\n";
    for (std::size_t i = 0; i < vars.size(); ++i) std::cout << i << "\t" << vars[i].get<std::string>() << "\n";
  }
  return 0;
}

VariableCatalog::Scope scope_for(int k, int n) {
  return k == 2 || (k == 3 && n <= 7) ? VariableCatalog::Scope::AllClusterVariables
                                      : VariableCatalog::Scope::PluckerOnly;
}

SigmaCache make_cache(int k, int n, std::size_t bound) {
  return SigmaCache(VariableCatalog::build(make_grassmann_context(k, n), scope_for(k, n), bound));
}

int cmd_check(const Params& p, const std::string& what, const std::string& word_text) {
  Report rep;
  if (what == "compat") {
    QuantumSeed start = p.seed_file.empty() ? (p.xi ? x_i_seed(p.k, p.n, p.xi) : rectangles_seed(p.k, p.n)).seed
                                            : read_seed_file(p.seed_file);
    auto d0 = compatible_diagonal(start.btilde(), start.lambda());
    rep.add("initial", d0.has_value());
    if (d0) {
      Rng rng(p.rng_seed);
      IntMatrix bt = start.btilde(), lam = start.lambda();
      int done = 0;
      std::string detail;
      for (; done < p.steps; ++done) {
        const int k = std::uniform_int_distribution<int>(0, start.n_mutable() - 1)(rng);
        try {
          lam = mutate_lambda(lam, bt, k, default_lambda_rule());
          bt = mutate_btilde(bt, k);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::BoundExceeded) throw;
          bt = start.btilde(), lam = start.lambda();  // restart the walk before entries overflow
          continue;
        }
        auto d = compatible_diagonal(bt, lam);
        if (!d || *d != *d0) {
          detail = "lost at step " + std::to_string(done + 1) + " (direction " + std::to_string(k) + ")";
          break;
        }
      }
      rep.add("random mutations", detail.empty(), detail.empty() ? std::to_string(done) + " steps" : detail);
    }
  } else if (what == "scott") {
    QuantumMatrixAlgebra alg(p.k, p.n);
    const auto labels = all_subsets(p.k, p.n);
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < labels.size(); ++a)
      for (std::size_t b = a; b < labels.size(); ++b, ++pairs) {
        auto e = alg.quasi_commutation_exponent(labels[a], labels[b]);
        const bool ws = weakly_separated(labels[a], labels[b]);
        if (e.has_value() != ws || (ws && *e != scott_lambda(labels[a], labels[b])))
          rep.add(to_string(labels[a]) + " " + to_string(labels[b]), false,
                  e ? "exponent " + std::to_string(*e) : "no exponent");
      }
    rep.add("pairs", rep.checks.empty(), std::to_string(pairs) + " pairs");
  } else if (what == "quasihom") {
    const int d = std::gcd(p.k, p.n);
    std::vector<int> which;
    if (p.sigma) which.push_back(p.sigma);
    else
      for (int i = 1; i < d; ++i) which.push_back(i);
    if (which.empty()) throw Error(ErrorCode::InvalidParams, "Gr(k,n) needs gcd(k,n) >= 2");
    for (int i : which) {
      SigmaSeeds ss = sigma_seeds(p.k, p.n, i);
      const std::string tag = "sigma_" + std::to_string(i) + " ";
      const IntMatrix& r = ss.R.R;
      rep.add(tag + "R^2 = I", r * r == IntMatrix::Identity(r.rows(), r.cols()));
      for (auto c : check_quasi_hom(ss.source.seed, ss.target.seed, r).checks) rep.add(tag + c.name, c.pass, c.detail);
      for (int k = 0; k < ss.source.seed.n_mutable(); ++k)
        rep.add(tag + "mutation compat " + std::to_string(k),
                check_mutation_compat(ss.source.seed, ss.target.seed, r, k).ok());
    }
  } else if (what == "relations") {
    SigmaCache cache = make_cache(p.k, p.n, p.bound);
    auto corpus = relation_corpus(cache.catalog());
    std::vector<std::string> words;
    if (!word_text.empty()) words.push_back(word_text);
    else
      for (int i = 1; i < std::gcd(p.k, p.n); ++i) words.push_back("s" + std::to_string(i));
    for (const auto& w : words)
      for (auto c : verify_preservation(parse_braid_word(w), corpus, cache, p.jobs).checks)
        rep.add(w + ": " + c.name, c.pass, c.detail);
  } else if (what == "braid") {
    SigmaCache cache = make_cache(p.k, p.n, p.bound);
    auto targets = braid_targets(cache.catalog()->context());
    const int d = std::gcd(p.k, p.n);
    if (d < 3) throw Error(ErrorCode::InvalidParams, "Gr(k,n) needs gcd(k,n) >= 3 for a braid relation");
    for (int i = 1; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (auto c : verify_braid_relation(i, j, targets, cache, p.jobs).checks)
          rep.add("(" + std::to_string(i) + "," + std::to_string(j) + ") " + c.name, c.pass, c.detail);
  } else {
    throw Error(ErrorCode::InvalidParams, "unknown check \"" + what + "\"");
  }
  print_report(rep, p.format);
  return rep.ok() ? 0 : 1;
}

int cmd_braid_apply(const Params& p, const std::string& word_text, const std::string& expr_text) {
  SigmaCache cache = make_cache(p.k, p.n, p.bound);
  const auto& catalog = *cache.catalog();
  BraidWord word = parse_braid_word(word_text);
  LocalizedPluckerExpr x = parse_plucker_expr(expr_text, catalog.context());
  LocalizedPluckerExpr y = apply_sigma(word, x, cache);
  // a result equal to a catalog variable, or a single generator applied to
  // one, prints in table form
  std::string text = to_string(y);
  for (std::size_t e = 0; e < catalog.entries().size(); ++e) {
    const auto& entry = catalog.entries()[e];
    if (entry.expr && expr_equal(*entry.expr, y)) {
      text = entry.name;
      break;
    }
  }
  if (word.size() == 1) {
    for (std::size_t e = 0; e < catalog.entries().size(); ++e) {
      const auto& entry = catalog.entries()[e];
      if (entry.expr && expr_equal(*entry.expr, x) && text == to_string(y)) {
        text = cache.get(word[0].i, word[0].sign).render(static_cast<int>(e));
        break;
      }
    }
  }
  if (p.format == "json") std::cout << json{{"word", to_string(word)}, {"input", expr_text}, {"image", text}}.dump(2) << "\n";
  else std::cout << text << "\n";
  return 0;
}

int cmd_braid_table(const Params& p) {
  SigmaCache cache = make_cache(p.k, p.n, p.bound);
  const auto& catalog = *cache.catalog();
  std::vector<int> which;
  if (p.sigma) which.push_back(p.sigma);
  else
    for (int i = 1; i < std::gcd(p.k, p.n); ++i) which.push_back(i);
  json rows = json::array();
  for (std::size_t e = 0; e < catalog.entries().size(); ++e) {
    json row = {{"x", catalog.entries()[e].name}};
    std::string line = catalog.entries()[e].name;
    for (int i : which) {
      const SigmaTable& t = cache.get(i, 1);
      const std::string r = t.find(static_cast<int>(e)) ? t.render(static_cast<int>(e)) : "";
      row["s" + std::to_string(i)] = r;
      line += "\t" + r;
    }
    rows.push_back(row);
    if (p.format != "json") std::cout << line << "\n";
  }
  if (p.format == "json") std::cout << rows.dump(2) << "\n";
  return 0;
}

int cmd_accept(const Params& p, const std::vector<std::string>& only, bool extended, int gr48_samples) {
  AcceptOptions opts;
  for (const auto& o : only) {
    std::stringstream ss(o);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) opts.only.push_back(part);
  }
  opts.extended = extended;
  opts.jobs = p.jobs;
  opts.rng_seed = p.rng_seed;
  opts.inject_lambda_sign_bug = p.sign_bug;
  opts.gr48_samples = gr48_samples;
  auto results = run_acceptance(opts);
  std::cout << (p.format == "json" ? format_json(results) : format_table(results));
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum cluster algebras on Grassmannians"};
  app.require_subcommand(1);
  Params p;
  auto add_kn = [&](CLI::App* c) {
    c->add_option("-k", p.k, "subset size");
    c->add_option("-n", p.n, "ambient size");
  };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", p.format, "table (TSV) or json")->check(CLI::IsMember({"table", "json"}));
  };

  auto* init = app.add_subcommand("init", "write a seed file");
  add_kn(init);
  init->add_option("--xi", p.xi, "modified cluster x(i)");
  init->add_option("-o,--out", p.out, "output file (stdout when absent)");

  std::vector<std::string> dirs;
  auto* mut = app.add_subcommand("mutate", "mutate a seed file and print the new variables");
  mut->add_option("seed", p.seed_file, "seed file")->required();
  mut->add_option("directions", dirs, "mutable labels (D(1,2,4) or 124) or 0-based indices");
  mut->add_option("-o,--out", p.out, "write the mutated seed");
  add_format(mut);

  auto* en = app.add_subcommand("enumerate", "enumerate the exchange graph");
  add_kn(en);
  en->add_option("--seed", p.seed_file, "start from a seed file");
  en->add_option("--bound", p.bound, "maximum number of seeds");
  add_format(en);

  std::string what, word_text;
  auto* check = app.add_subcommand("check", "run a verification; nonzero exit on failure");
  check->add_option("what", what, "compat|scott|relations|quasihom|braid")
      ->required()
      ->check(CLI::IsMember({"compat", "scott", "relations", "quasihom", "braid"}));
  add_kn(check);
  check->add_option("--sigma", p.sigma, "braid generator index");
  check->add_option("--xi", p.xi, "compat: start from x(i)");
  check->add_option("--seed", p.seed_file, "compat: start from a seed file");
  check->add_option("--steps", p.steps, "compat: random mutations");
  check->add_option("--word", word_text, "relations: braid word (default: each generator)");
  check->add_option("--bound", p.bound, "maximum number of seeds");
  check->add_option("--jobs", p.jobs, "worker threads");
  check->add_option("--rng-seed", p.rng_seed, "random seed");
  check->add_flag("--inject-lambda-sign-bug", p.sign_bug, "use the broken Λ-mutation rule");
  add_format(check);

  auto* braid = app.add_subcommand("braid", "braid group action");
  braid->require_subcommand(1);
  std::string expr_text;
  auto* apply = braid->add_subcommand("apply", "apply a braid word to an expression");
  apply->add_option("word", word_text, "e.g. \"s1 s2^-1\"")->required();
  apply->add_option("expr", expr_text, "e.g. \"D(1,4,5)\"")->required();
  add_kn(apply);
  apply->add_option("--bound", p.bound, "maximum number of seeds");
  add_format(apply);
  auto* table = braid->add_subcommand("table", "print the image of every catalog variable");
  add_kn(table);
  table->add_option("--sigma", p.sigma, "one generator only");
  table->add_option("--bound", p.bound, "maximum number of seeds");
  add_format(table);

  std::vector<std::string> only;
  bool extended = false;
  int gr48_samples = 8;
  auto* accept = app.add_subcommand("accept", "run the acceptance suite");
  accept->add_option("--only", only, "criterion ids or keys (comma separated)");
  accept->add_flag("--extended", extended, "include the optional criteria");
  accept->add_option("--jobs", p.jobs, "worker threads");
  accept->add_option("--rng-seed", p.rng_seed, "random seed");
  accept->add_option("--gr48-samples", gr48_samples, "coordinates sampled for Gr(4,8)");
  accept->add_flag("--inject-lambda-sign-bug", p.sign_bug, "use the broken Λ-mutation rule");
  add_format(accept);

  CLI11_PARSE(app, argc, argv);
  try {
    if (p.sign_bug && !accept->parsed()) set_default_lambda_rule(LambdaRule::Literal);
    if (init->parsed()) return cmd_init(p);
    if (mut->parsed()) return cmd_mutate(p, dirs);
    if (en->parsed()) return cmd_enumerate(p);
    if (check->parsed()) return cmd_check(p, what, word_text);
    if (apply->parsed()) return cmd_braid_apply(p, word_text, expr_text);
    if (table->parsed()) return cmd_braid_table(p);
    if (accept->parsed()) return cmd_accept(p, only, extended, gr48_samples);
  } catch (const Error& e) {
    std::cerr << "gr: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gr: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
