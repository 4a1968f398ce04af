#pragma once

// Small random generators for the property tests. Fixed seeds keep every run
// reproducible; QCLUSTER_TEST_SEED overrides the base seed.

#include <cstdlib>
#include <random>
#include <vector>

#include "qcluster/qcoeff.hpp"
#include "qcluster/qtorus.hpp"

namespace qtest {

inline std::uint64_t base_seed() {
  if (const char* s = std::getenv("QCLUSTER_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611ULL;
}

class Gen {
 public:
  explicit Gen(std::uint64_t salt = 0) : rng_(base_seed() ^ (salt * 0x9e3779b97f4a7c15ULL)) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  qcluster::Rational rational(int span = 5) {
    int num = uniform(-span, span);
    int den = uniform(1, 3);
    qcluster::Rational r(num, den);
    r.canonicalize();
    return r;
  }

  qcluster::QCoeff qcoeff(int max_terms = 3, int max_twice = 6) {
    std::vector<qcluster::QCoeff::Term> t;
    int n = uniform(0, max_terms);
    for (int i = 0; i < n; ++i) t.emplace_back(uniform(-max_twice, max_twice), rational());
    return qcluster::QCoeff::from_terms(std::move(t));
  }

  qcluster::QCoeff nonzero_qcoeff(int max_terms = 3, int max_twice = 6) {
    for (;;) {
      auto c = qcoeff(max_terms, max_twice);
      if (!c.is_zero()) return c;
    }
  }

  qcluster::IntMatrix skew(int m, int span = 2) {
    qcluster::IntMatrix l = qcluster::IntMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        l(i, j) = uniform(-span, span);
        l(j, i) = -l(i, j);
      }
    return l;
  }

  qcluster::ExpVec expvec(int m, int span = 2) {
    qcluster::ExpVec a(static_cast<std::size_t>(m));
    for (auto& x : a) x = uniform(-span, span);
    return a;
  }

  qcluster::TorusElement torus(const qcluster::FormPtr& form, int max_terms = 3, int span = 2) {
    qcluster::TorusElement x(form);
    int n = uniform(1, max_terms);
    for (int i = 0; i < n; ++i) x.add_term(expvec(form->rank(), span), nonzero_qcoeff(2, 3));
    return x;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qtest
