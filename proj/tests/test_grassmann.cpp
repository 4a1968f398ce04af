#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "qcluster/error.hpp"
#include "qcluster/grassmann.hpp"
#include "qcluster/sampling.hpp"
#include "support.hpp"

using namespace qcluster;

namespace {

KSubset ks(std::initializer_list<int> e, int n = 9) { return make_subset(std::vector<int>(e), n); }

std::vector<std::string> compacts(const std::vector<KSubset>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(compact(s));
  return out;
}

int index_of(const GrassmannSeed& g, const KSubset& s) {
  auto it = std::find(g.labels.begin(), g.labels.end(), s);
  REQUIRE(it != g.labels.end());
  return static_cast<int>(it - g.labels.begin());
}

ExpVec unit_sum(int m, std::initializer_list<int> idx) {
  ExpVec a(static_cast<std::size_t>(m), 0);
  for (int i : idx) a[static_cast<std::size_t>(i)] += 1;
  return a;
}

// Brute force over all splittings J - I = J' ⊔ J'' and I - J = I' ⊔ I''.
bool separated_by_partition(const KSubset& i, const KSubset& j) {
  std::vector<int> jm, im;
  std::set_difference(j.elems.begin(), j.elems.end(), i.elems.begin(), i.elems.end(), std::back_inserter(jm));
  std::set_difference(i.elems.begin(), i.elems.end(), j.elems.begin(), j.elems.end(), std::back_inserter(im));
  auto works = [](const std::vector<int>& outer, const std::vector<int>& inner) {
    for (unsigned mask = 0; mask < (1u << outer.size()); ++mask) {
      bool ok = true;
      for (std::size_t t = 0; t < outer.size() && ok; ++t)
        for (int x : inner) {
          bool low = mask >> t & 1u;
          if (low ? !(outer[t] < x) : !(outer[t] > x)) ok = false;
        }
      if (ok) return true;
    }
    return false;
  };
  return works(jm, im) || works(im, jm);
}

}  // namespace

TEST_CASE("weak separation and Scott exponents") {
  CHECK(weakly_separated(ks({1, 2}), ks({3, 4})));
  CHECK(scott_lambda(ks({1, 2}), ks({3, 4})) == 2);
  CHECK(scott_lambda(ks({1, 2, 3}), ks({1, 4, 5})) == 2);
  CHECK(scott_lambda(ks({1, 2, 4}), ks({1, 3, 4})) == 1);
  CHECK(scott_lambda(ks({1, 2, 5}), ks({1, 3, 4})) == 0);
  CHECK(weakly_separated(ks({1, 3}), ks({1, 3})));
  CHECK_FALSE(weakly_separated(ks({1, 3}), ks({2, 4})));
  try {
    scott_lambda(ks({1, 3}), ks({2, 4}));
    FAIL("expected NotWeaklySeparated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotWeaklySeparated);
  }
  for (auto [k, n] : {std::pair{2, 4}, {2, 5}, {2, 6}, {3, 6}}) {
    auto all = all_subsets(k, n);
    for (const auto& i : all)
      for (const auto& j : all) {
        CHECK(weakly_separated(i, j) == separated_by_partition(i, j));
        if (!weakly_separated(i, j)) continue;
        CHECK(scott_lambda(i, j) == -scott_lambda(j, i));
        auto c1 = scott_condition1(i, j), c2 = scott_condition2(i, j);
        if (c1 && c2) CHECK(*c1 == *c2);
      }
  }
}

TEST_CASE("frozen intervals") {
  CHECK(compacts(frozen_subsets(2, 4)) == std::vector<std::string>{"12", "23", "34", "14"});
  CHECK(compacts(frozen_subsets(3, 6)) == std::vector<std::string>{"123", "234", "345", "456", "156", "126"});
  CHECK(cyclic_interval(5, 3, 6) == ks({1, 5, 6}, 6));
}

TEST_CASE("rectangles seeds are compatible and weakly separated") {
  for (int k = 2; k <= 4; ++k)
    for (int n = k + 2; n <= 8; ++n) {
      CAPTURE(k);
      CAPTURE(n);
      auto g = rectangles_seed(k, n);
      CHECK(g.seed.n_mutable() == (k - 1) * (n - k - 1));
      CHECK(compatible_diagonal(g.seed.btilde(), g.seed.lambda()));
      CHECK(is_weakly_separated_collection(g.labels));
    }
  auto g24 = rectangles_seed(2, 4);
  CHECK(compacts(g24.labels) == std::vector<std::string>{"13", "12", "23", "34", "14"});
  auto g36 = rectangles_seed(3, 6);
  CHECK(compacts(g36.labels) ==
        std::vector<std::string>{"124", "125", "134", "145", "123", "234", "345", "456", "156", "126"});
  CHECK_THROWS_AS(rectangles_seed(1, 3), Error);
}

TEST_CASE("Gr(3,6) mutation at 124 gives 135") {
  auto g = rectangles_seed(3, 6);
  PluckerLabeler label(g, qtest::base_seed());
  QuantumSeed t = mutate(g.seed, 0);
  auto got = label(t.frame()[0]);
  REQUIRE(got);
  CHECK(*got == ks({1, 3, 5}, 6));
  // x x' = q X^{125 + 134} + X^{123 + 145} over the identity frame.
  const int m = g.seed.rank();
  auto f = g.seed.form();
  auto expect = TorusElement::monomial(f, unit_sum(m, {index_of(g, ks({1, 2, 5})), index_of(g, ks({1, 3, 4}))}),
                                       QCoeff::qpow(HalfInt{2})) +
                TorusElement::monomial(f, unit_sum(m, {index_of(g, ks({1, 2, 3})), index_of(g, ks({1, 4, 5}))}));
  CHECK(exchange_product(g.seed, 0) == expect);
  CHECK(g.seed.frame()[0] * t.frame()[0] == expect);
}

TEST_CASE("Gr(2,4) mutation at 13 gives 24") {
  auto g = rectangles_seed(2, 4);
  PluckerLabeler label(g, qtest::base_seed());
  QuantumSeed t = mutate(g.seed, 0);
  CHECK(label(t.frame()[0]) == ks({2, 4}, 4));
  const int m = g.seed.rank();
  auto f = g.seed.form();
  // q^{-1} Δ12 Δ34 is the normalized monomial [Δ12 Δ34] since Δ12 Δ34 = q² Δ34 Δ12.
  auto expect = TorusElement::monomial(f, unit_sum(m, {index_of(g, ks({1, 2})), index_of(g, ks({3, 4}))})) +
                TorusElement::monomial(f, unit_sum(m, {index_of(g, ks({1, 4})), index_of(g, ks({2, 3}))}),
                                       QCoeff::qpow(HalfInt{2}));
  CHECK(exchange_product(g.seed, 0) == expect);
}

TEST_CASE("Gr(3,6) exchange graph") {
  auto g = rectangles_seed(3, 6);
  PluckerLabeler label(g, qtest::base_seed());
  auto eg = enumerate_exchange_graph(g.seed, 200, [&](const TorusElement& x) {
    auto s = label(x);
    return s ? to_string(*s) : std::string();
  });
  CHECK(eg.seeds.size() == 50);
  CHECK(eg.variables.size() == 16);
  int plucker = 0;
  for (const auto& name : eg.variable_labels) plucker += name.rfind("D(", 0) == 0 ? 1 : 0;
  CHECK(plucker == 14);
  for (const auto& v : eg.variables) {
    CHECK(is_bar_invariant(v));
    CHECK(has_integer_coefficients(v));
  }
}

TEST_CASE("x(i) seeds") {
  auto grid = mutable_grid(3, 6);
  std::vector<KSubset> x1, x2;
  for (auto p : grid) {
    x1.push_back(xi_label(p, 3, 6, 1));
    x2.push_back(xi_label(p, 3, 6, 2));
  }
  CHECK(compacts(x1) == std::vector<std::string>{"124", "146", "134", "145"});
  CHECK(compacts(x2) == std::vector<std::string>{"124", "125", "245", "145"});
  auto rect = rectangles_seed(3, 6);
  PluckerLabeler label(rect, qtest::base_seed() + 1);
  for (int i = 1; i <= 2; ++i) {
    CAPTURE(i);
    auto s = x_i_seed(3, 6, i);
    CHECK(compatible_diagonal(s.seed.btilde(), s.seed.lambda()));
    CHECK(is_weakly_separated_collection(s.labels));
    CHECK(s.seed.lambda() == scott_matrix(s.labels));
    for (int p = 0; p < s.seed.rank(); ++p) CHECK(label(s.seed.frame()[static_cast<std::size_t>(p)]) == s.labels[p]);
    // frozen part untouched
    CHECK(std::equal(s.labels.begin() + 4, s.labels.end(), rect.labels.begin() + 4));
  }
  auto s24 = x_i_seed(2, 4, 1);
  CHECK(compacts(s24.labels)[0] == "13");
  CHECK_THROWS_AS(x_i_seed(2, 5, 1), Error);
}

TEST_CASE("window map") {
  Rng rng(qtest::base_seed() + 2);
  // σ₁(Δ13) = Δ24 and the frozen rows of §Gr(2,4) at q = 1.
  for (int trial = 0; trial < 10; ++trial) {
    auto v = random_sample(rng, 2, 4);
    auto img = window_oracle(2, 4, 1, v);
    auto m = [&](std::initializer_list<int> e) { return plucker_minor(v, ks(e, 4)); };
    CHECK(img.at(ks({1, 3}, 4)) == m({2, 4}));
    CHECK(img.at(ks({1, 2}, 4)) == m({1, 2}));
    CHECK(img.at(ks({3, 4}, 4)) == m({3, 4}));
    CHECK(img.at(ks({1, 4}, 4)) == m({1, 2}) * m({3, 4}) / m({1, 4}));
    CHECK(img.at(ks({2, 3}, 4)) == m({1, 2}) * m({3, 4}) / m({2, 3}));
  }
  for (auto [k, n, d] : {std::tuple{2, 4, 2}, {3, 6, 3}, {2, 6, 2}, {4, 8, 4}})
    for (int i = 1; i < d; ++i)
      for (int trial = 0; trial < 5; ++trial) {
        auto v = random_sample(rng, k, n);
        CHECK(window_map_inverse(k, n, i, window_map(k, n, i, v)) == v);
        CHECK(window_map(k, n, i, window_map_inverse(k, n, i, v)) == v);
      }
  // Gr(3,6), σ₁: 124 ↦ 125 and frozen 234 ↦ 123·345/234.
  for (int trial = 0; trial < 5; ++trial) {
    auto v = random_sample(rng, 3, 6);
    auto img = window_oracle(3, 6, 1, v);
    auto m = [&](std::initializer_list<int> e) { return plucker_minor(v, ks(e, 6)); };
    CHECK(img.at(ks({1, 2, 4}, 6)) == m({1, 2, 5}));
    CHECK(img.at(ks({2, 3, 4}, 6)) == m({1, 2, 3}) * m({3, 4, 5}) / m({2, 3, 4}));
    CHECK(img.at(ks({3, 4, 5}, 6)) == m({3, 4, 5}));
  }
  VectorTuple flat(4, std::vector<Rational>{1, 0});
  CHECK_THROWS_AS(window_map(2, 4, 1, flat), Error);
}
