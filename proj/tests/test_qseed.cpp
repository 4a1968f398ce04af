#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qcluster/error.hpp"
#include "qcluster/qseed.hpp"
#include "qcluster/sampling.hpp"
#include "support.hpp"

using namespace qcluster;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidParams;
}

// Principal-coefficient seed for an exchange block B with symmetrizer D.
QuantumSeed principal(const IntMatrix& b, const std::vector<long long>& d) {
  const auto n = b.rows();
  IntMatrix bt(2 * n, n);
  bt.topRows(n) = b;
  bt.bottomRows(n) = IntMatrix::Identity(n, n);
  IntMatrix dm = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) dm(i, i) = d[static_cast<std::size_t>(i)];
  IntMatrix l = IntMatrix::Zero(2 * n, 2 * n);
  l.topRightCorner(n, n) = -dm;
  l.bottomLeftCorner(n, n) = dm;
  l.bottomRightCorner(n, n) = b.transpose() * dm;
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < 2 * n; ++i) labels.push_back("x" + std::to_string(i + 1));
  return QuantumSeed(labels, bt, l);
}

IntMatrix mat(int r, int c, std::initializer_list<long long> v) {
  IntMatrix m(r, c);
  auto it = v.begin();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = *it++;
  return m;
}

bool same_data(const QuantumSeed& a, const QuantumSeed& b) {
  return a.btilde() == b.btilde() && a.lambda() == b.lambda() && a.frame() == b.frame();
}

}  // namespace

TEST_CASE("compatible pair validation") {
  IntMatrix b = mat(2, 2, {0, 1, -1, 0});
  QuantumSeed s = principal(b, {1, 1});
  CHECK(s.diagonal() == std::vector<long long>{1, 1});
  IntMatrix bad = s.lambda();
  bad(0, 3) += 1;
  bad(3, 0) -= 1;
  CHECK(code_of([&] { QuantumSeed(s.labels(), s.btilde(), bad); }) == ErrorCode::IncompatiblePair);
  IntMatrix notskew = s.lambda();
  notskew(0, 1) = 5;
  CHECK(code_of([&] { QuantumSeed(s.labels(), s.btilde(), notskew); }) == ErrorCode::NotSkewSymmetric);
  // the identity frame satisfies the Λ-preservation invariant by construction
  CHECK_NOTHROW(s.with_frame(s.frame(), s.ambient()));
  // a frame whose elements commute differently from Λ is refused
  auto frame = s.frame();
  std::swap(frame[0], frame[1]);
  CHECK(code_of([&] { s.with_frame(frame, s.ambient()); }) == ErrorCode::FrameFormMismatch);
}

TEST_CASE("skew-symmetrizer") {
  auto d = skew_symmetrizer(mat(2, 2, {0, 2, -1, 0}));
  REQUIRE(d);
  CHECK((*d)[0] * 2 == -(*d)[1] * -1);
  CHECK_FALSE(skew_symmetrizer(mat(2, 2, {0, 1, 1, 0})));
}

TEST_CASE("rank one mutation reproduces the exchange relation") {
  // x1 x1' = X^{e2} + X^{-?}: B̃ = (0 ; 1), principal coefficients.
  QuantumSeed s = principal(mat(1, 1, {0}), {1});
  QuantumSeed t = mutate(s, 0);
  // x1' = X^{-e1} (X^{e2} q^{Λ(e1,e2)/2} + 1) with Λ(e1,e2) = -1
  auto f = s.form();
  auto expect = TorusElement::monomial(f, {-1, 1}) + TorusElement::monomial(f, {-1, 0});
  CHECK(t.frame()[0] == expect);
  CHECK(is_bar_invariant(t.frame()[0]));
  CHECK(t.labels()[0] == "x1'");
}

TEST_CASE("mutation is an involution and keeps the invariants") {
  QuantumSeed s = principal(mat(2, 2, {0, 1, -1, 0}), {1, 1});
  for (int k = 0; k < 2; ++k) {
    QuantumSeed t = mutate(s, k);
    CHECK(compatible_diagonal(t.btilde(), t.lambda()));
    CHECK(same_data(mutate(t, k), s));
  }
  CHECK(code_of([&] { mutate(s, 2); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("the literal Λ rule breaks compatibility") {
  QuantumSeed s = principal(mat(2, 2, {0, 1, -1, 0}), {1, 1});
  MutateOptions o;
  o.rule = LambdaRule::Literal;
  CHECK(code_of([&] { mutate(s, 0, o); }) == ErrorCode::IncompatiblePair);
}

TEST_CASE("yhat") {
  QuantumSeed s = principal(mat(2, 2, {0, 1, -1, 0}), {1, 1});
  // identity frame: ŷ_i is X^{b_i} literally
  CHECK(yhat(s, 0) == TorusElement::monomial(s.form(), {0, -1, 1, 0}));
  // after mutating at i, ŷ_i is inverted (its support avoids position i)
  for (int i = 0; i < 2; ++i) {
    QuantumSeed t = mutate(s, i);
    CHECK(yhat(t, i) * yhat(s, i) == TorusElement::one(s.form()));
  }
}

TEST_CASE("finite type enumeration counts") {
  // A2: 5 clusters and 5 variables; B2: 6 and 6; A1: 2 and 2.
  auto a2 = enumerate_exchange_graph(principal(mat(2, 2, {0, 1, -1, 0}), {1, 1}), 100);
  CHECK(a2.seeds.size() == 5);
  CHECK(a2.variables.size() == 5);
  auto b2 = enumerate_exchange_graph(principal(mat(2, 2, {0, 2, -1, 0}), {1, 2}), 100);
  CHECK(b2.seeds.size() == 6);
  CHECK(b2.variables.size() == 6);
  auto a1 = enumerate_exchange_graph(principal(mat(1, 1, {0}), {1}), 10);
  CHECK(a1.seeds.size() == 2);
  // A3 linear quiver: 14 clusters, 9 variables
  auto a3 = enumerate_exchange_graph(principal(mat(3, 3, {0, 1, 0, -1, 0, 1, 0, -1, 0}), {1, 1, 1}), 100);
  CHECK(a3.seeds.size() == 14);
  CHECK(a3.variables.size() == 9);
  for (std::size_t s = 0; s < a3.seeds.size(); ++s) {
    CHECK(same_data(mutate_sequence(a3.seeds[0], a3.path_to(static_cast<int>(s))), a3.seeds[s]));
    for (int k = 0; k < 3; ++k) {
      const auto& back = a3.neighbors[static_cast<std::size_t>(a3.neighbors[s][k])];
      CHECK(std::find(back.begin(), back.end(), static_cast<int>(s)) != back.end());
    }
  }
  CHECK(code_of([&] { enumerate_exchange_graph(a3.seeds[0], 5); }) == ErrorCode::BoundExceeded);
}

TEST_CASE("property: random mutation walks keep every invariant") {
  Rng rng(qtest::base_seed() + 5);
  std::uniform_int_distribution<int> size(1, 3);
  int mutations = 0;
  while (mutations < 400) {
    int n = size(rng);
    QuantumSeed s = random_compatible_seed(rng, n);
    std::uniform_int_distribution<int> dir(0, n - 1);
    for (int step = 0; step < 5; ++step) {
      int k = dir(rng);
      QuantumSeed t = mutate(s, k);
      ++mutations;
      auto d = compatible_diagonal(t.btilde(), t.lambda());
      REQUIRE(d);
      CHECK(*d == s.diagonal());
      for (const auto& f : t.frame()) CHECK(is_bar_invariant(f));
      CHECK(has_integer_coefficients(t.frame()[k]));
      CHECK(same_data(mutate(t, k), s));
      s = t;
    }
    CHECK_NOTHROW(s.with_frame(s.frame(), s.ambient()));  // full frame revalidation
  }
}

TEST_CASE("matrix mutation refuses to overflow") {
  IntMatrix b(2, 2);
  b << 0, 1 << 20, -(1 << 20), 0;
  IntMatrix l(2, 2);
  l << 0, 1, -1, 0;
  CHECK_NOTHROW(mutate_btilde(b, 0));
  IntMatrix big(3, 2);
  big << 0, 1 << 20, -(1 << 20), 0, 1 << 20, 1 << 20;
  CHECK(code_of([&] { mutate_btilde(big, 0); }) == ErrorCode::BoundExceeded);
  IntMatrix lam = IntMatrix::Zero(3, 3);
  lam(0, 2) = 1 << 20, lam(2, 0) = -(1 << 20);
  lam(1, 2) = 1 << 20, lam(2, 1) = -(1 << 20);
  IntMatrix bt(3, 2);
  bt << 0, 1, -1, 0, 0, 1 << 12;
  CHECK(code_of([&] { mutate_lambda(lam, bt, 1, LambdaRule::Congruence); }) == ErrorCode::BoundExceeded);
}
