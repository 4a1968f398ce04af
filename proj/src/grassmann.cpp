#include "qcluster/grassmann.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "qcluster/error.hpp"

namespace qcluster {

bool KSubset::contains(int x) const { return std::binary_search(elems.begin(), elems.end(), x); }

KSubset make_subset(std::vector<int> elems, int n) {
  std::sort(elems.begin(), elems.end());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i] < 1 || elems[i] > n)
      throw Error(ErrorCode::InvalidParams, "subset element " + std::to_string(elems[i]) + " outside [1," +
                                                std::to_string(n) + "]");
    if (i && elems[i] == elems[i - 1]) throw Error(ErrorCode::InvalidParams, "repeated subset element");
  }
  return KSubset{std::move(elems)};
}

std::string to_string(const KSubset& s) {
  std::string out = "D(";
  for (std::size_t i = 0; i < s.elems.size(); ++i) out += (i ? "," : "") + std::to_string(s.elems[i]);
  return out + ")";
}

std::string compact(const KSubset& s) {
  bool small = std::all_of(s.elems.begin(), s.elems.end(), [](int x) { return x <= 9; });
  std::string out;
  for (std::size_t i = 0; i < s.elems.size(); ++i) {
    if (!small && i) out += ".";
    out += std::to_string(s.elems[i]);
  }
  return out;
}

std::vector<KSubset> all_subsets(int k, int n) {
  std::vector<KSubset> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), 1);
  for (;;) {
    out.push_back(KSubset{cur});
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

namespace {

std::vector<int> minus(const KSubset& a, const KSubset& b) {
  std::vector<int> out;
  std::set_difference(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(), std::back_inserter(out));
  return out;
}

// Splits `outer` around the block `inner`: (count below min, count above max),
// or empty when some element of outer falls strictly inside inner's range.
std::optional<std::pair<long long, long long>> split_around(const std::vector<int>& outer,
                                                            const std::vector<int>& inner) {
  if (inner.empty()) return std::make_pair(0LL, 0LL);
  long long below = 0, above = 0;
  for (int x : outer) {
    if (x < inner.front()) ++below;
    else if (x > inner.back()) ++above;
    else return std::nullopt;
  }
  return std::make_pair(below, above);
}

void require_same_size(const KSubset& i, const KSubset& j) {
  if (i.size() != j.size()) throw Error(ErrorCode::AmbientMismatch, "subsets of different sizes");
}

}  // namespace

std::optional<long long> scott_condition1(const KSubset& i, const KSubset& j) {
  require_same_size(i, j);
  // J - I = J' ⊔ J'' with J' ≺ I - J ≺ J''; exponent |J''| - |J'|.
  auto s = split_around(minus(j, i), minus(i, j));
  if (!s) return std::nullopt;
  return s->second - s->first;
}

std::optional<long long> scott_condition2(const KSubset& i, const KSubset& j) {
  require_same_size(i, j);
  // I - J = I' ⊔ I'' with I' ≺ J - I ≺ I''; exponent |I'| - |I''|.
  auto s = split_around(minus(i, j), minus(j, i));
  if (!s) return std::nullopt;
  return s->first - s->second;
}

bool weakly_separated(const KSubset& i, const KSubset& j) {
  return scott_condition1(i, j).has_value() || scott_condition2(i, j).has_value();
}

long long scott_lambda(const KSubset& i, const KSubset& j) {
  if (auto c = scott_condition1(i, j)) return *c;
  if (auto c = scott_condition2(i, j)) return *c;
  throw Error(ErrorCode::NotWeaklySeparated, to_string(i) + " and " + to_string(j));
}

KSubset cyclic_interval(int j, int k, int n) {
  std::vector<int> e;
  for (int t = 0; t < k; ++t) e.push_back((j - 1 + t) % n + 1);
  std::sort(e.begin(), e.end());
  return KSubset{std::move(e)};
}

std::vector<KSubset> frozen_subsets(int k, int n) {
  std::vector<KSubset> out;
  for (int j = 1; j <= n; ++j) out.push_back(cyclic_interval(j, k, n));
  return out;
}

KSubset rectangle_label(GridPos p, int k, int n) {
  std::vector<int> e;
  for (int x = 1; x <= p.a; ++x) e.push_back(x);
  for (int x = p.a + p.b + 1; x <= p.b + k; ++x) e.push_back(x);
  return make_subset(std::move(e), n);
}

std::vector<GridPos> mutable_grid(int k, int n) {
  std::vector<GridPos> out;
  for (int a = k - 1; a >= 1; --a)
    for (int b = 1; b <= n - k - 1; ++b) out.push_back({a, b});
  return out;
}

KSubset xi_label(GridPos p, int k, int n, int i) {
  const int d = std::gcd(k, n);
  if (((p.a + p.b - i) % d + d) % d != 0) return rectangle_label(p, k, n);
  std::vector<int> e;
  for (int x = 1; x <= p.a - 1; ++x) e.push_back(x);
  e.push_back(p.a + p.b);
  for (int x = p.a + p.b + 2; x <= p.b + k + 1; ++x) e.push_back(x);
  return make_subset(std::move(e), n);
}

IntMatrix scott_matrix(const std::vector<KSubset>& labels) {
  const auto m = static_cast<Eigen::Index>(labels.size());
  IntMatrix l = IntMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      l(i, j) = scott_lambda(labels[i], labels[j]);
      l(j, i) = -l(i, j);
    }
  return l;
}

bool is_weakly_separated_collection(const std::vector<KSubset>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (!weakly_separated(labels[i], labels[j])) return false;
  return true;
}

namespace {

void check_params(int k, int n) {
  if (k < 2 || n < k + 2)
    throw Error(ErrorCode::InvalidParams, "need 2 <= k <= n-2, got k=" + std::to_string(k) + " n=" + std::to_string(n));
}

std::vector<std::string> label_strings(const std::vector<KSubset>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(to_string(l));
  return out;
}

}  // namespace

GrassmannSeed rectangles_seed(int k, int n) {
  check_params(k, n);
  std::vector<KSubset> labels;
  for (auto p : mutable_grid(k, n)) labels.push_back(rectangle_label(p, k, n));
  const int nm = static_cast<int>(labels.size());
  for (auto& f : frozen_subsets(k, n)) labels.push_back(f);
  const int m = static_cast<int>(labels.size());

  std::map<KSubset, int> index;
  for (int i = 0; i < m; ++i) index.emplace(labels[i], i);
  auto at = [&](int a, int b) { return index.at(rectangle_label({a, b}, k, n)); };

  IntMatrix btilde = IntMatrix::Zero(m, nm);
  auto arrow = [&](int from, int to) {
    if (to < nm) btilde(from, to) += 1;
    if (from < nm) btilde(to, from) -= 1;
  };
  // Every grid point with a <= k-2 and b >= 2 is a vertex (mutable, or
  // frozen on the top row / right column); its diagonal arrow is mutable-bound.
  for (int a = 0; a <= k - 2; ++a)
    for (int b = 2; b <= n - k; ++b) arrow(at(a, b), at(a + 1, b - 1));
  for (auto p : mutable_grid(k, n)) {
    arrow(at(p.a, p.b), at(p.a, p.b + 1));
    arrow(at(p.a, p.b), at(p.a - 1, p.b));
  }
  arrow(at(0, 0), at(k - 1, 1));

  IntMatrix lambda = scott_matrix(labels);
  if (!compatible_diagonal(btilde, lambda)) btilde = -btilde;
  QuantumSeed seed(label_strings(labels), btilde, lambda);
  return GrassmannSeed{k, n, std::move(labels), std::move(seed)};
}

// ---- classical shadow ------------------------------------------------------

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

Rational plucker_minor(const VectorTuple& v, const KSubset& j) {
  const std::size_t k = j.elems.size();
  std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
  for (std::size_t c = 0; c < k; ++c) {
    const auto& col = v.at(static_cast<std::size_t>(j.elems[c] - 1));
    for (std::size_t r = 0; r < k; ++r) m[r][c] = col.at(r);
  }
  return determinant(std::move(m));
}

namespace {

Rational det_of_columns(const VectorTuple& v, const std::vector<int>& cols) {
  const std::size_t k = cols.size();
  std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < k; ++r) m[r][c] = v[static_cast<std::size_t>(cols[c])][r];
  return determinant(std::move(m));
}

int wrap(int idx, int n) { return ((idx % n) + n) % n; }

void check_tuple(int k, int n, int i, const VectorTuple& v) {
  const int d = std::gcd(k, n);
  if (d < 2 || i < 1 || i > d - 1) throw Error(ErrorCode::InvalidParams, "braid index out of range");
  if (static_cast<int>(v.size()) != n) throw Error(ErrorCode::ShapeMismatch, "tuple length differs from n");
  for (const auto& col : v)
    if (static_cast<int>(col.size()) != k) throw Error(ErrorCode::ShapeMismatch, "vector length differs from k");
}

}  // namespace

VectorTuple window_map(int k, int n, int i, const VectorTuple& v) {
  check_tuple(k, n, i, v);
  const int d = std::gcd(k, n);
  VectorTuple out = v;
  for (int p = i - 1; p < n; p += d) {  // 0-based position of v_{i + l d}
    std::vector<int> tail;
    for (int t = 2; t <= k; ++t) tail.push_back(wrap(p + t, n));
    std::vector<int> num_cols{p};
    num_cols.insert(num_cols.end(), tail.begin(), tail.end());
    std::vector<int> den_cols{wrap(p + 1, n)};
    den_cols.insert(den_cols.end(), tail.begin(), tail.end());
    Rational den = det_of_columns(v, den_cols);
    if (den == 0) throw Error(ErrorCode::NotConsecutivelyGeneric, "vanishing consecutive minor");
    Rational ratio = det_of_columns(v, num_cols) / den;
    const auto& vp = v[static_cast<std::size_t>(p)];
    const auto& vq = v[static_cast<std::size_t>(wrap(p + 1, n))];
    std::vector<Rational> w(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) w[r] = ratio * vq[r] - vp[r];
    out[static_cast<std::size_t>(p)] = vq;
    out[static_cast<std::size_t>(wrap(p + 1, n))] = std::move(w);
  }
  return out;
}

VectorTuple window_map_inverse(int k, int n, int i, const VectorTuple& u) {
  check_tuple(k, n, i, u);
  const int d = std::gcd(k, n);
  // With d = k the window at p sees exactly one vector of the next window, so
  // each lost scalar is recovered from a single determinant ratio.
  if (d != k) throw Error(ErrorCode::InvalidParams, "inverse window map needs k to divide n");
  VectorTuple out = u;
  for (int p = i - 1; p < n; p += d) {
    std::vector<int> head;  // u_{p-k+1}, ..., u_{p-1}
    for (int t = k - 1; t >= 1; --t) head.push_back(wrap(p - t, n));
    std::vector<int> num_cols{wrap(p + 1, n)};
    num_cols.insert(num_cols.end(), head.begin(), head.end());
    std::vector<int> den_cols{p};
    den_cols.insert(den_cols.end(), head.begin(), head.end());
    Rational den = det_of_columns(u, den_cols);
    if (den == 0) throw Error(ErrorCode::NotConsecutivelyGeneric, "vanishing consecutive minor");
    Rational ratio = det_of_columns(u, num_cols) / den;
    const auto& up = u[static_cast<std::size_t>(p)];
    const auto& uq = u[static_cast<std::size_t>(wrap(p + 1, n))];
    std::vector<Rational> w(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) w[r] = ratio * up[r] - uq[r];
    out[static_cast<std::size_t>(p)] = std::move(w);
    out[static_cast<std::size_t>(wrap(p + 1, n))] = up;
  }
  return out;
}

std::map<KSubset, Rational> window_oracle(int k, int n, int i, const VectorTuple& sample) {
  VectorTuple image = window_map(k, n, i, sample);
  std::map<KSubset, Rational> out;
  for (const auto& j : all_subsets(k, n)) out.emplace(j, plucker_minor(image, j));
  return out;
}

VectorTuple random_sample(std::mt19937_64& rng, int k, int n) {
  std::uniform_int_distribution<int> entry(-9, 9);
  for (;;) {
    VectorTuple v(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(k)));
    for (auto& col : v)
      for (auto& x : col) x = entry(rng);
    bool generic = true;
    for (const auto& j : all_subsets(k, n))
      if (plucker_minor(v, j) == 0) {
        generic = false;
        break;
      }
    if (generic) return v;
  }
}

// ---- x(i) ------------------------------------------------------------------

PluckerLabeler::PluckerLabeler(const GrassmannSeed& rect, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto subsets = all_subsets(rect.k, rect.n);
  while (by_value_.size() < 2) {
    VectorTuple v = random_sample(rng, rect.k, rect.n);
    std::map<Rational, KSubset> by_value;
    for (const auto& j : subsets) by_value.emplace(plucker_minor(v, j), j);
    if (by_value.size() < subsets.size()) continue;  // two minors collide; draw again
    std::vector<Rational> coords;
    for (const auto& l : rect.labels) coords.push_back(plucker_minor(v, l));
    coords_.push_back(std::move(coords));
    by_value_.push_back(std::move(by_value));
  }
}

std::optional<KSubset> PluckerLabeler::operator()(const TorusElement& x) const {
  std::optional<KSubset> found;
  for (std::size_t s = 0; s < coords_.size(); ++s) {
    auto it = by_value_[s].find(evaluate_classical(x, coords_[s]));
    if (it == by_value_[s].end()) return std::nullopt;
    if (found && *found != it->second) return std::nullopt;
    found = it->second;
  }
  return found;
}


namespace {

struct SearchState {
  QuantumSeed seed;
  std::vector<KSubset> labels;
};

}  // namespace

GrassmannSeed x_i_seed(int k, int n, int i) {
  check_params(k, n);
  const int d = std::gcd(k, n);
  if (d < 2 || i < 1 || i > d - 1)
    throw Error(ErrorCode::InvalidParams, "x(i) needs gcd(k,n) >= 2 and 1 <= i <= gcd(k,n)-1");
  std::vector<KSubset> labels;
  for (auto p : mutable_grid(k, n)) labels.push_back(xi_label(p, k, n, i));
  return plucker_seed(k, n, labels);
}

GrassmannSeed plucker_seed(int k, int n, const std::vector<KSubset>& mutable_labels) {
  check_params(k, n);
  GrassmannSeed rect = rectangles_seed(k, n);
  const int nm = rect.seed.n_mutable();
  if (static_cast<int>(mutable_labels.size()) != nm)
    throw Error(ErrorCode::SizeMismatch, "expected " + std::to_string(nm) + " mutable labels");

  std::vector<KSubset> target = mutable_labels;
  for (auto& f : frozen_subsets(k, n)) target.push_back(f);
  if (!is_weakly_separated_collection(target))
    throw Error(ErrorCode::NotWeaklySeparated, "labels are not pairwise weakly separated");
  const std::set<KSubset> target_set(target.begin(), target.begin() + nm);

  PluckerLabeler label_of(rect, 0x5eedULL + static_cast<std::uint64_t>(k * 131 + n * 7));
  auto missing = [&](const std::vector<KSubset>& labels) {
    int c = 0;
    for (int p = 0; p < nm; ++p) c += target_set.count(labels[p]) ? 0 : 1;
    return c;
  };

  // Breadth-first search over Plücker-labelled seeds, expanding moves that
  // bring in a target label first; bounded to keep failure loud and quick.
  std::deque<SearchState> queue;
  std::set<std::vector<KSubset>> seen;
  auto key = [&](std::vector<KSubset> labels) {
    std::sort(labels.begin(), labels.begin() + nm);
    return labels;
  };
  queue.push_back({rect.seed, rect.labels});
  seen.insert(key(rect.labels));
  std::optional<SearchState> found;
  const std::size_t bound = 20000;
  while (!queue.empty() && !found) {
    SearchState cur = std::move(queue.front());
    queue.pop_front();
    if (missing(cur.labels) == 0) {
      found = std::move(cur);
      break;
    }
    std::vector<SearchState> greedy, other;
    for (int p = 0; p < nm; ++p) {
      QuantumSeed next = mutate(cur.seed, p);
      auto lab = label_of(next.frame()[p]);
      if (!lab) continue;
      std::vector<KSubset> labels = cur.labels;
      labels[p] = *lab;
      if (!seen.insert(key(labels)).second) continue;
      next.set_label(p, to_string(*lab));
      (target_set.count(*lab) ? greedy : other).push_back({std::move(next), std::move(labels)});
    }
    if (seen.size() > bound) throw Error(ErrorCode::BoundExceeded, "cluster search exceeded its bound");
    for (auto& s : greedy) queue.push_front(std::move(s));
    for (auto& s : other) queue.push_back(std::move(s));
  }
  if (!found) throw Error(ErrorCode::BoundExceeded, "cluster not reached by Plücker mutations");

  std::vector<int> perm(static_cast<std::size_t>(target.size()));
  for (int p = 0; p < static_cast<int>(target.size()); ++p) {
    auto it = std::find(found->labels.begin(), found->labels.end(), target[p]);
    perm[p] = static_cast<int>(it - found->labels.begin());
  }
  QuantumSeed seed = found->seed.permuted(perm);
  return GrassmannSeed{k, n, std::move(target), std::move(seed)};
}

}  // namespace qcluster
