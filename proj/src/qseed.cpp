#include "qcluster/qseed.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <map>

#include "qcluster/error.hpp"

namespace qcluster {

namespace {

std::atomic<LambdaRule> g_lambda_rule{LambdaRule::Congruence};

long long pos_part(long long x) { return x > 0 ? x : 0; }

}  // namespace

void set_default_lambda_rule(LambdaRule rule) { g_lambda_rule = rule; }
LambdaRule default_lambda_rule() { return g_lambda_rule; }

std::optional<std::vector<long long>> skew_symmetrizer(const IntMatrix& b) {
  const Eigen::Index n = b.rows();
  if (b.cols() != n) return std::nullopt;
  std::vector<Rational> d(static_cast<std::size_t>(n), Rational(0));
  for (Eigen::Index start = 0; start < n; ++start) {
    if (d[start] != 0) continue;
    d[start] = 1;
    std::vector<Eigen::Index> stack{start};
    while (!stack.empty()) {
      Eigen::Index i = stack.back();
      stack.pop_back();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (b(i, j) == 0 && b(j, i) == 0) continue;
        if (b(i, j) == 0 || b(j, i) == 0) return std::nullopt;
        if ((b(i, j) > 0) == (b(j, i) > 0)) return std::nullopt;
        // d_i b_ij = -d_j b_ji
        Rational want = d[i] * Rational(static_cast<long>(b(i, j))) / Rational(static_cast<long>(-b(j, i)));
        if (d[j] == 0) {
          d[j] = want;
          stack.push_back(j);
        } else if (d[j] != want) {
          return std::nullopt;
        }
      }
    }
  }
  mpz_class lcm = 1;
  for (const auto& x : d) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  std::vector<long long> out;
  for (const auto& x : d) {
    Rational v = x * Rational(lcm);
    out.push_back(v.get_num().get_si());
  }
  return out;
}

std::optional<std::vector<long long>> compatible_diagonal(const IntMatrix& btilde, const IntMatrix& lambda) {
  if (lambda.rows() != btilde.rows() || lambda.cols() != btilde.rows()) return std::nullopt;
  const IntMatrix p = btilde.transpose() * lambda;
  std::vector<long long> d;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      if (i == j) continue;
      if (p(i, j) != 0) return std::nullopt;
    }
    if (p(i, i) <= 0) return std::nullopt;
    d.push_back(p(i, i));
  }
  return d;
}

QuantumSeed::QuantumSeed(std::vector<std::string> labels, IntMatrix btilde, IntMatrix lambda,
                         std::optional<std::vector<TorusElement>> frame, FormPtr ambient)
    : labels_(std::move(labels)), btilde_(std::move(btilde)) {
  const Eigen::Index m = btilde_.rows();
  if (static_cast<Eigen::Index>(labels_.size()) != m)
    throw Error(ErrorCode::ShapeMismatch, "label count differs from the rows of B̃");
  if (btilde_.cols() > m) throw Error(ErrorCode::ShapeMismatch, "B̃ has more columns than rows");
  if (lambda.rows() != m || lambda.cols() != m) throw Error(ErrorCode::ShapeMismatch, "Λ is not m×m");
  form_ = make_form(std::move(lambda));  // NotSkewSymmetric
  if (!skew_symmetrizer(exchange_block()))
    throw Error(ErrorCode::NotSkewSymmetrizable, "the exchange block is not skew-symmetrizable");
  auto d = compatible_diagonal(btilde_, form_->matrix());
  if (!d) throw Error(ErrorCode::IncompatiblePair, "B̃ᵗΛ is not of the form (D | 0) with D positive diagonal");
  d_ = std::move(*d);
  if (!frame) {
    ambient_ = form_;
    for (int i = 0; i < rank(); ++i) frame_.push_back(TorusElement::generator(form_, i));
    return;
  }
  if (!ambient) throw Error(ErrorCode::FrameFormMismatch, "a frame needs its ambient form");
  ambient_ = std::move(ambient);
  frame_ = std::move(*frame);
  validate_frame();
}

QuantumSeed::QuantumSeed(Unchecked, std::vector<std::string> labels, IntMatrix btilde, FormPtr form,
                         std::vector<TorusElement> frame, FormPtr ambient, std::vector<long long> d)
    : labels_(std::move(labels)),
      btilde_(std::move(btilde)),
      form_(std::move(form)),
      frame_(std::move(frame)),
      ambient_(std::move(ambient)),
      d_(std::move(d)) {}

void QuantumSeed::validate_frame() const {
  const int m = rank();
  if (static_cast<int>(frame_.size()) != m) throw Error(ErrorCode::FrameFormMismatch, "frame size differs from rank");
  for (int i = 0; i < m; ++i) {
    const auto& f = frame_[i];
    if (f.is_zero() || !(f.form() == ambient_ || *f.form() == *ambient_))
      throw Error(ErrorCode::FrameFormMismatch, "frame element " + std::to_string(i) + " is not over the ambient torus");
    if (!is_bar_invariant(f))
      throw Error(ErrorCode::FrameFormMismatch, "frame element " + std::to_string(i) + " is not bar-invariant");
    if (i >= n_mutable() && !f.is_monomial())
      throw Error(ErrorCode::FrameFormMismatch, "frozen frame element " + std::to_string(i) + " is not a monomial");
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      auto c = q_commutation(frame_[i], frame_[j]);
      if (!c || *c != form_->matrix()(i, j))
        throw Error(ErrorCode::FrameFormMismatch,
                    "frame elements " + std::to_string(i) + "," + std::to_string(j) + " do not commute as Λ says");
    }
}

QuantumSeed QuantumSeed::permuted(const std::vector<int>& perm) const {
  const int m = rank();
  if (static_cast<int>(perm.size()) != m) throw Error(ErrorCode::ShapeMismatch, "permutation length");
  const int n = n_mutable();
  std::vector<int> seen(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    int p = perm[i];
    if (p < 0 || p >= m || seen[p]++) throw Error(ErrorCode::InvalidParams, "not a permutation");
    if ((i < n) != (p < n)) throw Error(ErrorCode::InvalidParams, "permutation mixes mutable and frozen");
  }
  std::vector<std::string> labels;
  std::vector<TorusElement> frame;
  IntMatrix b(m, n), l(m, m);
  for (int i = 0; i < m; ++i) {
    labels.push_back(labels_[perm[i]]);
    frame.push_back(frame_[perm[i]]);
    for (int j = 0; j < n; ++j) b(i, j) = btilde_(perm[i], perm[j]);
    for (int j = 0; j < m; ++j) l(i, j) = form_->matrix()(perm[i], perm[j]);
  }
  std::vector<long long> d;
  for (int j = 0; j < n; ++j) d.push_back(d_[perm[j]]);
  return QuantumSeed(Unchecked{}, std::move(labels), std::move(b), make_form(std::move(l)), std::move(frame),
                     ambient_, std::move(d));
}

QuantumSeed QuantumSeed::with_frame(std::vector<TorusElement> frame, FormPtr ambient) const {
  return QuantumSeed(labels_, btilde_, form_->matrix(), std::move(frame), std::move(ambient));
}

bool operator==(const QuantumSeed& a, const QuantumSeed& b) {
  return a.labels_ == b.labels_ && same_matrix(a.btilde_, b.btilde_) && *a.form_ == *b.form_ &&
         a.frame_ == b.frame_;
}

QuantumSeed new_seed(std::vector<std::string> labels, IntMatrix btilde, IntMatrix lambda,
                     std::optional<std::vector<TorusElement>> frame, FormPtr ambient) {
  return QuantumSeed(std::move(labels), std::move(btilde), std::move(lambda), std::move(frame), std::move(ambient));
}

namespace {

// Entries feed int exponent vectors, so results must fit in 32 bits.
long long narrow(__int128 v) {
  if (v > std::numeric_limits<int>::max() || v < std::numeric_limits<int>::min())
    throw Error(ErrorCode::BoundExceeded, "mutated matrix entry exceeds the 32-bit range");
  return static_cast<long long>(v);
}

}  // namespace

IntMatrix mutate_btilde(const IntMatrix& b, int k) {
  const Eigen::Index m = b.rows(), n = b.cols();
  if (k < 0 || k >= n) throw Error(ErrorCode::IndexOutOfRange, "mutation direction " + std::to_string(k));
  IntMatrix r(m, n);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      if (j == k || i == k) {
        r(j, i) = -b(j, i);
      } else {
        // b_ji + [-b_jk]_+ b_ki + b_jk [b_ki]_+
        r(j, i) = narrow(__int128{b(j, i)} + __int128{pos_part(-b(j, k))} * b(k, i) +
                         __int128{b(j, k)} * pos_part(b(k, i)));
      }
    }
  return r;
}

IntMatrix mutate_lambda(const IntMatrix& lambda, const IntMatrix& btilde, int k, LambdaRule rule) {
  const Eigen::Index m = lambda.rows();
  if (k < 0 || k >= btilde.cols()) throw Error(ErrorCode::IndexOutOfRange, "mutation direction " + std::to_string(k));
  if (rule == LambdaRule::Congruence) {
    // E^T Λ E where E is the identity with column k replaced
    std::vector<__int128> col(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) col[static_cast<std::size_t>(j)] = j == k ? -1 : pos_part(btilde(j, k));
    std::vector<__int128> lk(static_cast<std::size_t>(m), 0);  // (Λ E)_{jk}
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index l = 0; l < m; ++l) lk[static_cast<std::size_t>(j)] += lambda(j, l) * col[static_cast<std::size_t>(l)];
    IntMatrix r = lambda;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j == k) continue;
      const long long v = narrow(lk[static_cast<std::size_t>(j)]);
      r(j, k) = v;
      r(k, j) = -v;
    }
    __int128 kk = 0;
    for (Eigen::Index j = 0; j < m; ++j) kk += col[static_cast<std::size_t>(j)] * lk[static_cast<std::size_t>(j)];
    r(k, k) = narrow(kk);
    return r;
  }
  IntMatrix r = lambda;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (j == k) continue;
    __int128 acc = lambda(j, k);
    for (Eigen::Index l = 0; l < m; ++l) acc += __int128{lambda(j, l)} * pos_part(btilde(l, k));
    const long long s = narrow(acc);
    r(j, k) = s;
    r(k, j) = -s;
  }
  return r;
}

TorusElement frame_monomial(const QuantumSeed& seed, const ExpVec& a) {
  return normalized_monomial(seed.frame(), seed.lambda(), a);
}

TorusElement exchange_product(const QuantumSeed& seed, int k) {
  const int m = seed.rank();
  if (k < 0 || k >= seed.n_mutable()) throw Error(ErrorCode::IndexOutOfRange, "mutation direction " + std::to_string(k));
  ExpVec plus(static_cast<std::size_t>(m)), minus(static_cast<std::size_t>(m)), ek(static_cast<std::size_t>(m), 0);
  ek[k] = 1;
  for (int j = 0; j < m; ++j) {
    plus[j] = static_cast<int>(pos_part(seed.btilde()(j, k)));
    minus[j] = static_cast<int>(pos_part(-seed.btilde()(j, k)));
  }
  const SkewForm& f = *seed.form();
  // x_k x_k' = q^{Λ(e_k,v+)/2} X^{v+} + q^{Λ(e_k,v-)/2} X^{v-}
  return frame_monomial(seed, plus) * QCoeff::qpow(HalfInt::from_twice(f.pair(ek, plus))) +
         frame_monomial(seed, minus) * QCoeff::qpow(HalfInt::from_twice(f.pair(ek, minus)));
}

QuantumSeed mutate(const QuantumSeed& seed, int k, const MutateOptions& opts) {
  if (k < 0 || k >= seed.n_mutable()) throw Error(ErrorCode::IndexOutOfRange, "mutation direction " + std::to_string(k));
  const LambdaRule rule = opts.rule.value_or(default_lambda_rule());
  IntMatrix b2 = mutate_btilde(seed.btilde(), k);
  IntMatrix l2 = mutate_lambda(seed.lambda(), seed.btilde(), k, rule);
  auto d2 = compatible_diagonal(b2, l2);
  if (!d2 || *d2 != seed.diagonal())
    throw Error(ErrorCode::IncompatiblePair, "mutation in direction " + std::to_string(k) + " broke the compatible pair");
  FormPtr form2 = make_form(std::move(l2));

  TorusElement fresh;
  try {
    fresh = exact_left_divide(seed.frame()[k], exchange_product(seed, k));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotDivisible)
      throw Error(ErrorCode::LaurentViolation, "exchange relation not divisible in direction " + std::to_string(k));
    throw;
  }
  std::vector<TorusElement> frame = seed.frame();
  frame[k] = std::move(fresh);
  if (opts.verify_frame) {
    if (!is_bar_invariant(frame[k]))
      throw Error(ErrorCode::FrameFormMismatch, "mutated variable is not bar-invariant");
    for (int j = 0; j < seed.rank(); ++j) {
      if (j == k) continue;
      auto c = q_commutation(frame[k], frame[j]);
      if (!c || *c != form2->matrix()(k, j))
        throw Error(ErrorCode::FrameFormMismatch,
                    "mutated Λ disagrees with the frame at (" + std::to_string(k) + "," + std::to_string(j) + ")");
    }
  }
  std::vector<std::string> labels = seed.labels();
  labels[k] = opts.new_label.value_or(labels[k] + "'");
  return QuantumSeed(QuantumSeed::Unchecked{}, std::move(labels), std::move(b2), std::move(form2), std::move(frame),
                     seed.ambient(), seed.diagonal());
}

QuantumSeed mutate(const QuantumSeed& seed, int k) { return mutate(seed, k, MutateOptions{}); }

QuantumSeed mutate_sequence(const QuantumSeed& seed, const std::vector<int>& directions) {
  QuantumSeed s = seed;
  for (int k : directions) s = mutate(s, k);
  return s;
}

TorusElement yhat(const QuantumSeed& seed, int i) {
  if (i < 0 || i >= seed.n_mutable()) throw Error(ErrorCode::IndexOutOfRange, "ŷ index " + std::to_string(i));
  ExpVec b(static_cast<std::size_t>(seed.rank()));
  for (int j = 0; j < seed.rank(); ++j) b[j] = static_cast<int>(seed.btilde()(j, i));
  return frame_monomial(seed, b);
}

std::vector<TorusElement> cluster_key(const QuantumSeed& seed) {
  std::vector<TorusElement> key(seed.frame().begin(), seed.frame().begin() + seed.n_mutable());
  std::sort(key.begin(), key.end());
  return key;
}

std::vector<int> ExchangeGraph::path_to(int s) const {
  std::vector<int> path;
  while (parent.at(static_cast<std::size_t>(s)) >= 0) {
    path.push_back(parent_direction[s]);
    s = parent[s];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

ExchangeGraph enumerate_exchange_graph(const QuantumSeed& root, std::size_t max_seeds, const Labeler& labeler) {
  if (max_seeds < 1) throw Error(ErrorCode::InvalidParams, "seed bound must be positive");
  const int n = root.n_mutable();
  ExchangeGraph g;
  std::map<TorusElement, int> var_index;
  std::map<std::vector<int>, int> seed_index;

  auto intern = [&](const TorusElement& v, const std::string& fallback, bool use_labeler) {
    auto it = var_index.find(v);
    if (it != var_index.end()) return it->second;
    int id = static_cast<int>(g.variables.size());
    var_index.emplace(v, id);
    g.variables.push_back(v);
    std::string name = use_labeler && labeler ? labeler(v) : std::string();
    g.variable_labels.push_back(name.empty() ? fallback : std::move(name));
    return id;
  };

  auto add_seed = [&](QuantumSeed s, std::vector<int> ids, int parent, int dir) {
    std::vector<int> key = ids;
    std::sort(key.begin(), key.end());
    auto [it, inserted] = seed_index.try_emplace(key, static_cast<int>(g.seeds.size()));
    if (!inserted) return std::make_pair(it->second, false);
    if (g.seeds.size() >= max_seeds)
      throw Error(ErrorCode::BoundExceeded, "more than " + std::to_string(max_seeds) + " clusters");
    for (int k = 0; k < n; ++k) s.set_label(k, g.variable_labels[ids[k]]);
    g.seeds.push_back(std::move(s));
    g.var_ids.push_back(std::move(ids));
    g.neighbors.emplace_back(static_cast<std::size_t>(n), -1);
    g.parent.push_back(parent);
    g.parent_direction.push_back(dir);
    return std::make_pair(it->second, true);
  };

  std::vector<int> root_ids;
  for (int k = 0; k < n; ++k) root_ids.push_back(intern(root.frame()[k], root.labels()[k], false));
  add_seed(root, root_ids, -1, -1);

  std::deque<int> queue{0};
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int k = 0; k < n; ++k) {
      if (g.neighbors[s][k] >= 0) continue;
      QuantumSeed next = mutate(g.seeds[s], k);
      std::vector<int> ids = g.var_ids[s];
      ids[k] = intern(next.frame()[k], "v" + std::to_string(g.variables.size() + 1), true);
      const int fresh_var = ids[k];
      auto [t, fresh] = add_seed(std::move(next), std::move(ids), s, k);
      g.neighbors[s][k] = t;
      // A cluster reached before may store its variables in another order.
      const auto& tids = g.var_ids[t];
      const int back = static_cast<int>(std::find(tids.begin(), tids.end(), fresh_var) - tids.begin());
      g.neighbors[t][back] = s;
      if (fresh) queue.push_back(t);
    }
  }
  return g;
}

}  // namespace qcluster
