#pragma once

// Quantum seeds (labels, B̃, Λ, frame) and their mutations. Frames are kept
// over one fixed ambient torus so every mutation is an exact torus division.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcluster/intmat.hpp"
#include "qcluster/qtorus.hpp"

namespace qcluster {

/// How Λ is updated by mutation. Congruence is Λ' = EᵀΛE with E the identity
/// except column k = -e_k + [b_k]_+. Literal applies λ'_{jk} = λ_{jk} + Σ_l
/// λ_{jl}[b_lk]_+ with the sign of λ_{jk} kept; it breaks compatibility and
/// exists as a negative control.
enum class LambdaRule { Congruence, Literal };

void set_default_lambda_rule(LambdaRule rule);
LambdaRule default_lambda_rule();

/// Positive d with d_i b_ij = -d_j b_ji, or empty.
std::optional<std::vector<long long>> skew_symmetrizer(const IntMatrix& b);

/// The diagonal of D when B̃ᵗΛ = (D | 0) with D positive diagonal, else empty.
std::optional<std::vector<long long>> compatible_diagonal(const IntMatrix& btilde, const IntMatrix& lambda);

struct MutateOptions {
  std::optional<LambdaRule> rule;  // default_lambda_rule() when empty
  bool verify_frame = true;        // recheck q-commutation of the new frame element
  std::optional<std::string> new_label;
};

class QuantumSeed;
QuantumSeed mutate(const QuantumSeed& seed, int k, const MutateOptions& opts);

class QuantumSeed {
 public:
  /// Validates everything; frame defaults to the identity frame over the
  /// seed's own torus. A supplied frame needs its ambient form.
  QuantumSeed(std::vector<std::string> labels, IntMatrix btilde, IntMatrix lambda,
              std::optional<std::vector<TorusElement>> frame = std::nullopt, FormPtr ambient = nullptr);

  int rank() const { return static_cast<int>(btilde_.rows()); }
  int n_mutable() const { return static_cast<int>(btilde_.cols()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const IntMatrix& btilde() const { return btilde_; }
  IntMatrix exchange_block() const { return btilde_.topRows(btilde_.cols()); }
  const IntMatrix& lambda() const { return form_->matrix(); }
  const FormPtr& form() const { return form_; }
  const std::vector<TorusElement>& frame() const { return frame_; }
  const FormPtr& ambient() const { return ambient_; }
  const std::vector<long long>& diagonal() const { return d_; }

  void set_label(int i, std::string label) { labels_.at(static_cast<std::size_t>(i)) = std::move(label); }

  /// Reorders positions; perm[new] = old. Mutable positions must stay mutable.
  QuantumSeed permuted(const std::vector<int>& perm) const;

  /// Same B̃, Λ and labels with the frame replaced (validated).
  QuantumSeed with_frame(std::vector<TorusElement> frame, FormPtr ambient) const;

  friend bool operator==(const QuantumSeed& a, const QuantumSeed& b);

 private:
  struct Unchecked {};
  QuantumSeed(Unchecked, std::vector<std::string> labels, IntMatrix btilde, FormPtr form,
              std::vector<TorusElement> frame, FormPtr ambient, std::vector<long long> d);
  void validate_frame() const;

  friend QuantumSeed mutate(const QuantumSeed& seed, int k, const MutateOptions& opts);

  std::vector<std::string> labels_;
  IntMatrix btilde_;
  FormPtr form_;
  std::vector<TorusElement> frame_;
  FormPtr ambient_;
  std::vector<long long> d_;
};

QuantumSeed new_seed(std::vector<std::string> labels, IntMatrix btilde, IntMatrix lambda,
                     std::optional<std::vector<TorusElement>> frame = std::nullopt, FormPtr ambient = nullptr);

/// B̃ mutation in direction k.
IntMatrix mutate_btilde(const IntMatrix& btilde, int k);
/// Λ mutation in direction k under the given rule.
IntMatrix mutate_lambda(const IntMatrix& lambda, const IntMatrix& btilde, int k, LambdaRule rule);

QuantumSeed mutate(const QuantumSeed& seed, int k);
QuantumSeed mutate_sequence(const QuantumSeed& seed, const std::vector<int>& directions);

/// Frame evaluation of the seed-local monomial X^a (negative exponents only
/// on single-term frame elements).
TorusElement frame_monomial(const QuantumSeed& seed, const ExpVec& a);

/// x_k x_k' as the two-term sum over the frame.
TorusElement exchange_product(const QuantumSeed& seed, int k);

/// ŷ_i = X^{b_i} evaluated through the frame.
TorusElement yhat(const QuantumSeed& seed, int i);

/// Sorted mutable frame elements: identifies a cluster independent of order.
std::vector<TorusElement> cluster_key(const QuantumSeed& seed);

struct ExchangeGraph {
  std::vector<QuantumSeed> seeds;
  std::vector<std::vector<int>> var_ids;    // per seed, variable index at each mutable position
  std::vector<std::vector<int>> neighbors;  // neighbors[s][k]: seed reached by mutating s at k
  std::vector<int> parent;                  // BFS spanning tree (-1 at the root)
  std::vector<int> parent_direction;
  std::vector<TorusElement> variables;      // mutable cluster variables, discovery order
  std::vector<std::string> variable_labels;

  /// Directions leading from the root to seed s.
  std::vector<int> path_to(int s) const;
};

/// Names a new variable; an empty result falls back to "v<index>".
using Labeler = std::function<std::string(const TorusElement&)>;

/// Breadth-first closure under mutation, deduplicated by cluster; throws
/// BoundExceeded when more than max_seeds clusters appear.
ExchangeGraph enumerate_exchange_graph(const QuantumSeed& seed, std::size_t max_seeds,
                                       const Labeler& labeler = {});

}  // namespace qcluster
