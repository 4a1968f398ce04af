#pragma once

// The braid generators σ_i^{±1} on C_q[Gr(k,n)].
//
// Two representations meet here. Images are computed in the torus of the
// rectangles seed by replaying mutations from x(i) with the base images as
// frame (a "shadow" seed), then matched against a catalog of known cluster
// variables up to a q-power and a frozen monomial. Relations are decided on
// the other side, as LocalizedPluckerExpr equalities in the quantum matrix
// algebra.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcluster/grassmann.hpp"
#include "qcluster/qmatrix.hpp"
#include "qcluster/quasihom.hpp"
#include "qcluster/report.hpp"

namespace qcluster {

/// Plücker context with the named non-Plücker variables of small cases
/// (y and z for Gr(3,6)).
std::shared_ptr<PluckerContext> make_grassmann_context(int k, int n);

// ---- catalog of cluster variables over the rectangles torus ---------------

struct CatalogEntry {
  std::string name;              // "D(1,2,4)", "y", or "v<index>"
  std::optional<KSubset> label;  // Plücker label
  int frozen = -1;               // index in frozen_subsets order
  TorusElement torus;
  std::optional<LocalizedPluckerExpr> expr;  // empty for unnamed non-Plücker variables
};

class VariableCatalog {
 public:
  enum class Scope {
    AllClusterVariables,  // full exchange graph; finite type only
    PluckerOnly,          // Plücker coordinates reached through Plücker clusters
  };

  /// BoundExceeded when more than max_seeds clusters are visited.
  static std::shared_ptr<const VariableCatalog> build(ContextPtr ctx, Scope scope, std::size_t max_seeds = 5000);

  int k() const { return rect_.k; }
  int n() const { return rect_.n; }
  Scope scope() const { return scope_; }
  const ContextPtr& context() const { return ctx_; }
  const GrassmannSeed& rect() const { return rect_; }
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  /// Populated for AllClusterVariables.
  const std::optional<ExchangeGraph>& graph() const { return graph_; }
  /// Catalog index of each exchange-graph variable.
  const std::vector<int>& graph_entry() const { return graph_entry_; }

  int index_of(const KSubset& j) const;          // -1 when absent
  int index_of(const std::string& name) const;  // -1 when absent
  int index_of(const TorusElement& x) const;    // exact match, -1 when absent
  /// Rectangles-torus positions of the frozen variables, frozen order.
  const std::vector<int>& frozen_positions() const { return frozen_pos_; }

  /// x = q^{ℓ/2} X^p w for a non-frozen entry w, or w = -1 when x is a
  /// frozen monomial; empty when neither.
  std::optional<std::pair<int, Proportionality>> factor(const TorusElement& x) const;

  /// The expression evaluated in the rectangles torus.
  TorusElement torus_of(const LocalizedPluckerExpr& e) const;

 private:
  explicit VariableCatalog(GrassmannSeed rect) : rect_(std::move(rect)) {}
  int add(CatalogEntry e);

  Scope scope_ = Scope::AllClusterVariables;
  ContextPtr ctx_;
  GrassmannSeed rect_;
  std::vector<CatalogEntry> entries_;
  std::optional<ExchangeGraph> graph_;
  std::vector<int> graph_entry_;
  std::vector<int> frozen_pos_;
  std::map<KSubset, int> by_label_;
  std::map<std::string, int> by_name_;
  std::map<TorusElement, int> by_torus_;
  std::map<std::vector<ExpVec>, std::vector<int>> by_shape_;
};

using CatalogPtr = std::shared_ptr<const VariableCatalog>;

// ---- generators -----------------------------------------------------------

struct BraidGenerator {
  int i = 1;
  int sign = 1;
  friend bool operator==(const BraidGenerator&, const BraidGenerator&) = default;
};

using BraidWord = std::vector<BraidGenerator>;

/// "s1 s2^-1 s1"; ParseError otherwise. The empty string is the empty word.
BraidWord parse_braid_word(std::string_view text);
std::string to_string(const BraidWord& w);

/// perm[j-1] = σ̄_i(j): the product of the transpositions (jd+i, jd+i+1).
std::vector<int> sigma_bar(int n, int d, int i);
KSubset permute_subset(const std::vector<int>& perm, const KSubset& s);

/// R = [[I,0],[0,L]]: column f of L is -e_f + e_{f-1} + e_{f+1} (cyclic)
/// when the frozen interval [j, j+k-1], j = f+1, has j ≡ i+1 mod d, and e_f
/// otherwise.
QuasiHomData R_sigma(int k, int n, int i);

/// σ_i on the labels of x(i) and the frozens, straight from the definition.
std::map<KSubset, LocalizedPluckerExpr> sigma_base_images(const ContextPtr& ctx, int i);

struct SigmaSeeds {
  GrassmannSeed source;  // x(i)
  GrassmannSeed target;  // mutable labels σ̄_i(I), same frozens
  QuasiHomData R;
};

/// x(i), its image seed and R_sigma.
SigmaSeeds sigma_seeds(int k, int n, int i);

struct SigmaImage {
  TorusElement torus;     // over the rectangles torus
  int target = -1;        // catalog entry; -1 when the image is a frozen monomial
  Proportionality factor;  // torus = q^{ℓ/2} X^p target
  std::optional<LocalizedPluckerExpr> expr;
};

struct SigmaTable {
  int i = 1;
  int sign = 1;
  CatalogPtr catalog;
  IntMatrix L;
  std::map<int, SigmaImage> images;  // by catalog entry

  const SigmaImage* find(int entry) const;
  /// UnknownSymbol when J has no tabulated image or the image has no
  /// Plücker expansion.
  const LocalizedPluckerExpr& plucker_image(const KSubset& j) const;
  /// Bracket text such as "[D(1,2,6) D(1,5,6)^-1 D(1,4,5)]", with a q-power
  /// prefix when the image is not the bar-invariant bracket.
  std::string render(int entry) const;
};

/// Images of every catalog entry reachable from x(i) (exactly every entry
/// for AllClusterVariables). FactorizationFailed when an image is not a
/// q-power times a frozen monomial times a known variable, or when two
/// mutation paths disagree. PluckerOnly tables may be partial: images that
/// leave the catalog are skipped and the replay stops at max_seeds.
SigmaTable extend_sigma_table(const CatalogPtr& catalog, int i, std::size_t max_seeds = 5000);

/// σ^{-1} from σ: if σ(u) = q^{ℓ/2} X^p w then σ^{-1}(w) = q^{-ℓ/2} X^{-Lp} u.
/// NotBijective when some entry is hit twice.
SigmaTable invert_sigma(const SigmaTable& table);

/// Lazily built tables per generator; safe to share between threads.
class SigmaCache {
 public:
  explicit SigmaCache(CatalogPtr catalog) : catalog_(std::move(catalog)) {}
  const CatalogPtr& catalog() const { return catalog_; }
  const SigmaTable& get(int i, int sign);

 private:
  CatalogPtr catalog_;
  std::recursive_mutex mutex_;
  std::map<std::pair<int, int>, std::unique_ptr<SigmaTable>> tables_;
};

/// Multiplicative-linear extension of the tabulated images; the rightmost
/// generator acts first.
LocalizedPluckerExpr apply_sigma(const BraidWord& word, const LocalizedPluckerExpr& x, SigmaCache& cache);

// ---- verification -----------------------------------------------------------

struct Relation {
  std::string name;
  std::string category;  // "quasi-commutation", "exchange", "plucker"
  LocalizedPluckerExpr lhs;
  LocalizedPluckerExpr rhs;
};

/// Quasi-commutation of every weakly separated pair of non-frozen Plücker
/// coordinates, and the exchange relations of the enumerated exchange graph
/// whose variables all have Plücker expansions (AllClusterVariables only).
std::vector<Relation> relation_corpus(const CatalogPtr& catalog);

/// For each relation: confirm it holds, then that σ_word of both sides agree.
/// A relation that does not hold is reported as rejected, not σ-tested.
Report verify_preservation(const BraidWord& word, const std::vector<Relation>& corpus, SigmaCache& cache,
                           int jobs = 1);

/// σ_iσ_jσ_i = σ_jσ_iσ_j (|i-j| = 1) or σ_iσ_j = σ_jσ_i (|i-j| > 1) on the
/// given expressions. InvalidParams unless 1 <= i, j <= d-1 and i != j.
Report verify_braid_relation(int i, int j, const std::vector<std::pair<std::string, LocalizedPluckerExpr>>& targets,
                             SigmaCache& cache, int jobs = 1);

/// Every Plücker coordinate, then every named variable of the context.
std::vector<std::pair<std::string, LocalizedPluckerExpr>> braid_targets(const ContextPtr& ctx);

}  // namespace qcluster
