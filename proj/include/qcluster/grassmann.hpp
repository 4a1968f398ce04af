#pragma once

// Grassmannian combinatorics: k-subsets of [1,n], weak separation, Scott's
// quasi-commutation exponents, and the rectangles seed with its variants x(i).

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qcluster/intmat.hpp"
#include "qcluster/qcoeff.hpp"
#include "qcluster/qseed.hpp"

namespace qcluster {

struct KSubset {
  std::vector<int> elems;  // strictly increasing, 1-based

  int size() const { return static_cast<int>(elems.size()); }
  bool contains(int x) const;
  friend auto operator<=>(const KSubset&, const KSubset&) = default;
};

/// Sorts and validates (range [1,n], no repeats). InvalidParams otherwise.
KSubset make_subset(std::vector<int> elems, int n);

/// `D(1,2,4)`.
std::string to_string(const KSubset& s);
/// Compact digits-only form used in tables, e.g. `124` (n <= 9) or `1.2.10`.
std::string compact(const KSubset& s);

std::vector<KSubset> all_subsets(int k, int n);

bool weakly_separated(const KSubset& i, const KSubset& j);
/// c with Δ^I Δ^J = q^c Δ^J Δ^I; NotWeaklySeparated otherwise.
long long scott_lambda(const KSubset& i, const KSubset& j);

/// The two formulas of Scott's theorem separately; empty when the matching
/// separation condition does not hold.
std::optional<long long> scott_condition1(const KSubset& i, const KSubset& j);
std::optional<long long> scott_condition2(const KSubset& i, const KSubset& j);

/// [j, j+k-1] with indices above n wrapped around.
KSubset cyclic_interval(int j, int k, int n);
/// The n frozen intervals in the order [1,k], [2,k+1], ..., [n,n+k-1].
std::vector<KSubset> frozen_subsets(int k, int n);

struct GridPos {
  int a = 0;
  int b = 0;
  friend auto operator<=>(const GridPos&, const GridPos&) = default;
};

/// [1,a] ∪ [a+b+1, b+k].
KSubset rectangle_label(GridPos p, int k, int n);
/// Mutable grid positions (a in [1,k-1], b in [1,n-k-1]), a descending then b ascending.
std::vector<GridPos> mutable_grid(int k, int n);
/// The label of grid position p in x(i): [1,a-1] ∪ {a+b} ∪ [a+b+2, b+k+1]
/// when a+b ≡ i mod gcd(k,n), the rectangle label otherwise.
KSubset xi_label(GridPos p, int k, int n, int i);

struct GrassmannSeed {
  int k = 0;
  int n = 0;
  std::vector<KSubset> labels;  // mutable first, then frozen_subsets order
  QuantumSeed seed;
};

/// Λ on a list of labels via scott_lambda.
IntMatrix scott_matrix(const std::vector<KSubset>& labels);

/// The rectangles seed with identity frame; InvalidParams unless 2 <= k <= n-2.
GrassmannSeed rectangles_seed(int k, int n);

/// The x(i) seed reached from the rectangles seed by mutation, with its frame
/// over the rectangles torus. Positions follow mutable_grid order.
GrassmannSeed x_i_seed(int k, int n, int i);

/// The seed whose mutable labels are the given k-subsets (in that order),
/// found by Plücker mutations from the rectangles seed; frame over the
/// rectangles torus. BoundExceeded when the search gives up.
GrassmannSeed plucker_seed(int k, int n, const std::vector<KSubset>& mutable_labels);

/// Names torus elements over the rectangles torus as Plücker coordinates by
/// their values at q = 1 on two generic integer samples. Distinct minors can
/// collide on a sample only by accident; two samples make that negligible.
class PluckerLabeler {
 public:
  PluckerLabeler(const GrassmannSeed& rect, std::uint64_t seed);
  std::optional<KSubset> operator()(const TorusElement& x) const;

 private:
  std::vector<std::vector<Rational>> coords_;
  std::vector<std::map<Rational, KSubset>> by_value_;
};

/// Pairwise weak separation of a label list.
bool is_weakly_separated_collection(const std::vector<KSubset>& labels);

// ---- classical (q = 1) shadow --------------------------------------------

/// n column vectors of length k.
using VectorTuple = std::vector<std::vector<Rational>>;

Rational determinant(std::vector<std::vector<Rational>> m);
/// det of the columns listed in J (in increasing order).
Rational plucker_minor(const VectorTuple& v, const KSubset& j);

/// Δ^J(σ_i(v)) for every k-subset J, where σ_i replaces each window
/// (v_p, v_{p+1}), p ≡ i mod d, by (v_{p+1}, w_p) with
/// w_p = det(v_p, v_{p+2..p+k}) / det(v_{p+1}, v_{p+2..p+k}) v_{p+1} - v_p.
/// NotConsecutivelyGeneric when a needed denominator vanishes.
std::map<KSubset, Rational> window_oracle(int k, int n, int i, const VectorTuple& sample);

/// The window map itself and its inverse on vector tuples. The inverse sends
/// (u_p, u_{p+1}) to (c u_p - u_{p+1}, u_p) with
/// c = det(u_{p-k+1..p-1}, u_{p+1}) / det(u_{p-k+1..p-1}, u_p) and needs k | n.
VectorTuple window_map(int k, int n, int i, const VectorTuple& v);
VectorTuple window_map_inverse(int k, int n, int i, const VectorTuple& v);

/// Random k×n sample with every maximal minor nonzero.
VectorTuple random_sample(std::mt19937_64& rng, int k, int n);

}  // namespace qcluster
