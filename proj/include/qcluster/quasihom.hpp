#pragma once

// Quasi-homomorphisms given by R = [[I, 0], [H, L]]: f(X^a) = X'^{Ra}.

#include <optional>
#include <utility>

#include "qcluster/intmat.hpp"
#include "qcluster/qseed.hpp"
#include "qcluster/qtorus.hpp"
#include "qcluster/report.hpp"

namespace qcluster {

struct QuasiHomData {
  IntMatrix H;  // (m' - n) x n
  IntMatrix L;  // (m' - n) x (m - n)
  IntMatrix R;  // m' x m
};

/// ShapeMismatch when H and L have different row counts.
QuasiHomData build_R(const IntMatrix& H, const IntMatrix& L);

/// R a; ShapeMismatch when the length of a is not R.cols().
ExpVec apply_monomial(const IntMatrix& R, const ExpVec& a);

/// f(X^a) computed as the ordered product q^{-1/2 Σ_{i<j} a_i a_j λ_ij}
/// X'^{a_1 r_1} ... X'^{a_m r_m} in the target's own torus. Equals X'^{Ra}
/// exactly when RᵗΛ'R = Λ holds on the support of a.
TorusElement transport_monomial(const IntMatrix& lambda, const FormPtr& target_form, const IntMatrix& R,
                                const ExpVec& a);

/// Conditions (a) B = B', (b) block shape of R, (c) RB̃ = B̃', (d) RᵗΛ'R = Λ
/// and (e) f(ŷ_i) = ŷ'_i, each reported separately.
Report check_quasi_hom(const QuantumSeed& source, const QuantumSeed& target, const IntMatrix& R);

/// R with column k replaced by 2e'_k - r_k + R[b_k]_+ - [b'_k]_+, the
/// exponent of f(x_k') over the mutated target seed. When h_k = 0 this is
/// e'_k + R[b_k]_+ - [b'_k]_+.
IntMatrix mutate_R(const IntMatrix& R, const IntMatrix& btilde, const IntMatrix& btilde_target, int k);

/// Mutates both seeds at k (exchange data only) and reruns check_quasi_hom
/// with mutate_R.
Report check_mutation_compat(const QuantumSeed& source, const QuantumSeed& target, const IntMatrix& R, int k);

/// Composite R of g∘f is R_g R_f.
IntMatrix compose_R(const IntMatrix& r_g, const IntMatrix& r_f);

struct Proportionality {
  int twice_ell = 0;  // x = q^{twice_ell / 2} X^p y
  ExpVec p;           // zero outside the frozen coordinates
};

/// x = q^{ℓ/2} X^p y with p supported on `frozen`, or empty. The candidate
/// shift is the difference of the leading exponents; it is then verified on
/// the whole element.
std::optional<Proportionality> proportional(const TorusElement& x, const TorusElement& y,
                                            const std::vector<int>& frozen);

}  // namespace qcluster
