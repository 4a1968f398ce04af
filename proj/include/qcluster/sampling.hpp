#pragma once

// Random instances shared by the property suites and the acceptance runner.

#include <cstdint>
#include <random>
#include <vector>

#include "qcluster/qcoeff.hpp"
#include "qcluster/qseed.hpp"

namespace qcluster {

using Rng = std::mt19937_64;

/// A compatible seed with principal-style coefficients: B̃ = (B ; I_n) and
/// Λ = [[0, -D], [D, BᵗD]] where DB is skew-symmetric, D diagonal in {1,2}.
/// The exchange block has entries of absolute value at most 2 so random
/// mutation stays cheap.
QuantumSeed random_compatible_seed(Rng& rng, int n_mutable);

}  // namespace qcluster
