#include "qcluster/sampling.hpp"

#include <numeric>

namespace qcluster {

QuantumSeed random_compatible_seed(Rng& rng, int n) {
  std::uniform_int_distribution<int> coin(0, 1), entry(-1, 1);
  std::vector<long long> d(static_cast<std::size_t>(n));
  for (auto& x : d) x = 1 + coin(rng);
  // S = DB skew-symmetric with s_ij divisible by lcm(d_i, d_j) so B is integral.
  IntMatrix b = IntMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      long long l = std::lcm(d[i], d[j]);
      long long s = entry(rng) * l;
      b(i, j) = s / d[i];
      b(j, i) = -s / d[j];
    }
  const int m = 2 * n;
  IntMatrix btilde(m, n);
  btilde.topRows(n) = b;
  btilde.bottomRows(n) = IntMatrix::Identity(n, n);
  IntMatrix dm = IntMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) dm(i, i) = d[i];
  IntMatrix lambda = IntMatrix::Zero(m, m);
  lambda.topRightCorner(n, n) = -dm;
  lambda.bottomLeftCorner(n, n) = dm;
  lambda.bottomRightCorner(n, n) = b.transpose() * dm;
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) labels.push_back((i < n ? "x" : "c") + std::to_string(i < n ? i + 1 : i - n + 1));
  return QuantumSeed(std::move(labels), std::move(btilde), std::move(lambda));
}

}  // namespace qcluster
