#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

namespace qcluster {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using ExpVec = std::vector<int>;

inline IntMatrix identity_matrix(Eigen::Index n) { return IntMatrix::Identity(n, n); }

inline bool same_matrix(const IntMatrix& a, const IntMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

/// Rows as nested vectors; used by the JSON readers and writers.
std::vector<std::vector<long long>> to_rows(const IntMatrix& m);
IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, Eigen::Index cols_if_empty = 0);

std::string matrix_to_string(const IntMatrix& m);

}  // namespace qcluster
