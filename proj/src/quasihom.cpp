#include "qcluster/quasihom.hpp"

#include <sstream>

#include "qcluster/error.hpp"

namespace qcluster {

namespace {

IntMatrix positive_part(const IntMatrix& v) { return v.cwiseMax(0); }

std::string entry(const char* what, Eigen::Index i, Eigen::Index j, long long got, long long want) {
  std::ostringstream os;
  os << what << "(" << i << "," << j << ") = " << got << ", expected " << want;
  return os.str();
}

// First differing entry of two same-shape matrices, or empty.
std::string first_difference(const char* what, const IntMatrix& got, const IntMatrix& want) {
  if (got.rows() != want.rows() || got.cols() != want.cols()) {
    std::ostringstream os;
    os << what << " is " << got.rows() << "x" << got.cols() << ", expected " << want.rows() << "x" << want.cols();
    return os.str();
  }
  for (Eigen::Index i = 0; i < got.rows(); ++i)
    for (Eigen::Index j = 0; j < got.cols(); ++j)
      if (got(i, j) != want(i, j)) return entry(what, i, j, got(i, j), want(i, j));
  return {};
}

Report check_matrices(const IntMatrix& bt, const IntMatrix& lambda, const IntMatrix& bt2, const IntMatrix& lambda2,
                      const IntMatrix& R) {
  const Eigen::Index n = bt.cols();
  if (bt2.cols() != n) throw Error(ErrorCode::ShapeMismatch, "seeds have different numbers of mutable variables");
  if (R.rows() != bt2.rows() || R.cols() != bt.rows())
    throw Error(ErrorCode::ShapeMismatch, "R must be " + std::to_string(bt2.rows()) + "x" + std::to_string(bt.rows()));
  Report rep;

  std::string d = first_difference("B'", bt2.topRows(n), bt.topRows(n));
  rep.add("(a) B = B'", d.empty(), d);

  std::string shape;
  for (Eigen::Index i = 0; i < n && shape.empty(); ++i)
    for (Eigen::Index j = 0; j < R.cols() && shape.empty(); ++j) {
      long long want = i == j ? 1 : 0;
      if (R(i, j) != want) shape = entry("R", i, j, R(i, j), want);
    }
  rep.add("(b) R = [[I,0],[H,L]]", shape.empty(), shape);

  d = first_difference("RB~", R * bt, bt2);
  rep.add("(c) RB~ = B~'", d.empty(), d);

  d = first_difference("R^t L' R", R.transpose() * lambda2 * R, lambda);
  rep.add("(d) R^t Lambda' R = Lambda", d.empty(), d);

  std::string yhat;
  if (rep.checks[2].pass || rep.checks[3].pass) {
    FormPtr form2 = make_form(lambda2);
    for (Eigen::Index i = 0; i < n && yhat.empty(); ++i) {
      ExpVec b(static_cast<std::size_t>(bt.rows())), b2(static_cast<std::size_t>(bt2.rows()));
      for (Eigen::Index r = 0; r < bt.rows(); ++r) b[static_cast<std::size_t>(r)] = static_cast<int>(bt(r, i));
      for (Eigen::Index r = 0; r < bt2.rows(); ++r) b2[static_cast<std::size_t>(r)] = static_cast<int>(bt2(r, i));
      TorusElement got = transport_monomial(lambda, form2, R, b);
      if (!(got == TorusElement::monomial(form2, b2)))
        yhat = "f(yhat_" + std::to_string(i) + ") = " + to_string(got);
    }
  } else {
    yhat = "skipped: neither (c) nor (d) holds";
  }
  rep.add("(e) f(yhat_i) = yhat'_i", yhat.empty(), yhat);
  return rep;
}

}  // namespace

QuasiHomData build_R(const IntMatrix& H, const IntMatrix& L) {
  if (H.rows() != L.rows())
    throw Error(ErrorCode::ShapeMismatch, "H and L need the same number of rows");
  const Eigen::Index n = H.cols();
  IntMatrix R = IntMatrix::Zero(n + H.rows(), n + L.cols());
  R.topLeftCorner(n, n) = IntMatrix::Identity(n, n);
  R.bottomLeftCorner(H.rows(), n) = H;
  R.bottomRightCorner(L.rows(), L.cols()) = L;
  return {H, L, std::move(R)};
}

ExpVec apply_monomial(const IntMatrix& R, const ExpVec& a) {
  if (static_cast<Eigen::Index>(a.size()) != R.cols())
    throw Error(ErrorCode::ShapeMismatch, "exponent vector has length " + std::to_string(a.size()) + ", R has " +
                                              std::to_string(R.cols()) + " columns");
  ExpVec out(static_cast<std::size_t>(R.rows()), 0);
  for (Eigen::Index i = 0; i < R.rows(); ++i) {
    long long s = 0;
    for (Eigen::Index j = 0; j < R.cols(); ++j) s += R(i, j) * a[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = static_cast<int>(s);
  }
  return out;
}

TorusElement transport_monomial(const IntMatrix& lambda, const FormPtr& target_form, const IntMatrix& R,
                                const ExpVec& a) {
  const auto m = static_cast<Eigen::Index>(a.size());
  if (m != R.cols() || lambda.rows() != m || target_form->rank() != R.rows())
    throw Error(ErrorCode::ShapeMismatch, "transport_monomial: inconsistent sizes");
  long long twice = 0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) twice -= a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)] * lambda(i, j);
  TorusElement out = TorusElement::monomial(target_form, ExpVec(static_cast<std::size_t>(R.rows()), 0),
                                            QCoeff::qpow(HalfInt::from_twice(twice)));
  for (Eigen::Index j = 0; j < m; ++j) {
    int e = a[static_cast<std::size_t>(j)];
    if (e == 0) continue;
    ExpVec r(static_cast<std::size_t>(R.rows()));
    for (Eigen::Index i = 0; i < R.rows(); ++i) r[static_cast<std::size_t>(i)] = static_cast<int>(R(i, j));
    out = out * power(TorusElement::monomial(target_form, r), e);
  }
  return out;
}

Report check_quasi_hom(const QuantumSeed& source, const QuantumSeed& target, const IntMatrix& R) {
  return check_matrices(source.btilde(), source.lambda(), target.btilde(), target.lambda(), R);
}

IntMatrix mutate_R(const IntMatrix& R, const IntMatrix& btilde, const IntMatrix& btilde_target, int k) {
  if (k < 0 || k >= btilde.cols() || btilde_target.cols() != btilde.cols())
    throw Error(ErrorCode::IndexOutOfRange, "mutate_R: bad direction " + std::to_string(k));
  IntMatrix out = R;
  IntMatrix col = R * positive_part(btilde.col(k)) - positive_part(btilde_target.col(k)) - R.col(k);
  col(k) += 2;
  out.col(k) = col;
  return out;
}

Report check_mutation_compat(const QuantumSeed& source, const QuantumSeed& target, const IntMatrix& R, int k) {
  if (k < 0 || k >= source.n_mutable() || k >= target.n_mutable())
    throw Error(ErrorCode::IndexOutOfRange, "check_mutation_compat: bad direction " + std::to_string(k));
  const LambdaRule rule = default_lambda_rule();
  IntMatrix r2 = mutate_R(R, source.btilde(), target.btilde(), k);
  return check_matrices(mutate_btilde(source.btilde(), k), mutate_lambda(source.lambda(), source.btilde(), k, rule),
                        mutate_btilde(target.btilde(), k), mutate_lambda(target.lambda(), target.btilde(), k, rule),
                        r2);
}

IntMatrix compose_R(const IntMatrix& r_g, const IntMatrix& r_f) {
  if (r_g.cols() != r_f.rows()) throw Error(ErrorCode::ShapeMismatch, "compose_R: inner sizes differ");
  return r_g * r_f;
}

std::optional<Proportionality> proportional(const TorusElement& x, const TorusElement& y,
                                            const std::vector<int>& frozen) {
  if (y.is_zero()) throw Error(ErrorCode::DivisionByZero, "proportional: y is zero");
  if (x.size() != y.size() || x.rank() != y.rank()) return std::nullopt;
  const auto& [ax, cx] = x.leading();
  const auto& [ay, cy] = y.leading();
  ExpVec p(ax.size());
  std::vector<bool> is_frozen(ax.size(), false);
  for (int f : frozen) is_frozen.at(static_cast<std::size_t>(f)) = true;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    p[i] = ax[i] - ay[i];
    if (p[i] != 0 && !is_frozen[i]) return std::nullopt;
  }
  TorusElement shifted = TorusElement::monomial(y.form(), p) * y;
  QCoeff ratio;
  try {
    ratio = divide_exact(cx, shifted.leading().second);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!ratio.is_pure_qpow()) return std::nullopt;
  if (!(x == shifted * ratio)) return std::nullopt;
  return Proportionality{static_cast<int>(ratio.min_exponent().twice), std::move(p)};
}

}  // namespace qcluster
