#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "hdm/error.hpp"
#include "hdm/random.hpp"
#include "hdm/tensor.hpp"

namespace hdm {

enum class SpectrumKind { laplacian_eigen, hosvd_singular, h_eigen };

struct HEigenpair {
  double lambda = 0.0;
  Eigen::VectorXd vector;  // scaled to max |x_i| = 1 with its largest entry positive
  double residual = 0.0;   // || T x^{k-1} - lambda x^{[k-1]} ||_inf
};

/// Sorted spectral summary. For h_eigen, `residuals[i]` certifies `values[i]`
/// and `pairs` holds every distinct certified eigenpair found.
struct SpectralSummary {
  SpectrumKind kind = SpectrumKind::hosvd_singular;
  std::vector<double> values;  // ascending
  std::vector<double> residuals;
  std::vector<HEigenpair> pairs;
};

namespace detail {

// Columns of the mode-1 unfolding grouped by their trailing (k-1)-multiset r:
// every ordering of r yields the same column, so U U^T = sum_r c_r u_r u_r^T
// with c_r the number of orderings.
inline std::map<TensorIndex, std::vector<std::pair<Vertex, double>>> unfolding_columns(const SymTensor& T) {
  std::map<TensorIndex, std::vector<std::pair<Vertex, double>>> columns;
  for (const auto& [idx, value] : T.entries()) {
    for (const auto& [a, count] : index_runs(idx)) {
      TensorIndex rest = idx;
      rest.erase(std::find(rest.begin(), rest.end(), a));
      columns[std::move(rest)].emplace_back(a, value);
    }
  }
  return columns;
}

inline double column_orderings(const SymTensor& T, const TensorIndex& rest) {
  return T.order() > 1 ? index_multiplicity(rest) : 1.0;
}

// Largest compact factor (entries) that is factorized directly.
inline constexpr std::size_t kMaxCompactFactorEntries = std::size_t{1} << 24;

}  // namespace detail

/// Gram matrix U U^T of the mode-1 unfolding, accumulated from the sparse support.
inline Eigen::MatrixXd unfolding_gram(const SymTensor& T) {
  const auto n = static_cast<Eigen::Index>(T.dim());
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [rest, col] : detail::unfolding_columns(T)) {
    const double orderings = detail::column_orderings(T, rest);
    for (const auto& [a, va] : col) {
      for (const auto& [b, vb] : col) G(a, b) += orderings * va * vb;
    }
  }
  return G;
}

/// Mode-1 singular values of T, ascending.
///
/// The n x n^{k-1} unfolding is never formed: its distinct columns, each
/// scaled by the square root of its multiplicity, give a compact factor C
/// with C C^T = U U^T, whose SVD yields the singular values without the
/// accuracy loss of squaring. Very large factors fall back to the Gram
/// eigenvalues.
inline SpectralSummary hosvd_singular_values(const SymTensor& T) {
  SpectralSummary out;
  out.kind = SpectrumKind::hosvd_singular;
  if (T.dim() == 0) return out;
  const auto n = static_cast<Eigen::Index>(T.dim());
  out.values.assign(T.dim(), 0.0);
  const auto columns = detail::unfolding_columns(T);
  const auto r = static_cast<Eigen::Index>(columns.size());
  if (r == 0) return out;
  if (static_cast<std::size_t>(n) * static_cast<std::size_t>(r) <= detail::kMaxCompactFactorEntries) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, r);
    Eigen::Index j = 0;
    for (const auto& [rest, col] : columns) {
      const double scale = std::sqrt(detail::column_orderings(T, rest));
      for (const auto& [a, va] : col) C(a, j) = scale * va;
      ++j;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(C);
    if (svd.info() != Eigen::Success) throw NumericalError("SVD of the unfolding factor failed");
    const Eigen::VectorXd sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i) out.values[static_cast<std::size_t>(i)] = sv(i);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(unfolding_gram(T), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("Gram eigensolver failed");
    for (Eigen::Index i = 0; i < n; ++i) {
      out.values[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    }
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

struct HEigenConfig {
  std::size_t max_dim = 12;
  std::size_t max_order = 4;
  std::size_t random_starts = 500;
  std::uint64_t seed = 0;
  double residual_tol = 1e-8;
  double dedup_tol = 1e-6;
  std::size_t max_newton_steps = 100;
};

namespace detail {

inline Eigen::VectorXd power_elementwise(const Eigen::VectorXd& x, std::size_t e) {
  Eigen::VectorXd y = Eigen::VectorXd::Ones(x.size());
  for (std::size_t r = 0; r < e; ++r) y = y.cwiseProduct(x);
  return y;
}

// Residual of the H-eigen equation after scaling x to unit max-norm.
inline double h_residual(const SymTensor& T, const Eigen::VectorXd& x, double lambda) {
  const std::size_t k = T.order();
  return (tensor_apply(T, x) - lambda * power_elementwise(x, k - 1)).lpNorm<Eigen::Infinity>();
}

inline Eigen::VectorXd max_norm_scaled(const Eigen::VectorXd& x) {
  Eigen::Index arg = 0;
  x.cwiseAbs().maxCoeff(&arg);
  return x / x(arg);
}

struct NewtonResult {
  bool ok = false;
  Eigen::VectorXd x;
  double lambda = 0.0;
};

// Damped Newton on F(x, lambda) = [T x^{k-1} - lambda x^{[k-1]}; (x.x - 1)/2].
inline NewtonResult h_newton(const SymTensor& T, Eigen::VectorXd x, double lambda,
                             std::size_t max_steps) {
  const std::size_t k = T.order();
  const auto n = x.size();
  x.normalize();
  auto F = [&](const Eigen::VectorXd& xv, double lv) {
    Eigen::VectorXd f(n + 1);
    f.head(n) = tensor_apply(T, xv) - lv * power_elementwise(xv, k - 1);
    f(n) = 0.5 * (xv.squaredNorm() - 1.0);
    return f;
  };
  Eigen::VectorXd f = F(x, lambda);
  double fnorm = f.norm();
  for (std::size_t step = 0; step < max_steps && fnorm > 1e-15; ++step) {
    Eigen::MatrixXd J(n + 1, n + 1);
    const Eigen::VectorXd xk2 = power_elementwise(x, k - 2);
    J.topLeftCorner(n, n) = static_cast<double>(k - 1) * tensor_apply_matrix(T, x);
    J.topLeftCorner(n, n).diagonal() -= static_cast<double>(k - 1) * lambda * xk2;
    J.topRightCorner(n, 1) = -power_elementwise(x, k - 1);
    J.bottomLeftCorner(1, n) = x.transpose();
    J(n, n) = 0.0;
    const Eigen::VectorXd dz = J.colPivHouseholderQr().solve(-f);
    if (!dz.allFinite()) break;
    double t = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 30; ++halving, t *= 0.5) {
      const Eigen::VectorXd xn = x + t * dz.head(n);
      const double ln = lambda + t * dz(n);
      const Eigen::VectorXd fn = F(xn, ln);
      if (fn.norm() < (1.0 - 1e-4 * t) * fnorm) {
        x = xn;
        lambda = ln;
        f = fn;
        fnorm = fn.norm();
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {fnorm < 1e-10 && x.allFinite() && std::isfinite(lambda), x, lambda};
}

}  // namespace detail

/// Real H-eigenvalues of a small supersymmetric tensor by multi-start damped
/// Newton iteration.
///
/// Found-set semantics: every returned value is certified by a residual check,
/// but completeness of the H-spectrum is not guaranteed. Starts are the
/// all-ones vector, every standard basis vector, and `random_starts` random
/// vectors whose initial eigenvalue guesses sweep the Gershgorin interval.
inline SpectralSummary h_eigenvalues_desk(const SymTensor& T, const HEigenConfig& cfg = {}) {
  const std::size_t n = T.dim();
  const std::size_t k = T.order();
  if (n > cfg.max_dim || k > cfg.max_order) {
    throw SizeError("H-eigen solver is limited to n <= " + std::to_string(cfg.max_dim) +
                    " and k <= " + std::to_string(cfg.max_order));
  }
  if (k < 2) throw DataError("H-eigenvalues need order >= 2");
  SpectralSummary out;
  out.kind = SpectrumKind::h_eigen;
  if (n == 0) return out;
  const auto ni = static_cast<Eigen::Index>(n);

  // Gershgorin bounds: |lambda - T_{i..i}| <= sum of |off-diagonal| in slice i.
  SymTensor absT(k, n);
  for (const auto& [idx, v] : T.entries()) absT.add(idx, std::abs(v));
  const Eigen::VectorXd row_abs = tensor_apply(absT, Eigen::VectorXd::Ones(ni));
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const TensorIndex diag(k, static_cast<Vertex>(i));
    const double d = T.at(diag);
    const double r = row_abs(static_cast<Eigen::Index>(i)) - std::abs(d);
    lo = std::min(lo, d - r);
    hi = std::max(hi, d + r);
  }

  std::vector<HEigenpair> found;
  auto try_start = [&](const Eigen::VectorXd& x0, double lambda0) {
    const auto res = detail::h_newton(T, x0, lambda0, cfg.max_newton_steps);
    if (!res.ok) return;
    Eigen::VectorXd x = detail::max_norm_scaled(res.x);
    double r = detail::h_residual(T, x, res.lambda);
    // Entries of size eps perturb the residual by only ~eps^(k-1), so Newton
    // leaves drift there. Snap them to zero when the snapped vector still certifies.
    Eigen::VectorXd snapped = (x.array().abs() < cfg.dedup_tol).select(0.0, x);
    const double rs = detail::h_residual(T, snapped, res.lambda);
    if (rs <= std::max(r, cfg.residual_tol)) {
      x = std::move(snapped);
      r = rs;
    }
    if (r <= cfg.residual_tol) found.push_back({res.lambda, x, r});
  };

  {
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(ni);
    const double num = ones.dot(tensor_apply(T, ones));
    try_start(ones, num / static_cast<double>(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(ni);
    e(static_cast<Eigen::Index>(i)) = 1.0;
    try_start(e, T.at(TensorIndex(k, static_cast<Vertex>(i))));
  }
  Rng rng(cfg.seed);
  for (std::size_t r = 0; r < cfg.random_starts; ++r) {
    Eigen::VectorXd x(ni);
    for (Eigen::Index i = 0; i < ni; ++i) x(i) = rng.uniform(-1.0, 1.0);
    if (x.norm() == 0.0) continue;
    const double frac = (static_cast<double>(r) + 0.5) / static_cast<double>(cfg.random_starts);
    try_start(x, lo + (hi - lo) * frac);
  }

  std::sort(found.begin(), found.end(), [](const HEigenpair& a, const HEigenpair& b) {
    return a.lambda < b.lambda;
  });
  // Cluster values within dedup_tol; keep distinct eigenvectors per cluster.
  std::size_t i = 0;
  while (i < found.size()) {
    std::size_t j = i + 1;
    while (j < found.size() && found[j].lambda - found[j - 1].lambda <= cfg.dedup_tol) ++j;
    std::size_t best = i;
    for (std::size_t t = i; t < j; ++t) {
      if (found[t].residual < found[best].residual) best = t;
    }
    out.values.push_back(found[best].lambda);
    out.residuals.push_back(found[best].residual);
    std::vector<HEigenpair> distinct;
    for (std::size_t t = i; t < j; ++t) {
      const auto dup = std::find_if(distinct.begin(), distinct.end(), [&](const HEigenpair& p) {
        return (p.vector - found[t].vector).lpNorm<Eigen::Infinity>() < cfg.dedup_tol;
      });
      if (dup == distinct.end()) {
        distinct.push_back(found[t]);
      } else if (found[t].residual < dup->residual) {
        *dup = found[t];
      }
    }
    for (auto& p : distinct) out.pairs.push_back(std::move(p));
    i = j;
  }
  return out;
}

}  // namespace hdm
