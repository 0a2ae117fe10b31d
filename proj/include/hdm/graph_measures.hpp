#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hdm/error.hpp"
#include "hdm/expansion.hpp"

namespace hdm {

inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return out;
}

/// Parameters shared by the graph dissimilarity measures.
struct GdmParams {
  double p = 2.0;                                        // spectral l_p exponent
  double sigma = 0.015;                                  // density kernel bandwidth
  std::size_t density_points = 4096;                     // quadrature grid on [-0.5, 2.5]
  std::vector<double> tau_set{0.5, 1.5, 2.5, 5.0, 10.0};  // heat-wavelet scales
  std::vector<double> netlsd_grid = log_grid(1e-2, 1e2, 256);
  bool netlsd_size_normalized = false;  // compare h_tau / n, allowing different n
  std::optional<double> eps;            // DELTACON epsilon; nullopt selects 1/(1 + max degree)
  bool centrality_requires_connected = false;

  void validate() const {
    if (!(p > 0.0)) throw DataError("p must be positive");
    if (!(sigma > 0.0)) throw DataError("sigma must be positive");
    if (density_points < 2) throw DataError("density grid needs at least 2 points");
    if (tau_set.empty()) throw DataError("tau set must be non-empty");
    if (!std::is_sorted(tau_set.begin(), tau_set.end())) throw DataError("tau set must be sorted");
    for (double t : tau_set) {
      if (!(t > 0.0)) throw DataError("tau values must be positive");
    }
    for (double t : netlsd_grid) {
      if (!(t > 0.0)) throw DataError("NetLSD grid values must be positive");
    }
    if (eps && !(*eps > 0.0)) throw DataError("DELTACON epsilon must be positive");
  }
};

namespace detail {

inline void require_same_size(const ExpandedGraph& a, const ExpandedGraph& b) {
  if (a.size() != b.size()) {
    throw DataError("graphs have different vertex counts (" + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()) + ")");
  }
}

// f(a_ij, b_ij) over i < j in row-major order; adjacency matrices are
// symmetric with zero diagonal, so full sums are twice these.
template <typename F>
void for_each_upper_pair(const ExpandedGraph& G, const ExpandedGraph& H, F&& f) {
  const Eigen::Index n = G.adjacency.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) f(G.adjacency(i, j), H.adjacency(i, j));
  }
}

inline bool is_connected(const Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  if (n == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<Eigen::Index> q;
  q.push(0);
  seen[0] = 1;
  Eigen::Index count = 1;
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    for (Eigen::Index v = 0; v < n; ++v) {
      if (!seen[static_cast<std::size_t>(v)] && A(u, v) > 0.0) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++count;
        q.push(v);
      }
    }
  }
  return count == n;
}

// Ascending eigenvalues of a symmetric matrix.
inline Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& M) {
  if (M.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  return es.eigenvalues();
}

// Ascending spectrum of a normalized Laplacian, checked against its bound
// ([0,2], or [0,1] for the projected star) and clamped into it.
inline Eigen::VectorXd laplacian_spectrum(const LaplacianMatrix& L) {
  Eigen::VectorXd ev = symmetric_eigenvalues(L.M);
  const double hi = L.kind == LaplacianKind::projected_star ? 1.0 : 2.0;
  constexpr double slack = 1e-9;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (L.kind != LaplacianKind::combinatorial && (ev(i) < -slack || ev(i) > hi + slack)) {
      throw NumericalError("Laplacian eigenvalue " + std::to_string(ev(i)) + " outside [0, " +
                           std::to_string(hi) + "]");
    }
    if (L.kind != LaplacianKind::combinatorial) ev(i) = std::clamp(ev(i), 0.0, hi);
  }
  return ev;
}

}  // namespace detail

/// l1-normalized eigenvector centrality.
///
/// Computed as the projection of the all-ones vector onto the dominant
/// eigenspace of A, which is the limit of power iteration started from the
/// uniform vector. For a connected graph this is the Perron vector; for a
/// disconnected graph the components with the largest spectral radius carry
/// all of the mass; an edgeless graph yields the uniform vector.
inline Eigen::VectorXd eigenvector_centrality(const Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  if (n == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double top = lam(n - 1);
  const double tol = 1e-10 * std::max(1.0, std::abs(top));
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  for (Eigen::Index j = n - 1; j >= 0 && lam(j) >= top - tol; --j) {
    const auto u = es.eigenvectors().col(j);
    c += u.dot(ones) * u;
  }
  c = c.cwiseMax(0.0);
  const double s = c.sum();
  if (!(s > 0.0)) throw NumericalError("eigenvector centrality vanished");
  return c / s;
}

inline double gdm_hamming(const ExpandedGraph& G, const ExpandedGraph& H, const GdmParams& = {}) {
  detail::require_same_size(G, H);
  const auto n = static_cast<double>(G.size());
  if (G.size() < 2) throw DataError("Hamming distance needs at least 2 vertices");
  double upper = 0.0;
  detail::for_each_upper_pair(G, H, [&](double a, double b) { upper += std::abs(a - b); });
  return 2.0 * upper / (n * (n - 1.0));
}

inline double gdm_jaccard(const ExpandedGraph& G, const ExpandedGraph& H, const GdmParams& = {}) {
  detail::require_same_size(G, H);
  double num = 0.0;
  double den = 0.0;
  detail::for_each_upper_pair(G, H, [&](double a, double b) {
    num += std::min(a, b);
    den += std::max(a, b);
  });
  if (den == 0.0) return 0.0;  // both empty: identical graphs
  return 1.0 - num / den;
}

inline double gdm_centrality(const ExpandedGraph& G, const ExpandedGraph& H,
                             const GdmParams& params = {}) {
  detail::require_same_size(G, H);
  if (params.centrality_requires_connected) {
    for (const auto* X : {&G, &H}) {
      if (X->size() > 1 && (X->adjacency.sum() == 0.0 || !detail::is_connected(X->adjacency))) {
        throw DataError("eigenvector centrality requires a connected graph");
      }
    }
  }
  const Eigen::VectorXd c = eigenvector_centrality(G.adjacency);
  const Eigen::VectorXd d = eigenvector_centrality(H.adjacency);
  return (c - d).cwiseAbs().sum() / static_cast<double>(G.size());
}

inline double gdm_spectral_lp(const ExpandedGraph& G, const ExpandedGraph& H,
                              const GdmParams& params = {}) {
  detail::require_same_size(G, H);
  const Eigen::VectorXd a = detail::laplacian_spectrum(G.laplacian);
  const Eigen::VectorXd b = detail::laplacian_spectrum(H.laplacian);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) sum += std::pow(std::abs(a(i) - b(i)), params.p);
  return a.size() == 0 ? 0.0 : sum / static_cast<double>(a.size());
}

/// log of the spanning-tree count via Kirchhoff: (1/n) * product of the n-1
/// nonzero combinatorial-Laplacian eigenvalues.
inline double log_spanning_trees(const Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  if (n == 0) throw DataError("spanning trees of an empty vertex set");
  if (!detail::is_connected(A)) throw DataError("graph is disconnected (no spanning tree)");
  const Eigen::VectorXd ev = detail::symmetric_eigenvalues(combinatorial_laplacian(A).M);
  double log_t = -std::log(static_cast<double>(n));
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(ev(i) > 0.0)) throw NumericalError("non-positive Laplacian eigenvalue in connected graph");
    log_t += std::log(ev(i));
  }
  return log_t;
}

inline double gdm_spanning_tree(const ExpandedGraph& G, const ExpandedGraph& H,
                                const GdmParams& = {}) {
  detail::require_same_size(G, H);
  return std::abs(log_spanning_trees(G.adjacency) - log_spanning_trees(H.adjacency));
}

// Gaussian-mixture spectral density at x.
inline double spectral_density(const Eigen::VectorXd& eigenvalues, double sigma, double x) {
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * sigma * sigma);
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double z = (x - eigenvalues(i)) / sigma;
    s += std::exp(-0.5 * z * z);
  }
  return norm * s / static_cast<double>(eigenvalues.size());
}

inline double gdm_spectral_density(const ExpandedGraph& G, const ExpandedGraph& H,
                                   const GdmParams& params = {}) {
  detail::require_same_size(G, H);
  params.validate();
  if (G.size() == 0) return 0.0;
  const Eigen::VectorXd a = detail::laplacian_spectrum(G.laplacian);
  const Eigen::VectorXd b = detail::laplacian_spectrum(H.laplacian);
  constexpr double lo = -0.5;
  constexpr double hi = 2.5;
  const std::size_t N = params.density_points;
  const double h = (hi - lo) / static_cast<double>(N - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double x = lo + h * static_cast<double>(i);
    const double f = std::abs(spectral_density(a, params.sigma, x) -
                              spectral_density(b, params.sigma, x));
    sum += (i == 0 || i + 1 == N) ? 0.5 * f : f;
  }
  return sum * h;
}

/// Fast belief propagation affinities S = [I + eps^2 D - eps A]^{-1}.
inline Eigen::MatrixXd belief_propagation_matrix(const ExpandedGraph& G, double eps) {
  const Eigen::Index n = static_cast<Eigen::Index>(G.size());
  Eigen::MatrixXd M = -eps * G.adjacency;
  M.diagonal().array() += 1.0 + eps * eps * G.degree.array();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible()) throw NumericalError("belief propagation system is singular");
  return lu.solve(Eigen::MatrixXd::Identity(n, n));
}

inline double gdm_deltacon(const ExpandedGraph& G, const ExpandedGraph& H,
                           const GdmParams& params = {}) {
  detail::require_same_size(G, H);
  if (G.size() == 0) return 0.0;
  double eps = 0.0;
  if (params.eps) {
    eps = *params.eps;
  } else {
    const double max_deg = std::max(G.degree.maxCoeff(), H.degree.maxCoeff());
    eps = 1.0 / (1.0 + max_deg);
  }
  const Eigen::MatrixXd S = belief_propagation_matrix(G, eps).cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd T = belief_propagation_matrix(H, eps).cwiseMax(0.0).cwiseSqrt();
  return (S - T).norm();
}

/// Heat kernel exp(-tau L) of a symmetric Laplacian for every tau.
inline std::vector<Eigen::MatrixXd> heat_kernels(const LaplacianMatrix& L,
                                                 const std::vector<double>& taus) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.M);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  std::vector<Eigen::MatrixXd> out;
  out.reserve(taus.size());
  for (double tau : taus) {
    const Eigen::VectorXd f = (-tau * es.eigenvalues().array()).exp();
    out.push_back(es.eigenvectors() * f.asDiagonal() * es.eigenvectors().transpose());
  }
  return out;
}

inline double gdm_heat_wavelet(const ExpandedGraph& G, const ExpandedGraph& H,
                               const GdmParams& params = {}) {
  detail::require_same_size(G, H);
  params.validate();
  const auto n = static_cast<Eigen::Index>(G.size());
  if (n == 0) return 0.0;
  const auto psi_g = heat_kernels(G.laplacian, params.tau_set);
  const auto psi_h = heat_kernels(H.laplacian, params.tau_set);
  double total = 0.0;
  for (Eigen::Index u = 0; u < n; ++u) {
    double sq = 0.0;
    for (std::size_t t = 0; t < psi_g.size(); ++t) {
      sq += (psi_g[t].col(u) - psi_h[t].col(u)).squaredNorm();
    }
    total += std::sqrt(sq);
  }
  return total / static_cast<double>(n);
}

/// Heat-trace signature h_tau = sum_j exp(-lambda_j tau) over the grid.
inline std::vector<double> heat_trace(const LaplacianMatrix& L, const std::vector<double>& grid) {
  const Eigen::VectorXd ev = detail::symmetric_eigenvalues(L.M);
  std::vector<double> h(grid.size(), 0.0);
  for (std::size_t t = 0; t < grid.size(); ++t) {
    for (Eigen::Index j = 0; j < ev.size(); ++j) h[t] += std::exp(-ev(j) * grid[t]);
  }
  return h;
}

inline double gdm_netlsd(const ExpandedGraph& G, const ExpandedGraph& H,
                         const GdmParams& params = {}) {
  if (!params.netlsd_size_normalized) detail::require_same_size(G, H);
  params.validate();
  auto a = heat_trace(G.laplacian, params.netlsd_grid);
  auto b = heat_trace(H.laplacian, params.netlsd_grid);
  const double sa = params.netlsd_size_normalized ? std::max<double>(1.0, G.size()) : 1.0;
  const double sb = params.netlsd_size_normalized ? std::max<double>(1.0, H.size()) : 1.0;
  double worst = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) worst = std::max(worst, std::abs(a[t] / sa - b[t] / sb));
  return worst;
}

enum class GraphMeasure {
  hamming,
  jaccard,
  centrality,
  spectral,
  spanning_tree,
  density,
  deltacon,
  heat_wavelet,
  netlsd
};

inline constexpr std::array<std::pair<GraphMeasure, std::string_view>, 9> kGraphMeasureNames{{
    {GraphMeasure::hamming, "hamming"},
    {GraphMeasure::jaccard, "jaccard"},
    {GraphMeasure::centrality, "centrality"},
    {GraphMeasure::spectral, "spectral"},
    {GraphMeasure::spanning_tree, "spanning-tree"},
    {GraphMeasure::density, "density"},
    {GraphMeasure::deltacon, "deltacon"},
    {GraphMeasure::heat_wavelet, "heat-wavelet"},
    {GraphMeasure::netlsd, "netlsd"},
}};

inline std::string_view to_string(GraphMeasure m) {
  for (const auto& [k, name] : kGraphMeasureNames) {
    if (k == m) return name;
  }
  return "?";
}

inline std::optional<GraphMeasure> parse_graph_measure(std::string_view name) {
  for (const auto& [k, token] : kGraphMeasureNames) {
    if (token == name) return k;
  }
  return std::nullopt;
}

inline double graph_distance(GraphMeasure m, const ExpandedGraph& G, const ExpandedGraph& H,
                             const GdmParams& params = {}) {
  switch (m) {
    case GraphMeasure::hamming: return gdm_hamming(G, H, params);
    case GraphMeasure::jaccard: return gdm_jaccard(G, H, params);
    case GraphMeasure::centrality: return gdm_centrality(G, H, params);
    case GraphMeasure::spectral: return gdm_spectral_lp(G, H, params);
    case GraphMeasure::spanning_tree: return gdm_spanning_tree(G, H, params);
    case GraphMeasure::density: return gdm_spectral_density(G, H, params);
    case GraphMeasure::deltacon: return gdm_deltacon(G, H, params);
    case GraphMeasure::heat_wavelet: return gdm_heat_wavelet(G, H, params);
    case GraphMeasure::netlsd: return gdm_netlsd(G, H, params);
  }
  throw DataError("unknown graph measure");
}

}  // namespace hdm
