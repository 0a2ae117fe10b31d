#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "hdm/error.hpp"
#include "hdm/hypergraph.hpp"

namespace hdm {

// Dense n x n work is refused above this vertex count.
inline constexpr std::size_t kMaxDenseVertices = 4096;

inline void check_dense_size(std::size_t n) {
  if (n > kMaxDenseVertices) {
    throw SizeError("dense matrix methods support at most " + std::to_string(kMaxDenseVertices) +
                    " vertices, got " + std::to_string(n));
  }
}

enum class LaplacianKind { combinatorial, normalized, projected_star };

struct LaplacianMatrix {
  LaplacianKind kind = LaplacianKind::normalized;
  Eigen::MatrixXd M;
};

/// Graph produced by an expansion: loop-free symmetric adjacency, the
/// expansion's degree vector and the normalized Laplacian the expansion
/// defines (which spectral measures consume).
struct ExpandedGraph {
  Eigen::MatrixXd adjacency;
  Eigen::VectorXd degree;
  LaplacianMatrix laplacian;

  std::size_t size() const noexcept { return static_cast<std::size_t>(adjacency.rows()); }
};

// I - D^{-1/2} A D^{-1/2}; rows/columns of zero-degree vertices are all zero.
inline Eigen::MatrixXd normalized_laplacian_matrix(const Eigen::MatrixXd& A,
                                                   const Eigen::VectorXd& degree) {
  const Eigen::Index n = A.rows();
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = degree(i) > 0.0 ? 1.0 / std::sqrt(degree(i)) : 0.0;
  Eigen::MatrixXd M = -(s.asDiagonal() * A * s.asDiagonal());
  for (Eigen::Index i = 0; i < n; ++i) M(i, i) += degree(i) > 0.0 ? 1.0 : 0.0;
  return 0.5 * (M + M.transpose());
}

inline LaplacianMatrix normalized_laplacian(const ExpandedGraph& G) {
  return {LaplacianKind::normalized, normalized_laplacian_matrix(G.adjacency, G.degree)};
}

// D - A with D the row sums of the adjacency.
inline LaplacianMatrix combinatorial_laplacian(const Eigen::MatrixXd& A) {
  Eigen::MatrixXd M = -A;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double d = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) d += A(i, j);
    M(i, i) += d;
  }
  return {LaplacianKind::combinatorial, M};
}

inline LaplacianMatrix combinatorial_laplacian(const ExpandedGraph& G) {
  return combinatorial_laplacian(G.adjacency);
}

/// Wraps a plain weighted graph; degrees are row sums.
inline ExpandedGraph graph_from_adjacency(Eigen::MatrixXd A) {
  check_dense_size(static_cast<std::size_t>(A.rows()));
  if (A.rows() != A.cols()) throw DataError("adjacency matrix must be square");
  if (A.size() > 0 && (A - A.transpose()).cwiseAbs().maxCoeff() > 0.0) {
    throw DataError("adjacency matrix must be symmetric");
  }
  if (A.size() > 0 && A.minCoeff() < 0.0) throw DataError("adjacency matrix must be non-negative");
  A.diagonal().setZero();
  ExpandedGraph G;
  G.degree = A.rowwise().sum();
  G.adjacency = std::move(A);
  G.laplacian = normalized_laplacian(G);
  return G;
}

/// Standard clique expansion: A = H W H^T with the diagonal removed,
/// d(u) = sum_e h(u,e) (d(e) - 1) w(e).
inline ExpandedGraph clique_expand_standard(const Hypergraph& g) {
  const std::size_t n = g.num_vertices();
  check_dense_size(n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (const auto& e : g.edges()) {
    const auto& vs = e.vertices;
    for (std::size_t a = 0; a < vs.size(); ++a) {
      d(vs[a]) += static_cast<double>(vs.size() - 1) * e.weight;
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        A(vs[a], vs[b]) += e.weight;
        A(vs[b], vs[a]) += e.weight;
      }
    }
  }
  ExpandedGraph G{std::move(A), std::move(d), {}};
  G.laplacian = normalized_laplacian(G);
  return G;
}

/// Bolla's Laplacian Dv - H De^{-1} H^T (combinatorial form).
inline LaplacianMatrix clique_laplacian_bolla(const Hypergraph& g) {
  const std::size_t n = g.num_vertices();
  check_dense_size(n);
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(ni, ni);
  for (const auto& e : g.edges()) {
    const double inv = 1.0 / static_cast<double>(e.size());
    for (Vertex u : e.vertices) {
      M(u, u) += e.weight;
      for (Vertex v : e.vertices) M(u, v) -= inv;
    }
  }
  return {LaplacianKind::combinatorial, M};
}

enum class StarVariant { standard, zhou };

/// Star expansion projected back onto the vertex set.
struct StarProjection {
  Eigen::MatrixXd adjacency;  // W* De*^{-1} W*^T, diagonal included
  Eigen::VectorXd degree;     // d*(u)
  LaplacianMatrix laplacian;  // I - Dv*^{-1/2} A_p Dv*^{-1/2}
};

/// Projected star expansion.
///
/// Star weights w*(u,e) are w(e)/d(e) for the standard variant and w(e) for
/// the Zhou variant. With star degrees d*(u) = sum_e w*(u,e) and
/// d*(e) = sum_u w*(u,e) the projection is A_p = W* De*^{-1} W*^T, which for
/// the Zhou variant is H W De^{-1} H^T and gives
/// L_p = I - Dv^{-1/2} H W De^{-1} H^T Dv^{-1/2}. Eigenvalues of L_p lie in [0,1].
inline StarProjection star_project(const Hypergraph& g, StarVariant variant = StarVariant::zhou) {
  const std::size_t n = g.num_vertices();
  check_dense_size(n);
  const auto ni = static_cast<Eigen::Index>(n);
  StarProjection p{Eigen::MatrixXd::Zero(ni, ni), Eigen::VectorXd::Zero(ni), {}};
  for (const auto& e : g.edges()) {
    const double size = static_cast<double>(e.size());
    const double star_w = variant == StarVariant::zhou ? e.weight : e.weight / size;
    const double edge_deg = star_w * size;
    const double contrib = star_w * star_w / edge_deg;
    for (Vertex u : e.vertices) {
      p.degree(u) += star_w;
      for (Vertex v : e.vertices) p.adjacency(u, v) += contrib;
    }
  }
  p.laplacian = {LaplacianKind::projected_star, normalized_laplacian_matrix(p.adjacency, p.degree)};
  return p;
}

/// ExpandedGraph view of the projected star: loop-free adjacency, star degrees
/// and the projected Laplacian.
inline ExpandedGraph star_expand(const Hypergraph& g, StarVariant variant = StarVariant::zhou) {
  StarProjection p = star_project(g, variant);
  p.adjacency.diagonal().setZero();
  return {std::move(p.adjacency), std::move(p.degree), std::move(p.laplacian)};
}

enum class Expansion { clique, star };

inline ExpandedGraph expand(const Hypergraph& g, Expansion how) {
  return how == Expansion::clique ? clique_expand_standard(g) : star_expand(g, StarVariant::zhou);
}

}  // namespace hdm
