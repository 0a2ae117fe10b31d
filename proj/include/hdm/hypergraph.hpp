#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hdm/error.hpp"

namespace hdm {

using Vertex = std::uint32_t;

struct Hyperedge {
  std::vector<Vertex> vertices;  // sorted, distinct
  double weight = 1.0;

  std::size_t size() const noexcept { return vertices.size(); }
  bool contains(Vertex v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }
  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

// What to do with two edges spanning the same vertex set.
enum class DuplicatePolicy { reject, merge, skip };

struct VertexSetHash {
  std::size_t operator()(const std::vector<Vertex>& s) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Vertex v : s) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Weighted hypergraph on the dense vertex set {0, ..., n-1}.
///
/// Edges keep their insertion order (which fixes the column order of the
/// incidence matrix); equality and serialization use the canonical order,
/// i.e. edges sorted lexicographically by their sorted vertex lists.
/// Instances are immutable once constructed.
class Hypergraph {
 public:
  Hypergraph() = default;
  explicit Hypergraph(std::size_t n) : n_(n) {}

  Hypergraph(std::size_t n, std::vector<Hyperedge> edges,
             DuplicatePolicy policy = DuplicatePolicy::reject)
      : n_(n) {
    std::unordered_map<std::vector<Vertex>, std::size_t, VertexSetHash> seen;
    edges_.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      Hyperedge& e = edges[i];
      if (e.vertices.empty()) {
        throw DataError("edge " + std::to_string(i) + " is empty");
      }
      if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
        throw DataError("edge " + std::to_string(i) + " has non-positive weight");
      }
      std::sort(e.vertices.begin(), e.vertices.end());
      if (std::adjacent_find(e.vertices.begin(), e.vertices.end()) != e.vertices.end()) {
        throw DataError("edge " + std::to_string(i) + " repeats a vertex");
      }
      if (e.vertices.back() >= n_) {
        throw DataError("edge " + std::to_string(i) + " references vertex " +
                        std::to_string(e.vertices.back()) + " >= n = " + std::to_string(n_));
      }
      auto [it, inserted] = seen.try_emplace(e.vertices, edges_.size());
      if (!inserted) {
        switch (policy) {
          case DuplicatePolicy::reject:
            throw DataError("edge " + std::to_string(i) + " duplicates an earlier edge");
          case DuplicatePolicy::merge:
            edges_[it->second].weight += e.weight;
            continue;
          case DuplicatePolicy::skip:
            continue;
        }
      }
      edges_.push_back(std::move(e));
    }
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Hyperedge>& edges() const noexcept { return edges_; }
  const Hyperedge& edge(std::size_t i) const { return edges_.at(i); }
  bool empty() const noexcept { return edges_.empty(); }

  std::size_t max_cardinality() const noexcept {
    std::size_t k = 0;
    for (const auto& e : edges_) k = std::max(k, e.size());
    return k;
  }

  // True when every edge has the same cardinality (vacuously for no edges).
  bool is_uniform() const noexcept {
    return std::all_of(edges_.begin(), edges_.end(),
                       [&](const Hyperedge& e) { return e.size() == edges_.front().size(); });
  }

  bool is_unweighted() const noexcept {
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const Hyperedge& e) { return e.weight == 1.0; });
  }

  // d(v) = sum of w(e) over edges containing v, accumulated in lexicographic
  // edge order so the result does not depend on how the edges are listed.
  std::vector<double> degrees() const {
    std::vector<std::size_t> order(edges_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return edges_[a].vertices < edges_[b].vertices;
    });
    std::vector<double> d(n_, 0.0);
    for (std::size_t i : order) {
      for (Vertex v : edges_[i].vertices) d[v] += edges_[i].weight;
    }
    return d;
  }

  // Number of edges containing each vertex (the unweighted degree).
  std::vector<std::size_t> membership_counts() const {
    std::vector<std::size_t> d(n_, 0);
    for (const auto& e : edges_) {
      for (Vertex v : e.vertices) ++d[v];
    }
    return d;
  }

  // Sum of edge cardinalities (= sum of membership counts).
  std::size_t total_memberships() const noexcept {
    std::size_t c = 0;
    for (const auto& e : edges_) c += e.size();
    return c;
  }

  Hypergraph canonical() const {
    Hypergraph out = *this;
    std::sort(out.edges_.begin(), out.edges_.end(),
              [](const Hyperedge& a, const Hyperedge& b) { return a.vertices < b.vertices; });
    return out;
  }

  // Applies perm[v] to every vertex id; perm must be a permutation of 0..n-1.
  Hypergraph relabeled(const std::vector<Vertex>& perm) const {
    if (perm.size() != n_) throw DataError("permutation length does not match vertex count");
    std::vector<Hyperedge> edges = edges_;
    for (auto& e : edges) {
      for (auto& v : e.vertices) v = perm[v];
    }
    Hypergraph out(n_, std::move(edges));
    out.labels = labels;
    return out;
  }

  // Display-only names; empty or of size n.
  std::vector<std::string> labels;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.canonical().edges_ == b.canonical().edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Hyperedge> edges_;
};

/// Dense incidence matrix and the diagonal weight/degree matrices, stored as vectors.
struct IncidenceView {
  Eigen::MatrixXd H;              // n x m, 0/1
  Eigen::VectorXd edge_weight;    // diag(W), length m
  Eigen::VectorXd vertex_degree;  // diag(Dv), length n
  Eigen::VectorXd edge_degree;    // diag(De), length m
};

inline IncidenceView incidence(const Hypergraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  const auto m = static_cast<Eigen::Index>(g.num_edges());
  IncidenceView view{Eigen::MatrixXd::Zero(n, m), Eigen::VectorXd::Zero(m),
                     Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(m)};
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& e = g.edges()[static_cast<std::size_t>(j)];
    view.edge_weight(j) = e.weight;
    view.edge_degree(j) = static_cast<double>(e.size());
    for (Vertex v : e.vertices) {
      view.H(v, j) = 1.0;
      view.vertex_degree(v) += e.weight;
    }
  }
  return view;
}

}  // namespace hdm
