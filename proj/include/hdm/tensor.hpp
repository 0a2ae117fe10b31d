#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hdm/error.hpp"
#include "hdm/hypergraph.hpp"

namespace hdm {

// Sorted (non-decreasing) index tuple of length k.
using TensorIndex = std::vector<Vertex>;

// Dense order-k arrays are refused above this many entries.
inline constexpr double kMaxDenseTensorEntries = 1e8;

inline double factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

// (value, count) runs of a sorted index tuple.
inline std::vector<std::pair<Vertex, std::uint32_t>> index_runs(std::span<const Vertex> idx) {
  std::vector<std::pair<Vertex, std::uint32_t>> runs;
  for (Vertex v : idx) {
    if (!runs.empty() && runs.back().first == v) {
      ++runs.back().second;
    } else {
      runs.emplace_back(v, 1u);
    }
  }
  return runs;
}

// Number of distinct orderings of the multiset: k! / prod(count!).
inline double index_multiplicity(std::span<const Vertex> idx) {
  double m = factorial(idx.size());
  for (const auto& [v, c] : index_runs(idx)) m /= factorial(c);
  return m;
}

/// Supersymmetric order-k, dimension-n tensor stored by canonical sorted index.
class SymTensor {
 public:
  SymTensor(std::size_t order, std::size_t dim) : order_(order), dim_(dim) {
    if (order < 1) throw DataError("tensor order must be at least 1");
  }

  std::size_t order() const noexcept { return order_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  const std::map<TensorIndex, double>& entries() const noexcept { return entries_; }

  // Value at any permutation of the given index tuple.
  double at(std::span<const Vertex> idx) const {
    check_index(idx);
    TensorIndex key(idx.begin(), idx.end());
    std::sort(key.begin(), key.end());
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0.0 : it->second;
  }

  // Accumulates v into the canonical slot of idx (all its permutations).
  void add(std::span<const Vertex> idx, double v) {
    check_index(idx);
    if (!std::isfinite(v)) throw DataError("tensor entries must be finite");
    TensorIndex key(idx.begin(), idx.end());
    std::sort(key.begin(), key.end());
    auto& slot = entries_[std::move(key)];
    slot += v;
  }

  void prune_zeros() {
    std::erase_if(entries_, [](const auto& kv) { return kv.second == 0.0; });
  }

  // Row-major dense copy, index (i1,...,ik) -> sum_j i_j n^(k-1-j).
  std::vector<double> to_dense() const {
    const double total = std::pow(static_cast<double>(dim_), static_cast<double>(order_));
    if (total > kMaxDenseTensorEntries) {
      throw SizeError("dense tensor would have " + std::to_string(total) + " entries");
    }
    std::vector<double> out(static_cast<std::size_t>(total), 0.0);
    for (const auto& [idx, value] : entries_) {
      TensorIndex perm = idx;
      do {
        std::size_t flat = 0;
        for (Vertex v : perm) flat = flat * dim_ + v;
        out[flat] = value;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
  }

 private:
  void check_index(std::span<const Vertex> idx) const {
    if (idx.size() != order_) throw DataError("tensor index has wrong length");
    for (Vertex v : idx) {
      if (v >= dim_) throw DataError("tensor index out of range");
    }
  }

  std::size_t order_;
  std::size_t dim_;
  std::map<TensorIndex, double> entries_;
};

/// Number of length-k tuples over s distinct symbols using each at least once,
/// i.e. the sum of k!/(k1!...ks!) over compositions k1+...+ks = k, ki >= 1.
inline std::uint64_t alpha_coefficient(std::size_t k, std::size_t s) {
  if (s == 0 || s > k) throw DataError("alpha coefficient needs 1 <= s <= k");
  // ways[j][r]: sequences of length r over j symbols, each used >= 1.
  std::vector<std::vector<double>> ways(s + 1, std::vector<double>(k + 1, 0.0));
  ways[0][0] = 1.0;
  for (std::size_t j = 1; j <= s; ++j) {
    for (std::size_t r = j; r <= k; ++r) {
      double acc = 0.0;
      for (std::size_t c = 1; c <= r - (j - 1); ++c) {
        // choose the c positions of symbol j among r
        acc += ways[j - 1][r - c] * std::round(factorial(r) / (factorial(c) * factorial(r - c)));
      }
      ways[j][r] = acc;
    }
  }
  if (ways[s][k] > 1.8e19) throw SizeError("alpha coefficient overflows");
  return static_cast<std::uint64_t>(std::llround(ways[s][k]));
}

namespace detail {

// Calls f(counts) for every composition of k into s positive parts.
template <typename F>
void for_each_composition(std::size_t k, std::size_t s, F&& f) {
  std::vector<std::uint32_t> parts(s, 1);
  std::size_t rest = k - s;
  // Distribute `rest` extra units; enumerate by recursion.
  auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == s) {
      parts[pos] = static_cast<std::uint32_t>(1 + left);
      f(parts);
      return;
    }
    for (std::size_t extra = 0; extra <= left; ++extra) {
      parts[pos] = static_cast<std::uint32_t>(1 + extra);
      self(self, pos + 1, left - extra);
    }
  };
  rec(rec, 0, rest);
}

inline std::size_t resolve_order(const Hypergraph& g, std::size_t order) {
  const std::size_t kmax = g.max_cardinality();
  const std::size_t k = order == 0 ? kmax : order;
  if (k < 2) throw DataError("tensor representation needs order >= 2 (max edge cardinality is " +
                             std::to_string(kmax) + ")");
  if (k < kmax) throw DataError("tensor order below the maximum edge cardinality");
  return k;
}

}  // namespace detail

/// Adjacency tensor of order k (default: max edge cardinality).
///
/// An edge with s vertices puts w(e) * s / alpha(k, s) on every index tuple
/// that draws all k indices from the edge and uses each vertex at least once.
/// Slice sums then recover the weighted vertex degrees.
inline SymTensor adjacency_tensor(const Hypergraph& g, std::size_t order = 0) {
  const std::size_t k = detail::resolve_order(g, order);
  SymTensor T(k, g.num_vertices());
  TensorIndex idx;
  idx.reserve(k);
  for (const auto& e : g.edges()) {
    const std::size_t s = e.size();
    const double value =
        e.weight * static_cast<double>(s) / static_cast<double>(alpha_coefficient(k, s));
    detail::for_each_composition(k, s, [&](const std::vector<std::uint32_t>& counts) {
      idx.clear();
      for (std::size_t j = 0; j < s; ++j) idx.insert(idx.end(), counts[j], e.vertices[j]);
      T.add(idx, value);
    });
  }
  return T;
}

/// Laplacian tensor D - A with D the super-diagonal of weighted degrees.
inline SymTensor laplacian_tensor(const Hypergraph& g, std::size_t order = 0) {
  const std::size_t k = detail::resolve_order(g, order);
  SymTensor L(k, g.num_vertices());
  const auto deg = g.degrees();
  TensorIndex diag(k);
  for (std::size_t i = 0; i < deg.size(); ++i) {
    if (deg[i] == 0.0) continue;
    std::fill(diag.begin(), diag.end(), static_cast<Vertex>(i));
    L.add(diag, deg[i]);
  }
  const SymTensor A = adjacency_tensor(g, k);
  for (const auto& [idx, value] : A.entries()) L.add(idx, -value);
  L.prune_zeros();
  return L;
}

/// y = T x^{k-1}, i.e. y_i = sum_{j2..jk} T_{i j2 .. jk} x_{j2} ... x_{jk}.
inline Eigen::VectorXd tensor_apply(const SymTensor& T, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != T.dim()) throw DataError("vector length mismatch");
  const std::size_t k = T.order();
  const double kf = factorial(k - 1);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(x.size());
  for (const auto& [idx, value] : T.entries()) {
    const auto runs = index_runs(idx);
    for (std::size_t a = 0; a < runs.size(); ++a) {
      // remaining multiset: runs with runs[a].count - 1
      double coef = kf;
      double prod = 1.0;
      for (std::size_t b = 0; b < runs.size(); ++b) {
        const std::uint32_t c = runs[b].second - (a == b ? 1u : 0u);
        coef /= factorial(c);
        for (std::uint32_t r = 0; r < c; ++r) prod *= x(runs[b].first);
      }
      y(runs[a].first) += value * coef * prod;
    }
  }
  return y;
}

/// M = T x^{k-2} (two free indices): M_il = sum_{j3..jk} T_{i l j3..jk} x_{j3}...x_{jk}.
/// The Jacobian of tensor_apply is (k-1) M.
inline Eigen::MatrixXd tensor_apply_matrix(const SymTensor& T, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != T.dim()) throw DataError("vector length mismatch");
  const std::size_t k = T.order();
  if (k < 2) throw DataError("tensor order must be at least 2");
  const double kf = factorial(k - 2);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(x.size(), x.size());
  for (const auto& [idx, value] : T.entries()) {
    auto runs = index_runs(idx);
    for (std::size_t a = 0; a < runs.size(); ++a) {
      --runs[a].second;
      for (std::size_t b = 0; b < runs.size(); ++b) {
        if (runs[b].second == 0) continue;
        --runs[b].second;
        double coef = kf;
        double prod = 1.0;
        for (const auto& [v, c] : runs) {
          coef /= factorial(c);
          for (std::uint32_t r = 0; r < c; ++r) prod *= x(v);
        }
        M(runs[a].first, runs[b].first) += value * coef * prod;
        ++runs[b].second;
      }
      ++runs[a].second;
    }
  }
  return M;
}

}  // namespace hdm
