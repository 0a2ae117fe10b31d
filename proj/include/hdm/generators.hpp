#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hdm/error.hpp"
#include "hdm/hypergraph.hpp"
#include "hdm/random.hpp"

namespace hdm {

// C(n, k) as a double (exact below 2^53).
inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(r);
}

namespace detail {

using EdgeSet = std::unordered_set<std::vector<Vertex>, VertexSetHash>;

inline Hypergraph unit_hypergraph(std::size_t n, const std::vector<std::vector<Vertex>>& sets) {
  std::vector<Hyperedge> edges;
  edges.reserve(sets.size());
  for (const auto& s : sets) edges.push_back({s, 1.0});
  return Hypergraph(n, std::move(edges));
}

// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<Vertex> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = static_cast<Vertex>(i);
  while (true) {
    f(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

}  // namespace detail

/// Erdos-Renyi k-uniform hypergraph: m distinct k-sets drawn uniformly
/// without repetition. Sparse requests use rejection on Floyd samples; dense
/// ones (m > C(n,k)/2) a partial shuffle of the full enumeration.
inline Hypergraph gen_erh(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > n) throw DataError("ERH needs 1 <= k <= n");
  const double total = binomial(n, k);
  if (static_cast<double>(m) > total) {
    throw DataError("ERH: m = " + std::to_string(m) + " exceeds C(n,k) = " + std::to_string(total));
  }
  Rng rng(seed);
  std::vector<std::vector<Vertex>> sets;
  sets.reserve(m);
  if (2.0 * static_cast<double>(m) > total) {
    if (total > 5e7) throw SizeError("ERH: dense request too large to enumerate");
    std::vector<std::vector<Vertex>> all;
    all.reserve(static_cast<std::size_t>(total));
    detail::for_each_subset(n, k, [&](const std::vector<Vertex>& s) { all.push_back(s); });
    for (std::size_t i = 0; i < m; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(all.size() - i));
      std::swap(all[i], all[j]);
      sets.push_back(all[i]);
    }
  } else {
    detail::EdgeSet seen;
    while (sets.size() < m) {
      auto s = random_subset(rng, n, k);
      if (seen.insert(s).second) sets.push_back(std::move(s));
    }
  }
  return detail::unit_hypergraph(n, sets);
}

/// Vertex weights p_i proportional to i^{-mu}, i = 1..n (normalized).
inline std::vector<double> sfh_probabilities(std::size_t n, double mu) {
  std::vector<double> p(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = std::pow(static_cast<double>(i + 1), -mu);
    z += p[i];
  }
  for (double& x : p) x /= z;
  return p;
}

namespace detail {

// m rounds of weighted k-set draws; rounds producing an existing edge are consumed.
inline Hypergraph weighted_rounds(std::size_t n, std::size_t m, std::size_t k,
                                  const std::vector<double>& weight, Rng& rng) {
  EdgeSet seen;
  std::vector<std::vector<Vertex>> sets;
  for (std::size_t round = 0; round < m; ++round) {
    auto s = weighted_subset(rng, weight, k);
    if (seen.insert(s).second) sets.push_back(std::move(s));
  }
  return unit_hypergraph(n, sets);
}

}  // namespace detail

/// Scale-free k-uniform hypergraph: m rounds, each drawing k distinct vertices
/// with probabilities p_i ~ i^{-mu}; duplicate sets are skipped.
inline Hypergraph gen_sfh(std::size_t n, std::size_t m, std::size_t k, double mu,
                          std::uint64_t seed) {
  if (!(mu > 0.0 && mu < 1.0)) throw DataError("SFH needs 0 < mu < 1");
  if (k == 0 || k > n) throw DataError("SFH needs 1 <= k <= n");
  Rng rng(seed);
  return detail::weighted_rounds(n, m, k, sfh_probabilities(n, mu), rng);
}

/// Ring lattice underlying the Watts-Strogatz hypergraph.
///
/// Vertices sit on a ring. Layer s = 1..d/k contributes the n edges
/// {i, i+s, ..., i+(k-1)s} (mod n), adding k to every degree. Then `extra`
/// window edges are placed at evenly spaced positions p_j = floor(j n / extra);
/// the window edge at p covers the k+1 consecutive vertices p..p+k minus p+1,
/// i.e. {p, p+2, ..., p+k}. The default extra count n/(k+1) puts one window
/// edge in every block of k+1 vertices.
struct WshLattice {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t degree = 0;  // d, a positive multiple of k
  std::size_t extra = 0;

  std::size_t num_edges() const { return n * (degree / k) + extra; }
};

inline WshLattice wsh_lattice(std::size_t n, std::size_t d, std::size_t k) {
  return {n, k, d, n / (k + 1)};
}

/// Lattice with exactly m edges: floor(m/n) ring layers plus window edges.
inline WshLattice wsh_lattice_for_edges(std::size_t n, std::size_t m, std::size_t k) {
  if (n == 0) throw DataError("WSH needs n > 0");
  const std::size_t layers = m / n;
  if (layers == 0) throw DataError("WSH needs m >= n (at least one ring layer)");
  return {n, k, layers * k, m - layers * n};
}

inline std::vector<std::vector<Vertex>> wsh_lattice_edges(const WshLattice& L) {
  const std::size_t n = L.n;
  const std::size_t k = L.k;
  if (k < 2 || k >= n) throw DataError("WSH lattice needs 2 <= k < n");
  if (L.degree == 0 || L.degree % k != 0) throw DataError("WSH degree d must be a positive multiple of k");
  if (L.extra > n) throw DataError("WSH lattice supports at most n window edges");
  const std::size_t layers = L.degree / k;
  detail::EdgeSet seen;
  std::vector<std::vector<Vertex>> sets;
  auto push = [&](std::vector<Vertex> s) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end() || !seen.insert(s).second) {
      throw DataError("WSH lattice infeasible for n = " + std::to_string(n) +
                      ", d = " + std::to_string(L.degree) + ", k = " + std::to_string(k));
    }
    sets.push_back(std::move(s));
  };
  for (std::size_t s = 1; s <= layers; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Vertex> e(k);
      for (std::size_t j = 0; j < k; ++j) e[j] = static_cast<Vertex>((i + j * s) % n);
      push(std::move(e));
    }
  }
  for (std::size_t j = 0; j < L.extra; ++j) {
    const std::size_t p = j * n / L.extra;
    std::vector<Vertex> e{static_cast<Vertex>(p)};
    for (std::size_t t = 2; t <= k; ++t) e.push_back(static_cast<Vertex>((p + t) % n));
    push(std::move(e));
  }
  return sets;
}

/// Watts-Strogatz k-uniform hypergraph. Every lattice edge is visited once in
/// construction order; with probability p_rewire a uniform random k-set is
/// drawn and, unless already present, replaces the edge in place.
inline Hypergraph gen_wsh(const WshLattice& L, double p_rewire, std::uint64_t seed) {
  if (!(p_rewire >= 0.0 && p_rewire <= 1.0)) throw DataError("WSH needs 0 <= p <= 1");
  auto sets = wsh_lattice_edges(L);
  detail::EdgeSet present(sets.begin(), sets.end());
  Rng rng(seed);
  for (auto& s : sets) {
    if (!rng.bernoulli(p_rewire)) continue;
    auto candidate = random_subset(rng, L.n, L.k);
    if (present.count(candidate)) continue;
    present.erase(s);
    present.insert(candidate);
    s = std::move(candidate);
  }
  return detail::unit_hypergraph(L.n, sets);
}

inline Hypergraph gen_wsh(std::size_t n, std::size_t d, std::size_t k, double p_rewire,
                          std::uint64_t seed) {
  return gen_wsh(wsh_lattice(n, d, k), p_rewire, seed);
}

/// ER null model: every vertex-edge membership is an independent coin flip
/// with p = c / (m n), c the total membership count of the reference.
/// Empty edges are dropped; repeated sets are kept once.
inline double null_er_probability(const Hypergraph& ref) {
  if (ref.num_vertices() == 0 || ref.num_edges() == 0) throw DataError("ER null needs a nonempty reference");
  return static_cast<double>(ref.total_memberships()) /
         (static_cast<double>(ref.num_edges()) * static_cast<double>(ref.num_vertices()));
}

namespace detail {

template <typename Prob>
Hypergraph membership_null(const Hypergraph& ref, std::uint64_t seed, Prob&& prob) {
  Rng rng(seed);
  std::vector<Hyperedge> edges;
  for (std::size_t e = 0; e < ref.num_edges(); ++e) {
    Hyperedge edge;
    for (std::size_t v = 0; v < ref.num_vertices(); ++v) {
      if (rng.bernoulli(prob(v, e))) edge.vertices.push_back(static_cast<Vertex>(v));
    }
    if (!edge.vertices.empty()) edges.push_back(std::move(edge));
  }
  return Hypergraph(ref.num_vertices(), std::move(edges), DuplicatePolicy::skip);
}

}  // namespace detail

inline Hypergraph null_er(const Hypergraph& ref, std::uint64_t seed) {
  const double p = null_er_probability(ref);
  return detail::membership_null(ref, seed, [p](std::size_t, std::size_t) { return p; });
}

/// Chung-Lu null model: P(u in e) = d(u) d(e) / c with d(u) the membership
/// count of u and d(e) = |e| in the reference.
inline Hypergraph null_cl(const Hypergraph& ref, std::uint64_t seed) {
  if (ref.num_edges() == 0) throw DataError("CL null needs a nonempty reference");
  const auto dv = ref.membership_counts();
  const double c = static_cast<double>(ref.total_memberships());
  const double max_dv = static_cast<double>(*std::max_element(dv.begin(), dv.end()));
  const double max_de = static_cast<double>(ref.max_cardinality());
  if (max_dv * max_de > c) {
    throw DataError("CL null infeasible: max d(u) d(e) = " + std::to_string(max_dv * max_de) +
                    " exceeds c = " + std::to_string(c));
  }
  return detail::membership_null(ref, seed, [&](std::size_t v, std::size_t e) {
    return static_cast<double>(dv[v]) * static_cast<double>(ref.edges()[e].size()) / c;
  });
}

/// k-uniform Chung-Lu null: m rounds, each drawing k distinct vertices with
/// probabilities p_i = d(v_i)/c; duplicate sets are skipped.
inline Hypergraph null_cl_uniform(const Hypergraph& ref, std::size_t k, std::uint64_t seed) {
  const auto dv = ref.membership_counts();
  std::vector<double> w(dv.begin(), dv.end());
  const auto positive = static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](double x) { return x > 0.0; }));
  if (k == 0 || positive < k) {
    throw DataError("CL-uniform null needs at least k = " + std::to_string(k) +
                    " vertices of positive degree");
  }
  Rng rng(seed);
  return detail::weighted_rounds(ref.num_vertices(), ref.num_edges(), k, w, rng);
}

enum class NullModel { er, cl, cl_uniform };

inline std::optional<NullModel> parse_null_model(std::string_view s) {
  if (s == "er") return NullModel::er;
  if (s == "cl") return NullModel::cl;
  if (s == "cl-uniform") return NullModel::cl_uniform;
  return std::nullopt;
}

inline std::string_view to_string(NullModel m) {
  switch (m) {
    case NullModel::er: return "er";
    case NullModel::cl: return "cl";
    case NullModel::cl_uniform: return "cl-uniform";
  }
  return "?";
}

// cl-uniform for uniform references, cl otherwise.
inline NullModel default_null_model(const Hypergraph& ref) {
  return ref.is_uniform() && ref.num_edges() > 0 ? NullModel::cl_uniform : NullModel::cl;
}

inline Hypergraph sample_null(NullModel model, const Hypergraph& ref, std::uint64_t seed) {
  switch (model) {
    case NullModel::er: return null_er(ref, seed);
    case NullModel::cl: return null_cl(ref, seed);
    case NullModel::cl_uniform: return null_cl_uniform(ref, ref.max_cardinality(), seed);
  }
  throw DataError("unknown null model");
}

}  // namespace hdm
