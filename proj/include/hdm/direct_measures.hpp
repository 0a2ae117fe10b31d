#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdm/centrality.hpp"
#include "hdm/error.hpp"
#include "hdm/hypergraph.hpp"
#include "hdm/tensor.hpp"
#include "hdm/tensor_spectra.hpp"

namespace hdm {

struct DirectHdmParams {
  double p = 2.0;
  HEigenConfig h_eigen;
  CentralityConfig centrality;

  void validate() const {
    if (!(p > 0.0)) throw DataError("p must be positive");
  }
};

/// Common tensor order of two hypergraphs on the same vertex set. An edgeless
/// hypergraph is the zero tensor of any order and adopts the other's order.
inline std::size_t common_tensor_order(const Hypergraph& g, const Hypergraph& h) {
  if (g.num_vertices() != h.num_vertices()) {
    throw DataError("hypergraphs have different vertex counts (" +
                    std::to_string(g.num_vertices()) + " vs " + std::to_string(h.num_vertices()) +
                    ")");
  }
  const std::size_t a = g.max_cardinality();
  const std::size_t b = h.max_cardinality();
  if (a != 0 && b != 0 && a != b) {
    throw DataError("hypergraphs have different maximum edge cardinality (" + std::to_string(a) +
                    " vs " + std::to_string(b) + ")");
  }
  return std::max<std::size_t>({a, b, 2});
}

namespace detail {

// Calls f(x, y, multiplicity) over the union of canonical supports.
template <typename F>
void for_each_expanded_pair(const SymTensor& A, const SymTensor& B, F&& f) {
  auto ia = A.entries().begin();
  auto ib = B.entries().begin();
  const auto ea = A.entries().end();
  const auto eb = B.entries().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      f(ia->second, 0.0, index_multiplicity(ia->first));
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      f(0.0, ib->second, index_multiplicity(ib->first));
      ++ib;
    } else {
      f(ia->second, ib->second, index_multiplicity(ia->first));
      ++ia;
      ++ib;
    }
  }
}

}  // namespace detail

/// Entrywise 1-norm of A - B over the full (permutation-expanded) tensors.
inline double tensor_l1_distance(const SymTensor& A, const SymTensor& B) {
  double s = 0.0;
  detail::for_each_expanded_pair(A, B, [&](double x, double y, double mult) {
    s += mult * std::abs(x - y);
  });
  return s;
}

inline double dhdm_hamming(const Hypergraph& g, const Hypergraph& h,
                           const DirectHdmParams& = {}) {
  const std::size_t k = common_tensor_order(g, h);
  const std::size_t n = g.num_vertices();
  if (n < 2) throw DataError("tensor Hamming distance needs at least 2 vertices");
  const double norm = std::pow(static_cast<double>(n), static_cast<double>(k)) -
                      static_cast<double>(n);
  return tensor_l1_distance(adjacency_tensor(g, k), adjacency_tensor(h, k)) / norm;
}

inline double dhdm_jaccard(const Hypergraph& g, const Hypergraph& h,
                           const DirectHdmParams& = {}) {
  const std::size_t k = common_tensor_order(g, h);
  double lo = 0.0;
  double hi = 0.0;
  detail::for_each_expanded_pair(adjacency_tensor(g, k), adjacency_tensor(h, k),
                                 [&](double x, double y, double mult) {
                                   lo += mult * std::min(x, y);
                                   hi += mult * std::max(x, y);
                                 });
  if (hi == 0.0) return 0.0;
  return 1.0 - lo / hi;
}

/// (1/q) sum_i |a_i - b_i|^p over ascending sequences, the shorter one padded
/// with leading zeros to the common length q.
inline double padded_lp_distance(std::vector<double> a, std::vector<double> b, double p) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t q = std::max(a.size(), b.size());
  if (q == 0) return 0.0;
  a.insert(a.begin(), q - a.size(), 0.0);
  b.insert(b.begin(), q - b.size(), 0.0);
  double s = 0.0;
  for (std::size_t i = 0; i < q; ++i) s += std::pow(std::abs(a[i] - b[i]), p);
  return s / static_cast<double>(q);
}

/// Spectral-H: l_p distance between found H-eigenvalue sets of the Laplacian
/// tensors. The solver reports found sets, not certified complete spectra.
inline double dhdm_spectral_h(const Hypergraph& g, const Hypergraph& h,
                              const DirectHdmParams& params = {}) {
  params.validate();
  const std::size_t k = common_tensor_order(g, h);
  const auto a = h_eigenvalues_desk(laplacian_tensor(g, k), params.h_eigen);
  const auto b = h_eigenvalues_desk(laplacian_tensor(h, k), params.h_eigen);
  return padded_lp_distance(a.values, b.values, params.p);
}

/// Spectral-S: (1/n) sum_i |gamma_i - gamma~_i|^p over descending HOSVD
/// singular values of the Laplacian tensors.
inline double dhdm_spectral_s(const Hypergraph& g, const Hypergraph& h,
                              const DirectHdmParams& params = {}) {
  params.validate();
  const std::size_t k = common_tensor_order(g, h);
  auto a = hosvd_singular_values(laplacian_tensor(g, k)).values;
  auto b = hosvd_singular_values(laplacian_tensor(h, k)).values;
  std::reverse(a.begin(), a.end());
  std::reverse(b.begin(), b.end());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i] - b[i]), params.p);
  return a.empty() ? 0.0 : s / static_cast<double>(a.size());
}

inline double dhdm_centrality(const Hypergraph& g, const Hypergraph& h,
                              const DirectHdmParams& params = {}) {
  if (g.num_vertices() != h.num_vertices()) throw DataError("hypergraphs have different vertex counts");
  const auto cg = nsm_centrality(g, params.centrality);
  const auto ch = nsm_centrality(h, params.centrality);
  if (!cg.converged || !ch.converged) throw NumericalError("hypergraph centrality did not converge");
  return (cg.node - ch.node).lpNorm<1>() / static_cast<double>(g.num_vertices());
}

enum class DirectMeasure { hamming, jaccard, spectral_h, spectral_s, centrality };

inline constexpr std::array<std::pair<DirectMeasure, std::string_view>, 5> kDirectMeasureNames{{
    {DirectMeasure::hamming, "t-hamming"},
    {DirectMeasure::jaccard, "t-jaccard"},
    {DirectMeasure::spectral_h, "t-spectral-h"},
    {DirectMeasure::spectral_s, "t-spectral-s"},
    {DirectMeasure::centrality, "t-centrality"},
}};

inline std::string_view to_string(DirectMeasure m) {
  for (const auto& [k, name] : kDirectMeasureNames) {
    if (k == m) return name;
  }
  return "?";
}

inline std::optional<DirectMeasure> parse_direct_measure(std::string_view name) {
  for (const auto& [k, token] : kDirectMeasureNames) {
    if (token == name) return k;
  }
  return std::nullopt;
}

inline double direct_distance(DirectMeasure m, const Hypergraph& g, const Hypergraph& h,
                              const DirectHdmParams& params = {}) {
  switch (m) {
    case DirectMeasure::hamming: return dhdm_hamming(g, h, params);
    case DirectMeasure::jaccard: return dhdm_jaccard(g, h, params);
    case DirectMeasure::spectral_h: return dhdm_spectral_h(g, h, params);
    case DirectMeasure::spectral_s: return dhdm_spectral_s(g, h, params);
    case DirectMeasure::centrality: return dhdm_centrality(g, h, params);
  }
  throw DataError("unknown direct measure");
}

}  // namespace hdm
