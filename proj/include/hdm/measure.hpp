#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hdm/direct_measures.hpp"
#include "hdm/error.hpp"
#include "hdm/expansion.hpp"
#include "hdm/graph_measures.hpp"
#include "hdm/hypergraph.hpp"

namespace hdm {

// clique/star expand first and apply a graph measure; tensor uses a direct measure.
enum class Method { clique, star, tensor };

inline std::optional<Method> parse_method(std::string_view s) {
  if (s == "clique") return Method::clique;
  if (s == "star") return Method::star;
  if (s == "tensor") return Method::tensor;
  return std::nullopt;
}

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::clique: return "clique";
    case Method::star: return "star";
    case Method::tensor: return "tensor";
  }
  return "?";
}

/// A fully specified hypergraph dissimilarity.
struct Measure {
  Method method = Method::clique;
  GraphMeasure graph = GraphMeasure::hamming;
  DirectMeasure direct = DirectMeasure::hamming;
  GdmParams gdm;
  DirectHdmParams dhdm;

  std::string name() const {
    return std::string(to_string(method)) + ":" +
           std::string(method == Method::tensor ? to_string(direct) : to_string(graph));
  }
};

/// Resolves a measure token under a method. With the tensor method the
/// unprefixed names hamming, jaccard, centrality and spectral are accepted
/// as t-hamming, t-jaccard, t-centrality and t-spectral-s.
inline Measure make_measure(std::string_view token, Method method) {
  Measure m;
  m.method = method;
  if (method == Method::tensor) {
    auto d = parse_direct_measure(token);
    if (!d) d = parse_direct_measure("t-" + std::string(token));
    if (!d && token == "spectral") d = DirectMeasure::spectral_s;
    if (!d) throw DataError("unknown tensor measure '" + std::string(token) + "'");
    m.direct = *d;
    return m;
  }
  const auto g = parse_graph_measure(token);
  if (!g) {
    throw DataError("unknown graph measure '" + std::string(token) + "' for method " +
                    std::string(to_string(method)));
  }
  m.graph = *g;
  return m;
}

inline ExpandedGraph expand_for(const Measure& m, const Hypergraph& g) {
  return expand(g, m.method == Method::star ? Expansion::star : Expansion::clique);
}

inline double distance(const Measure& m, const Hypergraph& g, const Hypergraph& h) {
  if (m.method == Method::tensor) return direct_distance(m.direct, g, h, m.dhdm);
  if (g.num_vertices() != h.num_vertices()) {
    throw DataError("hypergraphs have different vertex counts (" +
                    std::to_string(g.num_vertices()) + " vs " + std::to_string(h.num_vertices()) +
                    ")");
  }
  return graph_distance(m.graph, expand_for(m, g), expand_for(m, h), m.gdm);
}

}  // namespace hdm
