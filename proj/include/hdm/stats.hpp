#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hdm/error.hpp"
#include "hdm/generators.hpp"
#include "hdm/hypergraph.hpp"
#include "hdm/io.hpp"

namespace hdm {

struct HyperStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k_max = 0;
  std::map<std::size_t, std::size_t> degree_histogram;  // membership count -> vertices
  // Mean shortest-path length over reachable ordered pairs of distinct vertices.
  double avg_path_length = 0.0;
  bool connected = true;
  double unreachable_fraction = 0.0;  // of the n(n-1) ordered pairs
  std::vector<double> clustering;     // C_j
  double mean_clustering = 0.0;       // C_a
};

/// Neighbour lists of the section graph: u ~ v iff they share a hyperedge.
inline std::vector<std::vector<Vertex>> section_neighbours(const Hypergraph& g) {
  std::vector<std::vector<Vertex>> nb(g.num_vertices());
  for (const auto& e : g.edges()) {
    for (Vertex u : e.vertices) {
      for (Vertex v : e.vertices) {
        if (u != v) nb[u].push_back(v);
      }
    }
  }
  for (auto& l : nb) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return nb;
}

inline HyperStats hyper_stats(const Hypergraph& g) {
  HyperStats s;
  s.n = g.num_vertices();
  s.m = g.num_edges();
  s.k_max = g.max_cardinality();
  for (std::size_t d : g.membership_counts()) ++s.degree_histogram[d];

  const auto nb = section_neighbours(g);
  const std::size_t n = s.n;

  // Path lengths by BFS from every source.
  double total = 0.0;
  std::size_t reachable = 0;
  std::vector<std::size_t> dist(n);
  for (std::size_t src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), SIZE_MAX);
    dist[src] = 0;
    std::queue<Vertex> q;
    q.push(static_cast<Vertex>(src));
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop();
      for (Vertex v : nb[u]) {
        if (dist[v] == SIZE_MAX) {
          dist[v] = dist[u] + 1;
          q.push(v);
          total += static_cast<double>(dist[v]);
          ++reachable;
        }
      }
    }
  }
  const std::size_t pairs = n * (n > 0 ? n - 1 : 0);
  s.avg_path_length = reachable > 0 ? total / static_cast<double>(reachable) : 0.0;
  s.connected = reachable == pairs;
  s.unreachable_fraction =
      pairs > 0 ? static_cast<double>(pairs - reachable) / static_cast<double>(pairs) : 0.0;

  // C_j: edges of cardinality k inside the neighbourhood of j over C(|V_j|, k).
  const std::size_t k = s.k_max;
  s.clustering.assign(n, 0.0);
  std::vector<char> in_nb(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t size = nb[j].size();
    if (k == 0 || size < k) continue;
    for (Vertex v : nb[j]) in_nb[v] = 1;
    std::size_t inside = 0;
    for (const auto& e : g.edges()) {
      if (e.size() != k) continue;
      if (std::all_of(e.vertices.begin(), e.vertices.end(), [&](Vertex v) { return in_nb[v] != 0; })) {
        ++inside;
      }
    }
    for (Vertex v : nb[j]) in_nb[v] = 0;
    s.clustering[j] = static_cast<double>(inside) / binomial(size, k);
  }
  if (n > 0) {
    double sum = 0.0;
    for (double c : s.clustering) sum += c;
    s.mean_clustering = sum / static_cast<double>(n);
  }
  return s;
}

struct PowerLawFit {
  double alpha = 0.0;
  std::size_t xmin = 0;
  std::size_t tail_size = 0;
  double ks = 0.0;
};

/// Discrete power-law fit of positive integer samples: for each candidate
/// xmin the exponent is alpha = 1 + t / sum ln(x / (xmin - 1/2)) over the
/// tail x >= xmin, and the xmin minimizing the Kolmogorov-Smirnov distance
/// between the empirical tail and the fitted (continuous-approximation) CDF
/// is kept. Candidates leaving fewer than `min_tail` samples are skipped.
inline PowerLawFit fit_power_law(std::vector<std::size_t> samples, std::size_t min_tail = 50) {
  samples.erase(std::remove(samples.begin(), samples.end(), std::size_t{0}), samples.end());
  std::sort(samples.begin(), samples.end());
  if (samples.size() < 2) throw DataError("power-law fit needs at least two positive samples");
  min_tail = std::clamp<std::size_t>(min_tail, 2, samples.size());
  PowerLawFit best;
  best.ks = INFINITY;
  std::vector<std::size_t> candidates(samples.begin(), samples.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (std::size_t xmin : candidates) {
    const auto first = std::lower_bound(samples.begin(), samples.end(), xmin);
    const auto t = static_cast<std::size_t>(samples.end() - first);
    if (t < min_tail) break;
    const double shift = static_cast<double>(xmin) - 0.5;
    double logsum = 0.0;
    for (auto it = first; it != samples.end(); ++it) logsum += std::log(static_cast<double>(*it) / shift);
    if (!(logsum > 0.0)) continue;
    const double alpha = 1.0 + static_cast<double>(t) / logsum;
    // KS over the distinct tail values.
    double ks = 0.0;
    for (auto it = first; it != samples.end();) {
      const std::size_t x = *it;
      const auto next = std::upper_bound(it, samples.end(), x);
      const double emp = static_cast<double>(next - first) / static_cast<double>(t);
      const double model = 1.0 - std::pow((static_cast<double>(x) + 0.5) / shift, 1.0 - alpha);
      ks = std::max(ks, std::abs(emp - model));
      it = next;
    }
    if (ks < best.ks) best = {alpha, xmin, t, ks};
  }
  if (best.tail_size == 0) throw NumericalError("power-law fit found no admissible tail");
  return best;
}

struct TimeSeriesMatrix {
  Eigen::MatrixXd data;  // T x s: rows are time samples, columns are signals
  std::vector<std::string> labels;

  std::size_t samples() const { return static_cast<std::size_t>(data.rows()); }
  std::size_t signals() const { return static_cast<std::size_t>(data.cols()); }
};

/// Time-series CSV: an optional first row `#labels,<l1>,...`, then one row of
/// comma-separated reals per time sample.
inline TimeSeriesMatrix parse_timeseries_csv(std::string_view text) {
  const auto rows = detail::lines(text);
  TimeSeriesMatrix ts;
  std::vector<std::vector<double>> values;
  std::size_t width = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto line = detail::trim(rows[i]);
    if (line.empty()) continue;
    if (i == 0 && line.rfind("#labels", 0) == 0) {
      const auto cells = detail::split(line, ',');
      for (std::size_t c = 1; c < cells.size(); ++c) ts.labels.emplace_back(detail::trim(cells[c]));
      continue;
    }
    const auto cells = detail::split(line, ',');
    std::vector<double> row;
    for (auto cell : cells) {
      double v = 0.0;
      if (!detail::parse_double(detail::trim(cell), v) || !std::isfinite(v)) {
        throw ParseError(i + 1, "not a finite real: '" + std::string(cell) + "'");
      }
      row.push_back(v);
    }
    if (width == 0) width = row.size();
    if (row.size() != width) {
      throw ParseError(i + 1, "expected " + std::to_string(width) + " columns, got " +
                                  std::to_string(row.size()));
    }
    values.push_back(std::move(row));
  }
  if (!ts.labels.empty() && width != 0 && ts.labels.size() != width) {
    throw ParseError(1, "label row has " + std::to_string(ts.labels.size()) + " entries for " +
                            std::to_string(width) + " columns");
  }
  if (values.size() < 3) throw DataError("time series needs at least 3 samples");
  ts.data.resize(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < values.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      ts.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r][c];
    }
  }
  if (ts.labels.empty()) {
    for (std::size_t c = 0; c < width; ++c) ts.labels.push_back("s" + std::to_string(c));
  }
  return ts;
}

namespace detail {

// Centred cross-products S_ab = sum_t (x_a - mean_a)(x_b - mean_b).
inline Eigen::MatrixXd centred_products(const TimeSeriesMatrix& ts) {
  const Eigen::Index T = ts.data.rows();
  const Eigen::Index s = ts.data.cols();
  if (T < 3) throw DataError("time series needs at least 3 samples");
  Eigen::MatrixXd centred = ts.data;
  for (Eigen::Index c = 0; c < s; ++c) {
    double mean = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) mean += ts.data(t, c);
    mean /= static_cast<double>(T);
    for (Eigen::Index t = 0; t < T; ++t) centred(t, c) -= mean;
  }
  Eigen::MatrixXd S(s, s);
  for (Eigen::Index a = 0; a < s; ++a) {
    for (Eigen::Index b = a; b < s; ++b) {
      double acc = 0.0;
      for (Eigen::Index t = 0; t < T; ++t) acc += centred(t, a) * centred(t, b);
      S(a, b) = S(b, a) = acc;
    }
    if (!(S(a, a) > 0.0)) {
      throw DataError("signal " + std::to_string(a) + " is constant; correlation undefined");
    }
  }
  return S;
}

inline double pearson(const Eigen::MatrixXd& S, Eigen::Index a, Eigen::Index b) {
  return S(a, b) / std::sqrt(S(a, a) * S(b, b));
}

inline double multicorrelation_from(const Eigen::MatrixXd& S, Eigen::Index i, Eigen::Index j,
                                    Eigen::Index l) {
  const double r12 = pearson(S, i, j);
  const double r13 = pearson(S, i, l);
  const double r23 = pearson(S, j, l);
  // det of [[1, r12, r13], [r12, 1, r23], [r13, r23, 1]]
  double det = (1.0 - r12 * r12) * (1.0 - r13 * r13) - (r23 - r12 * r13) * (r23 - r12 * r13);
  det = std::clamp(det, 0.0, 1.0);
  return std::sqrt(1.0 - det);
}

}  // namespace detail

/// rho = (1 - det R)^{1/2}, R the 3x3 Pearson correlation matrix of signals i, j, l.
inline double multicorrelation(const TimeSeriesMatrix& ts, std::size_t i, std::size_t j, std::size_t l) {
  const std::size_t s = ts.signals();
  if (i >= s || j >= s || l >= s) throw DataError("signal index out of range");
  if (i == j || i == l || j == l) throw DataError("multi-correlation needs three distinct signals");
  TimeSeriesMatrix sub;
  sub.data.resize(ts.data.rows(), 3);
  sub.data.col(0) = ts.data.col(static_cast<Eigen::Index>(i));
  sub.data.col(1) = ts.data.col(static_cast<Eigen::Index>(j));
  sub.data.col(2) = ts.data.col(static_cast<Eigen::Index>(l));
  return detail::multicorrelation_from(detail::centred_products(sub), 0, 1, 2);
}

inline constexpr double kDefaultMulticorrelationThreshold = 0.93;

/// 3-uniform hypergraph on all signals with an edge {i,j,l} of weight rho for
/// every triple whose multi-correlation exceeds `threshold`.
inline Hypergraph timeseries_to_hypergraph(const TimeSeriesMatrix& ts,
                                           double threshold = kDefaultMulticorrelationThreshold) {
  const std::size_t s = ts.signals();
  if (s < 3) throw DataError("need at least 3 signals");
  const Eigen::MatrixXd S = detail::centred_products(ts);
  std::vector<Hyperedge> edges;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      for (std::size_t l = j + 1; l < s; ++l) {
        const double rho = detail::multicorrelation_from(S, static_cast<Eigen::Index>(i),
                                                         static_cast<Eigen::Index>(j),
                                                         static_cast<Eigen::Index>(l));
        if (rho > threshold) {
          edges.push_back({{static_cast<Vertex>(i), static_cast<Vertex>(j), static_cast<Vertex>(l)}, rho});
        }
      }
    }
  }
  Hypergraph g(s, std::move(edges));
  g.labels = ts.labels;
  return g;
}

}  // namespace hdm
