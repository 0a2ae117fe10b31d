#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hdm/error.hpp"
#include "hdm/generators.hpp"
#include "hdm/hypergraph.hpp"
#include "hdm/io.hpp"
#include "hdm/measure.hpp"
#include "hdm/parallel.hpp"
#include "hdm/random.hpp"

namespace hdm {

struct DistanceMatrix {
  Eigen::MatrixXd values;           // symmetric, zero diagonal
  std::vector<std::string> labels;  // class label per item
  std::string measure;              // provenance, e.g. "clique:hamming"

  std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
};

/// All pairwise distances; each unordered pair is computed once. For the
/// clique and star methods every item is expanded once up front.
inline DistanceMatrix distance_matrix(const std::vector<Hypergraph>& items, const Measure& measure,
                                      std::vector<std::string> labels = {}, std::size_t threads = 1) {
  const std::size_t n = items.size();
  if (!labels.empty() && labels.size() != n) throw DataError("one label per item is required");
  DistanceMatrix D;
  D.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  D.labels = std::move(labels);
  D.measure = measure.name();

  std::vector<ExpandedGraph> expanded;
  if (measure.method != Method::tensor) {
    expanded.resize(n);
    parallel_for(n, threads, [&](std::size_t i) { expanded[i] = expand_for(measure, items[i]); });
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> out(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t t) {
    const auto [i, j] = pairs[t];
    try {
      if (items[i].num_vertices() != items[j].num_vertices()) {
        throw DataError("different vertex counts (" + std::to_string(items[i].num_vertices()) +
                        " vs " + std::to_string(items[j].num_vertices()) + ")");
      }
      out[t] = measure.method == Method::tensor
                   ? direct_distance(measure.direct, items[i], items[j], measure.dhdm)
                   : graph_distance(measure.graph, expanded[i], expanded[j], measure.gdm);
    } catch (const DataError& e) {
      throw DataError("items " + std::to_string(i) + " and " + std::to_string(j) + ": " + e.what());
    }
  });
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    const auto [i, j] = pairs[t];
    D.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = out[t];
    D.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = out[t];
  }
  return D;
}

/// `#labels,<l1>,...` followed by one comma-separated row per item.
inline std::string write_distance_csv(const DistanceMatrix& D) {
  std::string out = "#labels";
  for (std::size_t i = 0; i < D.size(); ++i) {
    out += ',';
    out += i < D.labels.size() ? D.labels[i] : std::to_string(i);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < D.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < D.values.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_real(D.values(i, j));
    }
    out += '\n';
  }
  return out;
}

/// Reads a matrix written by write_distance_csv. Other `#` lines are ignored.
inline DistanceMatrix parse_distance_csv(std::string_view text) {
  DistanceMatrix D;
  std::vector<std::vector<double>> rows;
  bool have_labels = false;
  const auto ls = detail::lines(text);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const auto line = detail::trim(ls[i]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.rfind("#labels", 0) == 0) {
        const auto cells = detail::split(line, ',');
        D.labels.clear();
        for (std::size_t c = 1; c < cells.size(); ++c) D.labels.emplace_back(detail::trim(cells[c]));
        have_labels = true;
      } else if (line.rfind("#provenance", 0) == 0) {
        for (auto cell : detail::split(line, ',')) {
          if (cell.rfind("measure=", 0) == 0) D.measure = std::string(cell.substr(8));
        }
      }
      continue;
    }
    std::vector<double> row;
    for (auto cell : detail::split(line, ',')) {
      double v = 0.0;
      if (!detail::parse_double(detail::trim(cell), v)) {
        throw ParseError(i + 1, "not a number: '" + std::string(cell) + "'");
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  if (!have_labels) throw ParseError(0, "missing #labels row");
  if (D.labels.size() != n) {
    throw ParseError(0, "#labels has " + std::to_string(D.labels.size()) + " entries for " +
                            std::to_string(n) + " rows");
  }
  D.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw ParseError(0, "row " + std::to_string(i) + " is not of length " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      D.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    if (D.values(ii, ii) != 0.0) throw DataError("distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      if (!(D.values(ii, jj) >= 0.0)) throw DataError("distance matrix entries must be non-negative");
      if (std::abs(D.values(ii, jj) - D.values(jj, ii)) > 1e-12) {
        throw DataError("distance matrix is not symmetric");
      }
    }
  }
  return D;
}

struct RocPoint {
  double epsilon = 0.0;
  double tpr = 0.0;
  double fpr = 0.0;
};

struct RocResult {
  std::vector<RocPoint> points;  // increasing epsilon, hence non-decreasing FPR and TPR
  double auc = 0.0;
};

/// Pair-level ROC. Positives are unordered same-class pairs, negatives
/// cross-class pairs; a pair is classified "same" when its distance is
/// strictly below epsilon. Epsilon sweeps -inf, every distinct distance and
/// +inf; the AUC is the trapezoid area, which equals the Mann-Whitney
/// probability with ties counted one half.
inline RocResult roc_auc(const Eigen::MatrixXd& D, const std::vector<std::string>& labels) {
  const auto n = static_cast<std::size_t>(D.rows());
  if (D.cols() != D.rows() || labels.size() != n) throw DataError("matrix and labels disagree in size");
  std::map<std::string, std::size_t> class_sizes;
  for (const auto& l : labels) ++class_sizes[l];
  if (class_sizes.size() < 2) throw DataError("ROC needs at least 2 classes");
  for (const auto& [label, count] : class_sizes) {
    if (count < 2) throw DataError("class '" + label + "' has fewer than 2 items");
  }
  struct Pair {
    double d;
    bool positive;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (std::isnan(d)) throw DataError("distance matrix contains NaN");
      pairs.push_back({d, labels[i] == labels[j]});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.d < b.d; });
  std::uint64_t P = 0;
  for (const auto& p : pairs) P += p.positive ? 1 : 0;
  const std::uint64_t N = pairs.size() - P;

  RocResult r;
  r.points.push_back({-std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  // Twice the area in units of (1/P)(1/N), accumulated exactly in integers.
  std::uint64_t area2 = 0;
  std::size_t i = 0;
  while (i < pairs.size()) {
    // epsilon = pairs[i].d: pairs with d < epsilon are those already counted.
    r.points.push_back({pairs[i].d, static_cast<double>(tp) / static_cast<double>(P),
                        static_cast<double>(fp) / static_cast<double>(N)});
    std::uint64_t dtp = 0;
    std::uint64_t dfp = 0;
    std::size_t j = i;
    while (j < pairs.size() && pairs[j].d == pairs[i].d) {
      (pairs[j].positive ? dtp : dfp) += 1;
      ++j;
    }
    area2 += dfp * (2 * tp + dtp);
    tp += dtp;
    fp += dfp;
    i = j;
  }
  r.points.push_back({std::numeric_limits<double>::infinity(), 1.0, 1.0});
  r.auc = static_cast<double>(area2) / (2.0 * static_cast<double>(P) * static_cast<double>(N));
  return r;
}

inline RocResult roc_auc(const DistanceMatrix& D) { return roc_auc(D.values, D.labels); }

/// `epsilon,tpr,fpr` rows followed by `#auc,<value>`.
inline std::string write_roc_csv(const RocResult& r) {
  std::string out = "epsilon,tpr,fpr\n";
  for (const auto& p : r.points) {
    out += format_real(p.epsilon) + "," + format_real(p.tpr) + "," + format_real(p.fpr) + "\n";
  }
  out += "#auc," + format_real(r.auc) + "\n";
  return out;
}

struct PermTestResult {
  double observed = 0.0;      // d(g1, g2)
  std::vector<double> nulls;  // d(g1, g_i) for the null samples g_i
  double p_value = 0.0;       // fraction of nulls strictly greater than observed
  double alpha = 0.05;
  bool reject = false;  // p_value <= alpha
};

inline double permutation_p_value(double observed, const std::vector<double>& nulls) {
  if (nulls.empty()) throw DataError("permutation test needs at least one null sample");
  std::size_t above = 0;
  for (double d : nulls) above += d > observed ? 1 : 0;
  return static_cast<double>(above) / static_cast<double>(nulls.size());
}

/// Permutation test of H0 "g2 is drawn from the same null ensemble as g1":
/// draws `samples` null hypergraphs from `model` fitted to g1, the i-th with
/// seed derive_seed(seed, i), and compares their distances to g1 against
/// d(g1, g2).
inline PermTestResult permutation_test(const Hypergraph& g1, const Hypergraph& g2,
                                       const Measure& measure, NullModel model,
                                       std::size_t samples, double alpha, std::uint64_t seed,
                                       std::size_t threads = 1) {
  if (samples == 0) throw DataError("permutation test needs at least one null sample");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DataError("significance level must lie in [0, 1]");
  PermTestResult r;
  r.alpha = alpha;
  r.observed = distance(measure, g1, g2);
  r.nulls.resize(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    const Hypergraph null = sample_null(model, g1, derive_seed(seed, i));
    r.nulls[i] = distance(measure, g1, null);
  });
  r.p_value = permutation_p_value(r.observed, r.nulls);
  r.reject = r.p_value <= alpha;
  return r;
}

}  // namespace hdm
