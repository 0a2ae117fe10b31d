#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hdm/error.hpp"
#include "hdm/hypergraph.hpp"

namespace hdm {

// Choice of (f, g, phi, psi) in  c*lambda = g(H W f(e)),  e*mu = psi(H^T phi(c)).
//   linear:  all identity
//   log-exp: f = g = id, phi = exp, psi = log
//   lp:      f = id, g(x) = x^{1/(p+1)}, phi = exp, psi = log
enum class CentralityFamily { linear, log_exp, lp };

inline std::string_view to_string(CentralityFamily f) {
  switch (f) {
    case CentralityFamily::linear: return "linear";
    case CentralityFamily::log_exp: return "log-exp";
    case CentralityFamily::lp: return "lp";
  }
  return "?";
}

inline std::optional<CentralityFamily> parse_centrality_family(std::string_view s) {
  if (s == "linear") return CentralityFamily::linear;
  if (s == "log-exp") return CentralityFamily::log_exp;
  if (s == "lp") return CentralityFamily::lp;
  return std::nullopt;
}

struct CentralityConfig {
  CentralityFamily family = CentralityFamily::log_exp;
  double p = 2.0;
  double tol = 1e-8;
  std::size_t max_iter = 1000;
  // Isolated vertices get centrality 0 instead of raising.
  bool allow_isolated = true;

  void validate() const {
    if (!(tol > 0.0)) throw DataError("centrality tolerance must be positive");
    if (family == CentralityFamily::lp && !(p > 0.0)) throw DataError("lp family needs p > 0");
  }
};

struct CentralityResult {
  Eigen::VectorXd node;  // c, l1-normalized
  Eigen::VectorXd edge;  // e, l1-normalized
  std::size_t iterations = 0;
  bool converged = false;
};

namespace detail {

inline Eigen::VectorXd l1_normalized(const Eigen::VectorXd& v) {
  const double s = v.sum();
  if (!(s > 0.0) || !std::isfinite(s)) throw NumericalError("centrality iterate lost positivity");
  return v / s;
}

}  // namespace detail

/// One half-step pair of the nonlinear power method:
///   c <- normalize(g(H W f(e))),  e <- normalize(psi(H^T phi(c))).
/// Exposed for residual checks.
inline Eigen::VectorXd centrality_node_update(const Hypergraph& g, const Eigen::VectorXd& e,
                                              const CentralityConfig& cfg) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.num_vertices()));
  for (std::size_t j = 0; j < g.num_edges(); ++j) {
    const auto& edge = g.edges()[j];
    for (Vertex v : edge.vertices) c(v) += edge.weight * e(static_cast<Eigen::Index>(j));
  }
  if (cfg.family == CentralityFamily::lp) c = c.array().pow(1.0 / (cfg.p + 1.0)).matrix();
  return detail::l1_normalized(c);
}

inline Eigen::VectorXd centrality_edge_update(const Hypergraph& g, const Eigen::VectorXd& c,
                                              const CentralityConfig& cfg) {
  const bool nonlinear = cfg.family != CentralityFamily::linear;
  Eigen::VectorXd phi = nonlinear ? Eigen::VectorXd(c.array().exp()) : c;
  Eigen::VectorXd e(static_cast<Eigen::Index>(g.num_edges()));
  for (std::size_t j = 0; j < g.num_edges(); ++j) {
    double s = 0.0;
    for (Vertex v : g.edges()[j].vertices) s += phi(v);
    e(static_cast<Eigen::Index>(j)) = s;
  }
  if (nonlinear) {
    // Every argument is a sum of exp(c_v) with c_v > 0, hence > 1 and log(.) > 0.
    e = e.array().log().matrix();
  }
  return detail::l1_normalized(e);
}

/// Node and edge centralities of the coupled fixed point
///   c*lambda = g(H W f(e)),  e*mu = psi(H^T phi(c)),  c, e > 0,
/// by alternating l1-normalized updates from uniform starts until
/// max(|dc|_1, |de|_1) <= tol. Non-convergence is reported, not thrown.
inline CentralityResult nsm_centrality(const Hypergraph& g, const CentralityConfig& cfg = {}) {
  cfg.validate();
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  const auto m = static_cast<Eigen::Index>(g.num_edges());
  if (n == 0 || m == 0) throw DataError("centrality needs at least one vertex and one edge");
  if (!cfg.allow_isolated) {
    const auto counts = g.membership_counts();
    for (std::size_t v = 0; v < counts.size(); ++v) {
      if (counts[v] == 0) throw DataError("vertex " + std::to_string(v) + " is isolated");
    }
  }
  CentralityResult r;
  r.node = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  r.edge = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  for (r.iterations = 1; r.iterations <= cfg.max_iter; ++r.iterations) {
    const Eigen::VectorXd c = centrality_node_update(g, r.edge, cfg);
    const Eigen::VectorXd e = centrality_edge_update(g, c, cfg);
    const double dc = (c - r.node).lpNorm<1>();
    const double de = (e - r.edge).lpNorm<1>();
    r.node = c;
    r.edge = e;
    if (std::max(dc, de) <= cfg.tol) {
      r.converged = true;
      break;
    }
  }
  if (!r.converged) r.iterations = cfg.max_iter;
  return r;
}

}  // namespace hdm
