#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace hdm;
using hdm::testing::make;
using hdm::testing::random_hypergraph;
using hdm::testing::random_uniform;

namespace {

// Entry enumeration over dense tensors.
std::pair<double, double> dense_min_max(const SymTensor& A, const SymTensor& B) {
  const auto a = A.to_dense();
  const auto b = B.to_dense();
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    lo += std::min(a[i], b[i]);
    hi += std::max(a[i], b[i]);
  }
  return {lo, hi};
}

double dense_l1(const SymTensor& A, const SymTensor& B) {
  const auto a = A.to_dense();
  const auto b = B.to_dense();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

const std::vector<DirectMeasure> kAll = {DirectMeasure::hamming, DirectMeasure::jaccard, DirectMeasure::spectral_h,
                                         DirectMeasure::spectral_s, DirectMeasure::centrality};

DirectHdmParams fast() {
  DirectHdmParams p;
  p.h_eigen.random_starts = 150;
  return p;
}

}  // namespace

TEST(TensorHamming, Examples) {
  EXPECT_DOUBLE_EQ(dhdm_hamming(make(3, {{0, 1, 2}}), Hypergraph(3)), 1.0 / 8.0);
  EXPECT_DOUBLE_EQ(dhdm_hamming(Hypergraph(3), make(3, {{0, 1, 2}})), 1.0 / 8.0);
  const Hypergraph g = random_uniform(1, 6, 5, 3);
  EXPECT_EQ(dhdm_hamming(g, g), 0.0);
}

TEST(TensorHamming, MatchesDenseOracleAndScales) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Hypergraph g = random_hypergraph(seed, 5, 5, 2, 3, true);
    const Hypergraph h = random_hypergraph(seed + 40, 5, 6, 3, 3, true);
    const std::size_t k = 3;
    const double oracle = dense_l1(adjacency_tensor(g, k), adjacency_tensor(h, k)) / (125.0 - 5.0);
    EXPECT_NEAR(dhdm_hamming(g, h), oracle, 1e-14);
  }
  const Hypergraph g = random_uniform(2, 6, 6, 3);
  std::vector<Hyperedge> scaled = g.edges();
  for (auto& e : scaled) e.weight *= 3.0;
  EXPECT_NEAR(dhdm_hamming(Hypergraph(6, scaled), Hypergraph(6)), 3.0 * dhdm_hamming(g, Hypergraph(6)), 1e-15);
}

TEST(TensorHamming, WeightAwareness) {
  const Hypergraph g = random_uniform(4, 6, 6, 3);
  std::vector<Hyperedge> heavier = g.edges();
  heavier[0].weight += 0.5;
  const Hypergraph h(6, heavier);
  EXPECT_GT(dhdm_hamming(g, h), 0.0);
  heavier[0].weight += 0.5;
  EXPECT_GT(dhdm_hamming(g, Hypergraph(6, heavier)), dhdm_hamming(g, h));
}

TEST(TensorJaccard, Examples) {
  const Hypergraph a = make(4, {{0, 1, 2}});
  const Hypergraph b = make(4, {{0, 1, 2}, {1, 2, 3}});
  EXPECT_DOUBLE_EQ(dhdm_jaccard(a, b), 0.5);
  const auto [lo, hi] = dense_min_max(adjacency_tensor(a), adjacency_tensor(b));
  EXPECT_DOUBLE_EQ(dhdm_jaccard(a, b), 1.0 - lo / hi);
  EXPECT_EQ(dhdm_jaccard(b, b), 0.0);
  EXPECT_EQ(dhdm_jaccard(make(4, {{0, 1, 2}}), make(4, {{1, 2, 3}})), 1.0);
  EXPECT_EQ(dhdm_jaccard(Hypergraph(4), Hypergraph(4)), 0.0);
}

TEST(DirectMeasures, GraphCaseAgreesWithGraphMeasures) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Hypergraph g = random_hypergraph(seed, 8, 10, 2, 2, true);
    const Hypergraph h = random_hypergraph(seed + 99, 8, 10, 2, 2, true);
    const ExpandedGraph G = clique_expand_standard(g);
    const ExpandedGraph H = clique_expand_standard(h);
    EXPECT_EQ(dhdm_hamming(g, h), gdm_hamming(G, H));
    EXPECT_NEAR(dhdm_jaccard(g, h), gdm_jaccard(G, H), 1e-15);
  }
}

TEST(SpectralH, PaddingRule) {
  EXPECT_DOUBLE_EQ(padded_lp_distance({0.0, 2.0}, {0.0, 1.0, 2.0}, 2.0), 1.0 / 3.0);
  EXPECT_EQ(padded_lp_distance({}, {}, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(padded_lp_distance({1.0}, {}, 1.0), 1.0);
}

TEST(SpectralH, IdentityAndRelabeling) {
  // default solver budget: enough starts for the complete found set at this size
  const Hypergraph g = random_uniform(5, 6, 5, 3);
  const Hypergraph h = random_uniform(6, 6, 5, 3);
  EXPECT_EQ(dhdm_spectral_h(g, g), 0.0);
  const double base = dhdm_spectral_h(g, h);
  EXPECT_GT(base, 0.0);
  const auto perm = hdm::testing::random_permutation(17, 6);
  EXPECT_NEAR(dhdm_spectral_h(g.relabeled(perm), h), base, 1e-8);
}

TEST(SpectralS, GraphCaseMatchesMatrixSingularValues) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Hypergraph g = random_hypergraph(seed, 7, 9, 2, 2, true);
    const Hypergraph h = random_hypergraph(seed + 31, 7, 9, 2, 2, true);
    auto sv = [](const Hypergraph& x) {
      const Eigen::MatrixXd L = combinatorial_laplacian(clique_expand_standard(x)).M;
      return Eigen::VectorXd(Eigen::JacobiSVD<Eigen::MatrixXd>(L).singularValues());  // descending
    };
    const Eigen::VectorXd a = sv(g);
    const Eigen::VectorXd b = sv(h);
    const double oracle = (a - b).array().square().sum() / 7.0;
    EXPECT_NEAR(dhdm_spectral_s(g, h), oracle, 1e-10);
  }
}

TEST(SpectralS, DistinguishesExample) {
  EXPECT_GT(dhdm_spectral_s(make(4, {{0, 1, 2}}), make(4, {{0, 1, 2}, {1, 2, 3}})), 1e-3);
}

TEST(TensorCentrality, Examples) {
  const Hypergraph g = random_uniform(7, 8, 8, 3);
  EXPECT_EQ(dhdm_centrality(g, g), 0.0);
  EXPECT_NEAR(dhdm_centrality(make(3, {{0, 1, 2}}), make(3, {{0, 1}, {1, 2}, {0, 2}})), 0.0, 1e-15);
  const Hypergraph attached = make(4, {{0, 1, 2}, {2, 3}});
  const Hypergraph uniform = make(4, {{0, 1, 2, 3}});
  const CentralityResult c = nsm_centrality(attached);
  const double oracle = (c.node - Eigen::VectorXd::Constant(4, 0.25)).cwiseAbs().sum() / 4.0;
  EXPECT_NEAR(dhdm_centrality(attached, uniform), oracle, 1e-15);
  EXPECT_GT(oracle, 0.0);
}

TEST(DirectMeasures, ShapeChecks) {
  EXPECT_THROW(dhdm_hamming(make(4, {{0, 1, 2}}), make(4, {{0, 1}})), DataError);
  EXPECT_THROW(dhdm_hamming(make(4, {{0, 1, 2}}), make(5, {{0, 1, 2}})), DataError);
  EXPECT_THROW(dhdm_centrality(make(4, {{0, 1, 2}}), make(5, {{0, 1, 2}})), DataError);
}

TEST(DirectMeasures, SymmetryIdentityNonNegativity) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Hypergraph g = random_uniform(seed, 7, 6, 3);
    const Hypergraph h = random_uniform(seed + 50, 7, 6, 3);
    for (DirectMeasure m : kAll) {
      SCOPED_TRACE(std::string(to_string(m)));
      const double gh = direct_distance(m, g, h, fast());
      EXPECT_GE(gh, 0.0);
      EXPECT_NEAR(gh, direct_distance(m, h, g, fast()), 1e-12);
      EXPECT_EQ(direct_distance(m, g, g, fast()), 0.0);
    }
  }
}

TEST(DirectMeasures, TokensRoundTrip) {
  for (DirectMeasure m : kAll) EXPECT_EQ(parse_direct_measure(to_string(m)), m);
  EXPECT_EQ(make_measure("spectral", Method::tensor).direct, DirectMeasure::spectral_s);
  EXPECT_EQ(make_measure("hamming", Method::tensor).direct, DirectMeasure::hamming);
  EXPECT_EQ(make_measure("t-spectral-h", Method::tensor).direct, DirectMeasure::spectral_h);
  EXPECT_THROW(make_measure("t-hamming", Method::clique), DataError);
}
