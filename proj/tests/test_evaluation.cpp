#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace hdm;
using hdm::testing::make;
using hdm::testing::random_uniform;

namespace {

// Mann-Whitney: P(d_pos < d_neg) + P(tie) / 2 over all positive/negative pair combinations.
double mann_whitney(const Eigen::MatrixXd& D, const std::vector<std::string>& labels) {
  std::vector<double> pos;
  std::vector<double> neg;
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < D.cols(); ++j) {
      (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)] ? pos : neg).push_back(D(i, j));
    }
  }
  double wins = 0.0;
  for (double p : pos) {
    for (double q : neg) wins += p < q ? 1.0 : (p == q ? 0.5 : 0.0);
  }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

std::pair<Eigen::MatrixXd, std::vector<std::string>> random_labeled(std::uint64_t seed, bool ties) {
  Rng rng(seed);
  const std::size_t classes = 2 + rng.below(3);
  const std::size_t n = 2 * classes + rng.below(10);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "c" + std::to_string(i % classes);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < D.cols(); ++j) {
      D(i, j) = D(j, i) = ties ? static_cast<double>(rng.below(4)) : rng.uniform();
    }
  }
  return {D, labels};
}

}  // namespace

TEST(Roc, MatchesMannWhitney) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto [D, labels] = random_labeled(seed, seed % 2 == 0);
    EXPECT_NEAR(roc_auc(D, labels).auc, mann_whitney(D, labels), 1e-12) << seed;
  }
}

TEST(Roc, PerfectSeparation) {
  const std::vector<std::string> labels{"a", "a", "a", "b", "b", "b"};
  Eigen::MatrixXd D(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) D(i, j) = i == j ? 0.0 : (labels[i] == labels[j] ? 1.0 : 2.0 + i + j);
  }
  const RocResult r = roc_auc(D, labels);
  EXPECT_EQ(r.auc, 1.0);
  EXPECT_EQ(roc_auc(D * -1.0 + Eigen::MatrixXd::Constant(6, 6, 100.0), labels).auc, 0.0);
}

TEST(Roc, CurveShape) {
  const auto [D, labels] = random_labeled(7, false);
  const RocResult r = roc_auc(D, labels);
  EXPECT_EQ(r.points.front().tpr, 0.0);
  EXPECT_EQ(r.points.back().fpr, 1.0);
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    EXPECT_GE(r.points[i].tpr, r.points[i - 1].tpr);
    EXPECT_GE(r.points[i].fpr, r.points[i - 1].fpr);
    EXPECT_GT(r.points[i].epsilon, r.points[i - 1].epsilon);
  }
}

TEST(Roc, RandomMatricesNearHalf) {
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed + 1000);
    const std::size_t n = 40;
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i % 4);
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(40, 40);
    for (int i = 0; i < 40; ++i) {
      for (int j = i + 1; j < 40; ++j) D(i, j) = D(j, i) = rng.uniform();
    }
    const double auc = roc_auc(D, labels).auc;
    EXPECT_GE(auc, 0.4);
    EXPECT_LE(auc, 0.6);
    sum += auc;
  }
  EXPECT_NEAR(sum / 50.0, 0.5, 0.03);
}

TEST(Roc, MonotoneTransformInvariance) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [D, labels] = random_labeled(seed, false);
    const Eigen::MatrixXd E = D.array().exp() * 3.0;
    EXPECT_EQ(roc_auc(D, labels).auc, roc_auc(E, labels).auc);
  }
}

TEST(Roc, InputChecks) {
  const Eigen::MatrixXd D = Eigen::MatrixXd::Zero(4, 4);
  EXPECT_THROW(roc_auc(D, {"a", "a", "a", "a"}), DataError);
  EXPECT_THROW(roc_auc(D, {"a", "a", "a", "b"}), DataError);
  EXPECT_THROW(roc_auc(D, {"a", "a", "b"}), DataError);
}

TEST(Roc, CsvOutput) {
  const auto [D, labels] = random_labeled(3, false);
  const std::string csv = write_roc_csv(roc_auc(D, labels));
  EXPECT_EQ(csv.rfind("epsilon,tpr,fpr\n", 0), 0u);
  EXPECT_NE(csv.find("#auc,"), std::string::npos);
  EXPECT_NE(csv.find("-inf,0,0"), std::string::npos);
}

TEST(DistanceMatrix, MatchesPairwiseDistanceBitExactly) {
  std::vector<Hypergraph> items;
  for (std::uint64_t s = 0; s < 6; ++s) items.push_back(random_uniform(s, 9, 8, 3));
  for (const auto& [token, method] : std::vector<std::pair<std::string, Method>>{
           {"hamming", Method::clique}, {"spectral", Method::star}, {"centrality", Method::clique},
           {"t-hamming", Method::tensor}, {"t-spectral-s", Method::tensor}}) {
    const Measure m = make_measure(token, method);
    const DistanceMatrix D = distance_matrix(items, m);
    const DistanceMatrix P = distance_matrix(items, m, {}, 3);
    EXPECT_EQ(D.values, P.values);
    EXPECT_EQ(D.measure, m.name());
    for (Eigen::Index i = 0; i < 6; ++i) {
      EXPECT_EQ(D.values(i, i), 0.0);
      for (Eigen::Index j = 0; j < 6; ++j) {
        EXPECT_EQ(D.values(i, j), D.values(j, i));
        if (i != j) {
          EXPECT_EQ(D.values(i, j), distance(m, items[i], items[j]));
        }
      }
    }
  }
}

TEST(DistanceMatrix, Errors) {
  const Measure m = make_measure("hamming", Method::clique);
  EXPECT_THROW(distance_matrix({make(3, {{0, 1}}), make(4, {{0, 1}})}, m), DataError);
  EXPECT_THROW(distance_matrix({make(3, {{0, 1}})}, m, {"a", "b"}), DataError);
}

TEST(DistanceMatrix, CsvRoundTrip) {
  std::vector<Hypergraph> items;
  for (std::uint64_t s = 0; s < 4; ++s) items.push_back(random_uniform(s, 8, 6, 3));
  const DistanceMatrix D = distance_matrix(items, make_measure("spectral", Method::clique), {"x", "x", "y", "y"});
  const DistanceMatrix back = parse_distance_csv("#provenance,tool=hdm,measure=clique:spectral\n" + write_distance_csv(D));
  EXPECT_EQ(back.values, D.values);
  EXPECT_EQ(back.labels, D.labels);
  EXPECT_EQ(back.measure, "clique:spectral");
  EXPECT_THROW(parse_distance_csv("0,1\n1,0\n"), ParseError);
  EXPECT_THROW(parse_distance_csv("#labels,a,b\n0,1\n2,0\n"), DataError);
  EXPECT_THROW(parse_distance_csv("#labels,a,b\n1,1\n1,0\n"), DataError);
  EXPECT_THROW(parse_distance_csv("#labels,a,b\n0,-1\n-1,0\n"), DataError);
  EXPECT_THROW(parse_distance_csv("#labels,a,b\n0,1\n"), ParseError);
}

TEST(PermutationTest, PValue) {
  EXPECT_EQ(permutation_p_value(1.0, {0.5, 1.0, 2.0, 3.0}), 0.5);
  EXPECT_EQ(permutation_p_value(0.0, {0.5, 1.0}), 1.0);
  EXPECT_EQ(permutation_p_value(5.0, {0.5, 1.0}), 0.0);
  EXPECT_THROW(permutation_p_value(1.0, {}), DataError);
  // non-increasing in the observed statistic
  const std::vector<double> nulls{0.1, 0.4, 0.4, 0.9, 1.3};
  double prev = 1.0;
  for (double obs = 0.0; obs < 1.5; obs += 0.05) {
    const double p = permutation_p_value(obs, nulls);
    EXPECT_LE(p, prev);
    prev = p;
  }
}

TEST(PermutationTest, IdenticalHypergraphsAreNotRejected) {
  const Hypergraph g = gen_erh(20, 25, 3, 1);
  const PermTestResult r =
      permutation_test(g, g, make_measure("spectral", Method::clique), NullModel::cl_uniform, 50, 0.05, 3);
  EXPECT_EQ(r.observed, 0.0);
  EXPECT_EQ(r.nulls.size(), 50u);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_FALSE(r.reject);
}

TEST(PermutationTest, DeterministicAcrossThreads) {
  const Hypergraph g = gen_erh(20, 25, 3, 1);
  const Hypergraph h = gen_sfh(20, 25, 3, 0.5, 2);
  const Measure m = make_measure("hamming", Method::clique);
  const PermTestResult a = permutation_test(g, h, m, NullModel::cl_uniform, 40, 0.05, 9, 1);
  const PermTestResult b = permutation_test(g, h, m, NullModel::cl_uniform, 40, 0.05, 9, 4);
  EXPECT_EQ(a.nulls, b.nulls);
  EXPECT_EQ(a.p_value, b.p_value);
  EXPECT_THROW(permutation_test(g, h, m, NullModel::cl_uniform, 0, 0.05, 9), DataError);
}
