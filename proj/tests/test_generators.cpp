#include <gtest/gtest.h>

#include <map>

#include "test_util.hpp"

using namespace hdm;
using hdm::testing::make;
using hdm::testing::random_hypergraph;

namespace {

std::set<std::vector<Vertex>> edge_sets(const Hypergraph& g) {
  std::set<std::vector<Vertex>> s;
  for (const auto& e : g.edges()) s.insert(e.vertices);
  return s;
}

void expect_simple_uniform(const Hypergraph& g, std::size_t k) {
  EXPECT_EQ(edge_sets(g).size(), g.num_edges());
  for (const auto& e : g.edges()) {
    EXPECT_EQ(e.size(), k);
    EXPECT_EQ(e.weight, 1.0);
  }
}

}  // namespace

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(4, 3), 4.0);
  EXPECT_EQ(binomial(40, 3), 9880.0);
  EXPECT_EQ(binomial(3, 5), 0.0);
  EXPECT_EQ(binomial(7, 0), 1.0);
}

TEST(Erh, CompleteWhenAllSetsRequested) {
  const Hypergraph g = gen_erh(4, 4, 3, 11);
  expect_simple_uniform(g, 3);
  EXPECT_EQ(g.num_edges(), 4u);
  EXPECT_THROW(gen_erh(4, 5, 3, 11), DataError);
}

TEST(Erh, SizesAndDistinctness) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Hypergraph g = gen_erh(40, 50, 3, seed);
    EXPECT_EQ(g.num_edges(), 50u);
    EXPECT_EQ(g.num_vertices(), 40u);
    expect_simple_uniform(g, 3);
  }
}

TEST(Erh, UniformOverSubsets) {
  // n=6, k=3: each of the 20 triples appears with probability m/20.
  std::map<std::vector<Vertex>, int> count;
  const int runs = 4000;
  for (int s = 0; s < runs; ++s) {
    for (const auto& e : edge_sets(gen_erh(6, 5, 3, static_cast<std::uint64_t>(s)))) ++count[e];
  }
  EXPECT_EQ(count.size(), 20u);
  for (const auto& [e, c] : count) EXPECT_NEAR(static_cast<double>(c) / runs, 0.25, 0.03);
  // the dense branch (2m > C(n,k)) has the same marginals
  count.clear();
  for (int s = 0; s < runs; ++s) {
    for (const auto& e : edge_sets(gen_erh(6, 15, 3, static_cast<std::uint64_t>(s)))) ++count[e];
  }
  for (const auto& [e, c] : count) EXPECT_NEAR(static_cast<double>(c) / runs, 0.75, 0.03);
}

TEST(Sfh, Probabilities) {
  const auto p = sfh_probabilities(5, 0.5);
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-15);
  EXPECT_NEAR(p[0] / p[3], 2.0, 1e-14);  // (4/1)^0.5
  EXPECT_TRUE(std::is_sorted(p.rbegin(), p.rend()));
  for (double x : sfh_probabilities(7, 1e-12)) EXPECT_NEAR(x, 1.0 / 7.0, 1e-11);
}

TEST(Sfh, ShapeAndSkew) {
  std::vector<double> mean(60, 0.0);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Hypergraph g = gen_sfh(60, 120, 3, 0.5, seed);
    expect_simple_uniform(g, 3);
    EXPECT_LE(g.num_edges(), 120u);
    const auto d = g.membership_counts();
    for (std::size_t v = 0; v < 60; ++v) mean[v] += static_cast<double>(d[v]) / 30.0;
  }
  const double head = std::accumulate(mean.begin(), mean.begin() + 10, 0.0);
  const double tail = std::accumulate(mean.end() - 10, mean.end(), 0.0);
  EXPECT_GT(head, 1.5 * tail);
}

TEST(Sfh, ParameterChecks) {
  EXPECT_THROW(gen_sfh(10, 5, 3, 0.0, 1), DataError);
  EXPECT_THROW(gen_sfh(10, 5, 3, 1.0, 1), DataError);
  EXPECT_THROW(gen_sfh(2, 5, 3, 0.5, 1), DataError);
}

TEST(WshLattice, Structure) {
  const WshLattice L = wsh_lattice(12, 6, 3);
  const auto sets = wsh_lattice_edges(L);
  EXPECT_EQ(sets.size(), L.num_edges());
  EXPECT_EQ(sets.size(), 24u + 3u);
  const Hypergraph g = make(12, sets);
  expect_simple_uniform(g, 3);
  for (std::size_t d : g.membership_counts()) EXPECT_GE(d, 6u);
  // window edge {p, p+2, p+3} for p = 0
  EXPECT_TRUE(edge_sets(g).count({0, 2, 3}));
}

TEST(WshLattice, SizedByEdgeCount) {
  const WshLattice L = wsh_lattice_for_edges(40, 50, 3);
  EXPECT_EQ(L.num_edges(), 50u);
  EXPECT_EQ(wsh_lattice_edges(L).size(), 50u);
  const WshLattice L4 = wsh_lattice_for_edges(80, 100, 4);
  EXPECT_EQ(wsh_lattice_edges(L4).size(), 100u);
  EXPECT_THROW(wsh_lattice_for_edges(40, 30, 3), DataError);
  EXPECT_THROW(wsh_lattice_edges(wsh_lattice(12, 5, 3)), DataError);
}

TEST(Wsh, ZeroRewiringIsTheLattice) {
  const WshLattice L = wsh_lattice_for_edges(40, 50, 3);
  EXPECT_EQ(gen_wsh(L, 0.0, 9), make(40, wsh_lattice_edges(L)));
}

TEST(Wsh, RewiringKeepsEdgeCount) {
  const WshLattice L = wsh_lattice_for_edges(40, 50, 3);
  const auto lattice = edge_sets(make(40, wsh_lattice_edges(L)));
  double survived = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (double p : {0.1, 0.5, 1.0}) {
      const Hypergraph g = gen_wsh(L, p, seed);
      EXPECT_EQ(g.num_edges(), 50u);
      expect_simple_uniform(g, 3);
    }
    for (const auto& e : edge_sets(gen_wsh(L, 1.0, seed))) survived += lattice.count(e) ? 1.0 : 0.0;
  }
  EXPECT_LT(survived / (20.0 * 50.0), 0.05);
  EXPECT_THROW(gen_wsh(L, 1.5, 0), DataError);
}

TEST(NullEr, Probability) {
  const Hypergraph ref = make(5, {{0, 1, 2}, {2, 3}, {0, 1, 3}});
  EXPECT_DOUBLE_EQ(null_er_probability(ref), 8.0 / 15.0);
  EXPECT_THROW(null_er_probability(Hypergraph(5)), DataError);
}

TEST(NullEr, MembershipMoments) {
  const Hypergraph ref = random_hypergraph(1, 30, 20, 2, 4, false);
  const double c = static_cast<double>(ref.total_memberships());
  double total = 0.0;
  const int runs = 500;
  for (int s = 0; s < runs; ++s) {
    const Hypergraph g = null_er(ref, static_cast<std::uint64_t>(s));
    EXPECT_LE(g.num_edges(), ref.num_edges());
    total += static_cast<double>(g.total_memberships());
  }
  EXPECT_NEAR(total / runs / c, 1.0, 0.03);
}

TEST(NullCl, ExpectedDegrees) {
  const Hypergraph ref = random_hypergraph(2, 30, 40, 2, 4, false);
  const auto d = ref.membership_counts();
  std::vector<double> mean(30, 0.0);
  const int runs = 1000;
  for (int s = 0; s < runs; ++s) {
    const auto got = null_cl(ref, static_cast<std::uint64_t>(s)).membership_counts();
    for (std::size_t v = 0; v < 30; ++v) mean[v] += static_cast<double>(got[v]) / runs;
  }
  for (std::size_t v = 0; v < 30; ++v) EXPECT_NEAR(mean[v], static_cast<double>(d[v]), 0.3) << v;
}

TEST(NullCl, Feasibility) {
  EXPECT_NO_THROW(null_cl(make(3, {{0, 1, 2}}), 0));
  EXPECT_THROW(null_cl(make(4, {{0, 1, 2, 3}, {0, 1}}), 0), DataError);
  EXPECT_THROW(null_cl(Hypergraph(4), 0), DataError);
}

TEST(NullClUniform, CardinalityAndDegreeOrdering) {
  // vertex 0 is in every edge, vertex 7 in none
  const Hypergraph ref = make(8, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {0, 1, 5}, {0, 2, 6}});
  std::vector<double> mean(8, 0.0);
  for (std::uint64_t s = 0; s < 500; ++s) {
    const Hypergraph g = null_cl_uniform(ref, 3, s);
    expect_simple_uniform(g, 3);
    EXPECT_LE(g.num_edges(), ref.num_edges());
    const auto d = g.membership_counts();
    for (std::size_t v = 0; v < 8; ++v) mean[v] += static_cast<double>(d[v]) / 500.0;
  }
  EXPECT_EQ(mean[7], 0.0);
  for (std::size_t v = 1; v < 7; ++v) EXPECT_GT(mean[0], mean[v]);
  EXPECT_GT(mean[1], mean[3]);  // degree 2 vs degree 1
  EXPECT_THROW(null_cl_uniform(make(4, {{0, 1}}), 3, 0), DataError);
}

TEST(NullModels, TokensAndDefault) {
  for (NullModel m : {NullModel::er, NullModel::cl, NullModel::cl_uniform}) EXPECT_EQ(parse_null_model(to_string(m)), m);
  EXPECT_FALSE(parse_null_model("bogus").has_value());
  EXPECT_EQ(default_null_model(make(4, {{0, 1, 2}})), NullModel::cl_uniform);
  EXPECT_EQ(default_null_model(make(4, {{0, 1, 2}, {2, 3}})), NullModel::cl);
}

TEST(Generators, ByteIdenticalPerSeed) {
  const Hypergraph ref = random_hypergraph(4, 20, 15, 2, 4, false);
  const Hypergraph uref = gen_erh(20, 15, 3, 5);
  using Gen = std::function<Hypergraph(std::uint64_t)>;
  const std::vector<Gen> gens = {
      [](std::uint64_t s) { return gen_erh(40, 50, 3, s); },
      [](std::uint64_t s) { return gen_sfh(40, 50, 3, 0.5, s); },
      [](std::uint64_t s) { return gen_wsh(wsh_lattice_for_edges(40, 50, 3), 0.1, s); },
      [&](std::uint64_t s) { return null_er(ref, s); },
      [&](std::uint64_t s) { return null_cl(ref, s); },
      [&](std::uint64_t s) { return null_cl_uniform(uref, 3, s); },
  };
  for (const auto& gen : gens) {
    EXPECT_EQ(write_hgf(gen(42)), write_hgf(gen(42)));
    EXPECT_NE(write_hgf(gen(42)), write_hgf(gen(43)));
  }
}
