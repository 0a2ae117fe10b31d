#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace hdm;
using hdm::testing::make;
using hdm::testing::random_hypergraph;

namespace {

// Fig.-1 style example with vertices v1..v5 mapped to 0..4.
const char* kFigure = "hgf 1\nnodes 5\nedge 1 0 1\nedge 1 0 1 2\nedge 1 2 3 4\n";

}  // namespace

TEST(Hgf, ParsesSingleEdge) {
  const Hypergraph g = parse_hgf("hgf 1\nnodes 3\nedge 1.0 0 1 2\n");
  EXPECT_EQ(g.num_vertices(), 3u);
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edge(0).vertices, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(g.edge(0).weight, 1.0);
}

TEST(Hgf, ParsesExampleHypergraph) {
  const Hypergraph g = parse_hgf(kFigure);
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.max_cardinality(), 3u);
  EXPECT_FALSE(g.is_uniform());
}

TEST(Hgf, CommentsAreSkipped) {
  const Hypergraph g = parse_hgf("# leading\nhgf 1\n# mid\nnodes 2\nedge 2.5 0 1\n# tail\n");
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edge(0).weight, 2.5);
}

TEST(Hgf, RejectsMalformedInput) {
  EXPECT_THROW(parse_hgf("hgf 2\nnodes 3\n"), ParseError);
  EXPECT_THROW(parse_hgf("hgf 1\n"), ParseError);
  EXPECT_THROW(parse_hgf("hgf 1\nnodes 3\nedge 1 0 3\n"), ParseError);
  EXPECT_THROW(parse_hgf("hgf 1\nnodes 3\nedge 0 0 1\n"), ParseError);
  EXPECT_THROW(parse_hgf("hgf 1\nnodes 3\nedge -1 0 1\n"), ParseError);
  EXPECT_THROW(parse_hgf("hgf 1\nnodes 3\nedge 1\n"), ParseError);
  EXPECT_THROW(parse_hgf("hgf 1\nnodes 3\nedge 1 0 0\n"), ParseError);
  EXPECT_THROW(parse_hgf("hgf 1\nnodes 3\nedge  1 0 1\n"), ParseError);
  EXPECT_THROW(parse_hgf("hgf 1\nnodes 3\nedge 1 x 1\n"), ParseError);
  EXPECT_THROW(parse_hgf("hgf 1\nnodes 3\nvertex 1 0 1\n"), ParseError);
}

TEST(Hgf, ParseErrorsCarryLineNumbers) {
  try {
    parse_hgf("hgf 1\nnodes 3\nedge 1 0 1\nedge 1 0 7\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Hgf, DuplicateEdgesRejectedByDefaultOrMerged) {
  const char* text = "hgf 1\nnodes 3\nedge 1 0 1\nedge 2 1 0\n";
  EXPECT_THROW(parse_hgf(text), ParseError);
  const Hypergraph merged = parse_hgf(text, {DuplicatePolicy::merge});
  ASSERT_EQ(merged.num_edges(), 1u);
  EXPECT_EQ(merged.edge(0).weight, 3.0);
}

TEST(Hgf, WritesEmptyHypergraph) { EXPECT_EQ(write_hgf(Hypergraph(1)), "hgf 1\nnodes 1\n"); }

TEST(Hgf, WriteIsCanonical) {
  const Hypergraph a = make(4, {{2, 3}, {0, 1, 2}, {1, 0}});
  const Hypergraph b = make(4, {{1, 0}, {3, 2}, {2, 1, 0}});
  EXPECT_EQ(write_hgf(a), write_hgf(b));
  EXPECT_EQ(write_hgf(a), "hgf 1\nnodes 4\nedge 1 0 1\nedge 1 0 1 2\nedge 1 2 3\n");
}

TEST(Hgf, RoundTripOnRandomHypergraphs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Hypergraph g = random_hypergraph(seed, 9, 12, 1, 5, true);
    const Hypergraph back = parse_hgf(write_hgf(g));
    EXPECT_EQ(back, g);
    EXPECT_EQ(write_hgf(back), write_hgf(g));
    // weights survive bit-exactly
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
      EXPECT_EQ(back.canonical().edge(i).weight, g.canonical().edge(i).weight);
    }
  }
}

TEST(Incidence, SingleEdge) {
  const IncidenceView v = incidence(make(3, {{0, 1, 2}}));
  EXPECT_TRUE(v.H.isApprox(Eigen::MatrixXd::Ones(3, 1)));
  EXPECT_TRUE(v.vertex_degree.isApprox(Eigen::VectorXd::Ones(3)));
  EXPECT_EQ(v.edge_degree(0), 3.0);
}

TEST(Incidence, ExampleDegrees) {
  const IncidenceView v = incidence(parse_hgf(kFigure));
  EXPECT_EQ(v.vertex_degree, (Eigen::VectorXd(5) << 2, 2, 2, 1, 1).finished());
  EXPECT_EQ(v.edge_degree, (Eigen::VectorXd(3) << 2, 3, 3).finished());
}

TEST(Incidence, SingletonEdge) {
  const IncidenceView v = incidence(make(2, {{0}}));
  EXPECT_EQ(v.vertex_degree(0), 1.0);
  EXPECT_EQ(v.vertex_degree(1), 0.0);
  EXPECT_EQ(v.edge_degree(0), 1.0);
}

TEST(Incidence, RowAndColumnSumIdentities) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Hypergraph g = random_hypergraph(seed, 10, 15, 1, 6, true);
    const IncidenceView v = incidence(g);
    EXPECT_TRUE((v.H.colwise().sum().transpose() - v.edge_degree).isZero(0.0));
    EXPECT_LE((v.H * v.edge_weight - v.vertex_degree).cwiseAbs().maxCoeff(), 1e-12);
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      for (std::size_t u = 0; u < g.num_vertices(); ++u) {
        EXPECT_EQ(v.H(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(e)) == 1.0,
                  g.edge(e).contains(static_cast<Vertex>(u)));
      }
    }
  }
}

TEST(IncidenceCsv, Examples) {
  const Hypergraph g = parse_incidence_csv("1\n1\n1\n");
  EXPECT_EQ(g, make(3, {{0, 1, 2}}));
  const Hypergraph id = parse_incidence_csv("1,0\n0,1\n");
  EXPECT_EQ(id, make(2, {{0}, {1}}));
  const Hypergraph w = parse_incidence_csv("#weights,2.5,1\n1,0\n1,1\n");
  EXPECT_EQ(w.edge(0).weight, 2.5);
  EXPECT_EQ(w.edge(1).vertices, (std::vector<Vertex>{1}));
}

TEST(IncidenceCsv, Errors) {
  EXPECT_THROW(parse_incidence_csv("1,2\n0,1\n"), ParseError);
  EXPECT_THROW(parse_incidence_csv("1,0\n1,0\n"), ParseError);
  EXPECT_THROW(parse_incidence_csv("1,0\n1\n"), ParseError);
}

TEST(IncidenceCsv, InverseOfIncidence) {
  const std::string text = "1,0,1\n1,1,0\n0,1,1\n0,0,1\n";
  const Eigen::MatrixXd H = incidence(parse_incidence_csv(text)).H;
  const Eigen::MatrixXd expected = (Eigen::MatrixXd(4, 3) << 1, 0, 1, 1, 1, 0, 0, 1, 1, 0, 0, 1).finished();
  EXPECT_EQ(H, expected);
}

TEST(Hypergraph, ValidatesConstruction) {
  EXPECT_THROW(make(3, {{}}), DataError);
  EXPECT_THROW(make(3, {{0, 3}}), DataError);
  EXPECT_THROW(make(3, {{0, 1}}, {0.0}), DataError);
  EXPECT_THROW(make(3, {{0, 1}, {1, 0}}), DataError);
  EXPECT_NO_THROW(make(3, {{0}, {0, 1}}));
}

TEST(Hypergraph, EqualityIgnoresEdgeOrder) {
  EXPECT_EQ(make(4, {{0, 1}, {1, 2, 3}}), make(4, {{1, 2, 3}, {0, 1}}));
  EXPECT_FALSE(make(4, {{0, 1}}) == make(5, {{0, 1}}));
  EXPECT_FALSE(make(4, {{0, 1}}, {1.0}) == make(4, {{0, 1}}, {2.0}));
}

TEST(Hypergraph, RelabelingPreservesDegreeMultiset) {
  const Hypergraph g = random_hypergraph(3, 8, 10, 2, 4, true);
  const auto perm = hdm::testing::random_permutation(5, 8);
  const Hypergraph h = g.relabeled(perm);
  const auto dg = g.degrees();
  const auto dh = h.degrees();
  for (std::size_t v = 0; v < 8; ++v) EXPECT_DOUBLE_EQ(dh[perm[v]], dg[v]);
}
