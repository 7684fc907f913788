#include "support.hpp"

#include <gtest/gtest.h>

using namespace netgame;

namespace {

const ModelParams kExample{1.0, 1.0, 0.5, 1e-6};

Eigen::MatrixXd two_cycle() {
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, 1, 0;
    return w;
}

} // namespace

TEST(ValidateGraph, AcceptsRowStochasticMatrix) {
    EXPECT_TRUE(validate_graph(two_cycle()).ok());
}

TEST(ValidateGraph, ReportsEveryViolation) {
    Eigen::MatrixXd w(3, 3);
    w << 0.5, 0.5, 0.0,  //
        0.0, 0.0, 0.9,   //
        -0.1, 1.1, 0.0;
    const auto report = validate_graph(w);
    EXPECT_FALSE(report.ok());
    ASSERT_EQ(report.violations.size(), 3u);
    EXPECT_NE(report.summary().find("nonzero diagonal at 0"), std::string::npos);
    EXPECT_NE(report.summary().find("row 1 sum"), std::string::npos);
    EXPECT_NE(report.summary().find("negative weight at (2, 0)"), std::string::npos);
}

TEST(ValidateGraph, RejectsNonSquareAndTinyMatrices) {
    EXPECT_FALSE(validate_graph(Eigen::MatrixXd::Zero(2, 3)).ok());
    EXPECT_FALSE(validate_graph(Eigen::MatrixXd::Zero(1, 1)).ok());
}

TEST(ValidateGraph, RowSumToleranceIsInclusive) {
    Eigen::MatrixXd w = two_cycle();
    w(0, 1) = 1.0 + 5e-10;
    EXPECT_TRUE(validate_graph(w).ok());
    w(0, 1) = 1.0 + 5e-9;
    EXPECT_FALSE(validate_graph(w).ok());
}

TEST(SocialGraph, ConstructorThrowsOnInvalidWeights) {
    Eigen::MatrixXd w = two_cycle();
    w(1, 0) = 0.7;
    EXPECT_THROW(SocialGraph{w}, invalid_input);
}

TEST(SocialGraph, InteractionMatrixIsScaledByTwoBeta) {
    const SocialGraph g(two_cycle());
    const ModelParams p{1.5, 1.25, 0.5, 1e-6};
    EXPECT_DOUBLE_EQ(g.interaction(p)(0, 1), 1.0 / 2.5);
}

TEST(Generate, EveryFamilyIsRowStochastic) {
    for (std::size_t n : {2u, 3u, 7u, 15u}) {
        EXPECT_TRUE(validate_graph(generate(GraphKind::balanced(), n).weights()).ok());
        EXPECT_TRUE(validate_graph(generate(GraphKind::star(), n).weights()).ok());
        EXPECT_TRUE(validate_graph(generate(GraphKind::near_star(), n).weights()).ok());
        EXPECT_TRUE(validate_graph(generate(GraphKind::random(), n, 11).weights()).ok());
        if (n >= 3) {
            EXPECT_TRUE(validate_graph(generate(GraphKind::l_star(2), n).weights()).ok());
        }
    }
}

TEST(Generate, RandomIsDeterministicInSeed) {
    EXPECT_TRUE(generate(GraphKind::random(), 9, 5) == generate(GraphKind::random(), 9, 5));
    EXPECT_FALSE(generate(GraphKind::random(), 9, 5) == generate(GraphKind::random(), 9, 6));
}

TEST(Generate, RejectsInvalidHubCounts) {
    EXPECT_THROW(generate(GraphKind::l_star(1), 5), invalid_input);
    EXPECT_THROW(generate(GraphKind::l_star(5), 5), invalid_input);
    EXPECT_THROW(generate(GraphKind::balanced(), 1), invalid_input);
}

TEST(Generate, NearStarCenterPointsAtOnePeripheral) {
    const auto g = generate(GraphKind::near_star(), 6);
    EXPECT_DOUBLE_EQ(g(0, 1), 1.0);
    for (std::size_t i = 1; i < 6; ++i) EXPECT_DOUBLE_EQ(g(i, 0), 1.0);
}

TEST(GraphKindNames, RoundTrip) {
    for (const auto& kind : {GraphKind::balanced(), GraphKind::star(), GraphKind::near_star(), GraphKind::random()})
        EXPECT_EQ(parse_graph_kind(to_string(kind)).family, kind.family);
    EXPECT_EQ(parse_graph_kind("l_star", 4).hubs, 4u);
    EXPECT_EQ(parse_graph_kind("near_star").family, GraphFamily::near_star_one_bidirectional);
    EXPECT_THROW(parse_graph_kind("wheel"), invalid_input);
}

TEST(Centrality, ExampleValues) {
    const auto star = centrality(generate(GraphKind::star(), 15), kExample);
    EXPECT_NEAR(star.ranked(1), 4.8, 1e-9);
    EXPECT_NEAR(star.ranked(2), 1.0857142857142857, 1e-9);
    const auto balanced = centrality(generate(GraphKind::balanced(), 15), kExample);
    for (std::size_t i = 0; i < 15; ++i) EXPECT_NEAR(balanced[i], 4.0 / 3.0, 1e-9);
    const auto three = centrality(generate(GraphKind::l_star(3), 15), kExample);
    EXPECT_NEAR(three.ranked(1), 8.0 / 3.0, 1e-9);
    EXPECT_NEAR(three.ranked(3), 8.0 / 3.0, 1e-9);
    EXPECT_NEAR(three.ranked(4), 1.0, 1e-9);
}

TEST(Centrality, TwoCycleIsBalanced) {
    const ModelParams p{1.0, 1.0, 0.5, 1e-6};
    const auto v = centrality(SocialGraph(two_cycle()), p);
    EXPECT_NEAR(v[0], 4.0 / 3.0, 1e-12);
    EXPECT_NEAR(v[1], 4.0 / 3.0, 1e-12);
}

TEST(Centrality, TiesOrderedByAgentIndex) {
    const auto v = centrality(generate(GraphKind::balanced(), 6), kExample);
    for (std::size_t r = 0; r < 6; ++r) EXPECT_EQ(v.order[r], r);
    const auto s = centrality(generate(GraphKind::star(), 5), kExample);
    EXPECT_EQ(s.order, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(Centrality, ClosedFormHelpers) {
    EXPECT_NEAR(balanced_centrality(kExample), 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(star_hub_centrality(15, kExample), 4.8, 1e-12);
    EXPECT_NEAR(l_star_hub_centrality(15, 3, kExample), 8.0 / 3.0, 1e-12);
    EXPECT_THROW(closed_form_centrality(GraphKind::random(), 5, kExample), invalid_input);
}

TEST(CentralityProperties, SumBoundsAndNeumannAgreement) {
    ts::InstanceGen gen(101);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = gen.integer(2, 12);
        const auto p = gen.params();
        const auto g = gen.graph(n);
        const auto v = centrality(g, p);
        const auto w = centrality_neumann(g, p);
        EXPECT_NEAR(v.values.sum(), p.centrality_sum(n), 1e-9);
        EXPECT_GE(v.values.minCoeff(), 1.0 - 1e-12);
        EXPECT_GE(v.ranked(1), balanced_centrality(p) - 1e-9);
        EXPECT_LE(v.ranked(1), star_hub_centrality(n, p) + 1e-9);
        EXPECT_LE((v.values - w.values).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(CentralityProperties, GeneratorsMatchClosedForms) {
    ts::InstanceGen gen(202);
    for (int trial = 0; trial < 60; ++trial) {
        const auto n = gen.integer(3, 20);
        const auto p = gen.params();
        const auto l = gen.integer(2, n - 1);
        for (const auto& kind : {GraphKind::balanced(), GraphKind::star(), GraphKind::l_star(l)}) {
            const auto v = centrality(generate(kind, n), p);
            const auto cf = closed_form_centrality(kind, n, p);
            EXPECT_NEAR(v.ranked(1), cf.hub, 1e-9) << to_string(kind) << " n=" << n;
            EXPECT_NEAR(v.ranked(n), cf.peripheral, 1e-9) << to_string(kind) << " n=" << n;
        }
    }
}
