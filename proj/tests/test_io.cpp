#include "netgame/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace netgame;
using netgame::io::json;

TEST(GraphJson, RoundTripIsExact) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto g = generate(GraphKind::random(), 7, seed);
        EXPECT_TRUE(io::graph_from_json(json::parse(io::graph_to_json(g).dump())) == g);
    }
}

TEST(GraphJson, OnlyNonzeroEdgesListed) {
    const auto doc = io::graph_to_json(generate(GraphKind::star(), 4));
    EXPECT_EQ(doc["n"], 4);
    EXPECT_EQ(doc["edges"].size(), 6u);
}

TEST(GraphJson, RejectsMalformedDocuments) {
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"edges": []})")), invalid_input);
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 1, "edges": []})")), invalid_input);
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 2, 1.0]]})")), invalid_input);
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 1, 1.0], [0, 1, 1.0]]})")),
                 invalid_input);
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 1]]})")), invalid_input);
    // Row 1 sums to 0.5.
    EXPECT_THROW(io::graph_from_json(json::parse(R"({"n": 2, "edges": [[0, 1, 1.0], [1, 0, 0.5]]})")),
                 invalid_input);
}

TEST(GraphJson, FileRoundTripAndBadFiles) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = (dir / "netgame_io_test_graph.json").string();
    const auto g = generate(GraphKind::l_star(3), 8);
    io::save_graph(path, g);
    EXPECT_TRUE(io::load_graph(path) == g);
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    EXPECT_THROW(io::load_graph(path), invalid_input);
    std::remove(path.c_str());
    EXPECT_THROW(io::load_graph((dir / "netgame_missing_graph.json").string()), invalid_input);
}

TEST(ReportJson, NashOutcomeFields) {
    const ModelParams p{1.0, 1.0, 0.5, 1e-6};
    const auto o = solve_nash(generate(GraphKind::l_star(3), 15), p, {2.0, 2.0, 1.0, 1.0});
    const auto doc = io::to_json(o);
    EXPECT_EQ(doc["firm_a"]["case"], "interior");
    EXPECT_EQ(doc["k"], 3);
    EXPECT_DOUBLE_EQ(doc["firm_a"]["seeding_total"].get<double>(), 17.0 / 16.0);
    EXPECT_EQ(doc["firm_a"]["seeding"].size(), 15u);
}

TEST(ReportJson, NumbersRoundTripBitExactly) {
    const double x = 1.0 / 3.0;
    const json doc{{"x", x}};
    EXPECT_EQ(json::parse(doc.dump())["x"].get<double>(), x);
    EXPECT_EQ(std::stod(io::format_number(x)), x);
}

TEST(TrajectoryCsv, HeaderAndRows) {
    const ModelParams p{1.0, 1.0, 0.5, 1e-6};
    const auto traj = simulate(generate(GraphKind::balanced(), 3), p, {1.0, 1.0}, {Eigen::VectorXd::Zero(3), 0}, 2);
    EXPECT_EQ(io::trajectory_csv(traj), "t,y_1,y_2,y_3\n0,0,0,0\n1,0,0,0\n2,0,0,0\n");
}

TEST(Reproduce, BothExamplesPass) {
    EXPECT_TRUE(reproduce_example1().all_pass());
    EXPECT_TRUE(reproduce_example2().all_pass());
}

TEST(Reproduce, NegativeControlFails) {
    const auto r1 = reproduce_example1(true);
    EXPECT_FALSE(r1.all_pass());
    EXPECT_FALSE(r1.checks.back().pass);
    const auto r2 = reproduce_example2(true);
    EXPECT_FALSE(r2.all_pass());
    EXPECT_FALSE(r2.checks.back().pass);
}
