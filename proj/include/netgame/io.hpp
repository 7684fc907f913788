#pragma once

#include "netgame/allocation.hpp"
#include "netgame/dynamics.hpp"
#include "netgame/equilibrium.hpp"
#include "netgame/extremal.hpp"
#include "netgame/graph.hpp"
#include "netgame/regime.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace netgame::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

/// {"n": n, "edges": [[i, j, w], ...]}: i is the influenced agent, j the
/// influencer; only nonzero weights are listed.
inline json graph_to_json(const SocialGraph& g) {
    json edges = json::array();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (g(i, j) != 0.0) edges.push_back(json::array({i, j, g(i, j)}));
    return {{"n", g.size()}, {"edges", std::move(edges)}};
}

inline SocialGraph graph_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges"))
        throw invalid_input("graph file needs \"n\" and \"edges\"");
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 2)
        throw invalid_input("graph \"n\" must be an integer >= 2");
    const auto n = doc["n"].get<std::size_t>();
    if (!doc["edges"].is_array()) throw invalid_input("graph \"edges\" must be an array");
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
            !e[2].is_number())
            throw invalid_input("each edge must be [i, j, w] with integer i, j");
        const auto i = e[0].get<long long>();
        const auto j = e[1].get<long long>();
        if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= n || static_cast<std::size_t>(j) >= n)
            throw invalid_input("edge index out of range: [" + std::to_string(i) + ", " + std::to_string(j) + "]");
        if (!seen.emplace(i, j).second)
            throw invalid_input("duplicate edge [" + std::to_string(i) + ", " + std::to_string(j) + "]");
        w(i, j) = e[2].get<double>();
    }
    return SocialGraph(std::move(w));
}

inline SocialGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open graph file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw invalid_input("graph file " + path + " is not valid JSON: " + e.what());
    }
    return graph_from_json(doc);
}

inline void save_graph(const std::string& path, const SocialGraph& g) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write graph file " + path);
    out << graph_to_json(g).dump(2) << '\n';
}

inline json to_json(const ModelParams& p) {
    return {{"alpha", p.alpha}, {"beta", p.beta}, {"delta", p.delta}, {"epsilon", p.epsilon}};
}

inline json to_json(const UtilityReport& r) {
    json out{{"mode", r.mode},
             {"U_a", r.U_a},
             {"U_b", r.U_b},
             {"lambda", r.lambda},
             {"breakdown",
              {{"base", r.breakdown.base},
               {"seeding_a", r.breakdown.seeding_a},
               {"seeding_b", r.breakdown.seeding_b},
               {"quality", r.breakdown.quality}}}};
    if (r.mode == "simulated") out["horizon"] = r.horizon;
    return out;
}

inline json to_json(const NashOutcome& o) {
    const auto firm = [](const FirmStrategy& s, SeedingCase c) {
        return json{{"quality", s.quality},
                    {"seeding", vector_json(s.seeding)},
                    {"seeding_total", s.seeding_total()},
                    {"case", to_string(c)}};
    };
    return {{"firm_a", firm(o.a, o.case_a)},
            {"firm_b", firm(o.b, o.case_b)},
            {"k", o.k},
            {"l", o.l},
            {"v_tilde_k", o.v_tilde_k},
            {"v_tilde_l", o.v_tilde_l},
            {"U_a", o.U_a},
            {"U_b", o.U_b}};
}

inline json to_json(const AllocationResult& r) {
    return {{"firm", to_string(r.firm)},
            {"budget", r.budget},
            {"seeding", vector_json(r.seeding)},
            {"seeding_total", r.seeding_total()},
            {"quality_improvement", r.quality_improvement},
            {"threshold", r.threshold},
            {"marginal_utility", r.marginal_utility}};
}

inline json to_json(const RegimeReport& r) {
    return {{"context", r.context}, {"position", r.position}, {"endpoints", r.endpoints},
            {"regime", to_string(r.regime)}};
}

inline json to_json(const CapacityBound& b) {
    return {{"k", b.k},
            {"max_capacity", b.max_capacity},
            {"min_case", to_string(b.min_case)},
            {"min_capacity", b.min_capacity}};
}

inline json to_json(const SeedingExtreme& e) {
    return {{"l", e.solution.l},
            {"v_tilde", e.solution.v_tilde},
            {"case", to_string(e.solution.tag)},
            {"quality", e.solution.quality},
            {"seeding_budget", e.seeding_budget},
            {"witness_kind", to_string(e.witness_kind)},
            {"witness", graph_to_json(e.witness)},
            {"witness_seeding", e.verified_seeding},
            {"discrepancy", e.discrepancy},
            {"verified", e.verified}};
}

inline json to_json(const SeedingExtremes& e) { return {{"maximum", to_json(e.maximum)}, {"minimum", to_json(e.minimum)}}; }

inline json to_json(const ExtremalCentrality& e) { return {{"l", e.l}, {"v_max", e.v_max}, {"v_min", e.v_min}}; }

inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// CSV with header t,y_1..y_n and one row per state.
inline std::string trajectory_csv(const std::vector<ConsumptionState>& trajectory) {
    std::ostringstream out;
    const Eigen::Index n = trajectory.empty() ? 0 : trajectory.front().y.size();
    out << 't';
    for (Eigen::Index i = 0; i < n; ++i) out << ",y_" << i + 1;
    out << '\n';
    for (const auto& s : trajectory) {
        out << s.t;
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_number(s.y(i));
        out << '\n';
    }
    return out.str();
}

} // namespace netgame::io
