// netgame: command-line driver for the quality-vs-seeding network game.
//
// Exit codes: 0 ok, 1 unexpected error, 2 usage or validation error,
// 3 solver failure, 4 reproduction check failed.

#include "netgame/io.hpp"
#include "netgame/netgame.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using netgame::io::json;

enum ExitCode : int { kOk = 0, kUnexpected = 1, kValidation = 2, kSolver = 3, kReproduceFailed = 4 };

struct RunConfig {
    std::string command;
    std::string graph_path;
    std::string generate_kind;
    std::size_t n = 15;
    std::size_t l = 3;
    std::uint64_t seed = 0;
    netgame::ModelParams params;
    double K_a = 2.0;
    double K_b = 2.0;
    double c_s = 1.0;
    double c_q = 1.0;
    double q_a = 1.0;
    double q_b = 1.0;
    double budget = 1.0;
    std::string firm = "a";
    std::vector<double> S_a;
    std::vector<double> S_b;
    std::vector<double> y0;
    std::size_t T = 50;
    std::string method = "enumerate";
    std::string format;
    std::string out;
    std::string example = "example1";
    bool negative_control = false;

    [[nodiscard]] bool uses_graph() const { return command != "reproduce" && command != "extremal"; }

    [[nodiscard]] json graph_source() const {
        if (!graph_path.empty()) return {{"file", graph_path}};
        json g{{"generate", generate_kind}, {"n", n}};
        if (generate_kind == "l_star") g["l"] = l;
        if (generate_kind == "random") g["seed"] = seed;
        return g;
    }

    [[nodiscard]] json to_json() const {
        json c{{"command", command}};
        if (uses_graph()) c["graph"] = graph_source();
        if (command == "extremal") c["n"] = n;
        c["params"] = netgame::io::to_json(params);
        if (command == "nash") {
            c["budgets"] = {{"K_a", K_a}, {"K_b", K_b}, {"c_s", c_s}, {"c_q", c_q}};
            c["method"] = method;
        } else if (command == "extremal") {
            c["budgets"] = {{"K", K_a}, {"c_s", c_s}, {"c_q", c_q}};
        } else if (command == "allocate") {
            c["qualities"] = {{"q_a", q_a}, {"q_b", q_b}};
            c["budgets"] = {{"budget", budget}, {"c_s", c_s}, {"c_q", c_q}};
            c["firm"] = firm;
            if (!y0.empty()) c["y0"] = y0;
        } else if (command == "simulate") {
            c["qualities"] = {{"q_a", q_a}, {"q_b", q_b}};
            if (!S_a.empty()) c["S_a"] = S_a;
            if (!S_b.empty()) c["S_b"] = S_b;
            c["T"] = T;
        } else if (command == "reproduce") {
            c["example"] = example;
            c["negative_control"] = negative_control;
        }
        c["format"] = format;
        return c;
    }
};

void configure_logging() {
    auto logger = spdlog::stderr_color_mt("netgame");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* level = std::getenv("NETGAME_LOG");
    spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
}

netgame::SocialGraph load_graph(const RunConfig& cfg) {
    if (!cfg.graph_path.empty()) {
        spdlog::info("loading graph from {}", cfg.graph_path);
        return netgame::io::load_graph(cfg.graph_path);
    }
    const auto kind = netgame::parse_graph_kind(cfg.generate_kind, cfg.l);
    spdlog::info("generating {} graph with n={}", netgame::to_string(kind), cfg.n);
    return netgame::generate(kind, cfg.n, cfg.seed);
}

Eigen::VectorXd to_vector(const std::vector<double>& values, std::size_t n, const char* name) {
    if (values.empty()) return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    if (values.size() != n)
        throw netgame::invalid_input(std::string(name) + " needs " + std::to_string(n) + " entries, got " +
                                     std::to_string(values.size()));
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(n));
}

json envelope(const RunConfig& cfg, json result) {
    return {{"schema", netgame::io::kSchemaVersion}, {"config", cfg.to_json()}, {"result", std::move(result)}};
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (cfg.format == f) return;
    throw netgame::invalid_input("format '" + cfg.format + "' is not supported by " + cfg.command);
}

std::string cmd_centrality(const RunConfig& cfg) {
    require_format(cfg, {"json", "csv"});
    const auto g = load_graph(cfg);
    const auto v = netgame::centrality(g, cfg.params);
    const std::size_t n = g.size();
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "agent,centrality,rank\n";
        std::vector<std::size_t> rank(n);
        for (std::size_t r = 0; r < n; ++r) rank[v.order[r]] = r + 1;
        for (std::size_t i = 0; i < n; ++i) out << i << ',' << netgame::io::format_number(v[i]) << ',' << rank[i] << '\n';
        return out.str();
    }
    const double expected_sum = cfg.params.centrality_sum(n);
    json result{{"n", n},
                {"centrality", netgame::io::vector_json(v.values)},
                {"order", v.order},
                {"sum", v.values.sum()},
                {"expected_sum", expected_sum},
                {"sum_error", std::abs(v.values.sum() - expected_sum)}};
    if (cfg.graph_path.empty()) {
        const auto kind = netgame::parse_graph_kind(cfg.generate_kind, cfg.l);
        if (kind.family != netgame::GraphFamily::random &&
            kind.family != netgame::GraphFamily::near_star_one_bidirectional) {
            const auto cf = netgame::closed_form_centrality(kind, n, cfg.params);
            result["closed_form"] = {{"hub", cf.hub},
                                     {"peripheral", cf.peripheral},
                                     {"hub_error", std::abs(v.ranked(1) - cf.hub)},
                                     {"peripheral_error", std::abs(v.ranked(n) - cf.peripheral)}};
        }
    }
    return envelope(cfg, std::move(result)).dump(2) + "\n";
}

std::string cmd_simulate(const RunConfig& cfg) {
    require_format(cfg, {"json", "csv"});
    const auto g = load_graph(cfg);
    const std::size_t n = g.size();
    const netgame::QualityPair q{cfg.q_a, cfg.q_b};
    const netgame::SeedingPair seeding{to_vector(cfg.S_a, n, "--Sa"), to_vector(cfg.S_b, n, "--Sb")};
    seeding.validate(n);
    q.validate(cfg.params);
    const auto trajectory = netgame::simulate(g, cfg.params, q, {seeding.initial_offset(), 0}, cfg.T);
    if (cfg.format == "csv") return netgame::io::trajectory_csv(trajectory);

    json states = json::array();
    for (const auto& s : trajectory) states.push_back(netgame::io::vector_json(s.y));
    const auto closed = netgame::discounted_utilities(g, cfg.params, q, seeding, netgame::ClosedForm{});
    const auto simulated = netgame::discounted_utilities(g, cfg.params, q, seeding, netgame::Simulated{});
    json result{{"n", n},
                {"drift", netgame::externality_drift(q, cfg.params)},
                {"trajectory", std::move(states)},
                {"steady_state", netgame::io::vector_json(netgame::steady_state(g, cfg.params, q))},
                {"utilities_closed_form", netgame::io::to_json(closed)},
                {"utilities_simulated", netgame::io::to_json(simulated)}};
    return envelope(cfg, std::move(result)).dump(2) + "\n";
}

std::string cmd_nash(const RunConfig& cfg) {
    require_format(cfg, {"json"});
    const auto g = load_graph(cfg);
    const auto v = netgame::centrality(g, cfg.params);
    const netgame::BudgetSpec budget{cfg.K_a, cfg.K_b, cfg.c_s, cfg.c_q};
    netgame::NashOutcome outcome;
    if (cfg.method == "enumerate")
        outcome = netgame::solve_nash(v, cfg.params, budget);
    else if (cfg.method == "iterative")
        outcome = netgame::solve_nash_iterative(v, cfg.params, budget);
    else
        throw netgame::invalid_input("unknown method '" + cfg.method + "'");
    spdlog::info("equilibrium k={} l={} cases {}/{}", outcome.k, outcome.l, netgame::to_string(outcome.case_a),
                 netgame::to_string(outcome.case_b));

    const auto fa = budget.firm_a();
    const auto fb = budget.firm_b();
    const double gain_a = netgame::max_deviation_gain(v, cfg.params, fa, outcome.a.quality, outcome.b.quality);
    const double gain_b = netgame::max_deviation_gain(v, cfg.params, fb, outcome.b.quality, outcome.a.quality);
    json result = netgame::io::to_json(outcome);
    result["centrality"] = netgame::io::vector_json(v.values);
    result["max_deviation_gain"] = {{"firm_a", gain_a}, {"firm_b", gain_b}};
    if (cfg.K_a == cfg.K_b)
        result["budget_regime"] = netgame::io::to_json(netgame::budget_regime(g.size(), cfg.params, cfg.K_a, cfg.c_s));
    return envelope(cfg, std::move(result)).dump(2) + "\n";
}

std::string cmd_allocate(const RunConfig& cfg) {
    require_format(cfg, {"json"});
    const auto g = load_graph(cfg);
    const std::size_t n = g.size();
    const auto v = netgame::centrality(g, cfg.params);
    netgame::Firm firm;
    if (cfg.firm == "a")
        firm = netgame::Firm::a;
    else if (cfg.firm == "b")
        firm = netgame::Firm::b;
    else
        throw netgame::invalid_input("firm must be 'a' or 'b'");
    const netgame::QualityPair q{cfg.q_a, cfg.q_b};
    q.validate(cfg.params);
    const auto state = netgame::PresetState::from_prior(q, to_vector(cfg.y0, n, "--y0"));
    const auto alloc = netgame::allocate_budget(v, state, firm, cfg.budget, cfg.c_s, cfg.c_q, cfg.params);
    const double capacity = netgame::seeding_capacity(v, state, firm, cfg.params, cfg.c_s, cfg.c_q);

    json result = netgame::io::to_json(alloc);
    result["seeding_capacity"] = capacity;
    result["centrality"] = netgame::io::vector_json(v.values);
    result["threshold_regime"] = netgame::io::to_json(netgame::threshold_regime(alloc.threshold, cfg.params, n));
    const double vc = alloc.threshold;
    if (vc > 1.0 && vc < netgame::star_hub_centrality(n, cfg.params)) {
        const auto& cap = state.capacity(firm);
        const std::vector<double> caps(cap.data(), cap.data() + cap.size());
        result["capacity_bound"] = netgame::io::to_json(netgame::max_seeding_capacity_bound(n, cfg.params, vc, caps));
    }
    return envelope(cfg, std::move(result)).dump(2) + "\n";
}

std::string cmd_extremal(const RunConfig& cfg) {
    require_format(cfg, {"json"});
    const std::size_t n = cfg.n;
    json levels = json::array();
    for (std::size_t l = 1; l <= n; ++l) levels.push_back(netgame::io::to_json(netgame::extremal_centrality(l, n, cfg.params)));
    const auto extremes = netgame::symmetric_seeding_extremes(n, cfg.params, cfg.K_a, cfg.c_s, cfg.c_q);
    if (!extremes.maximum.verified || !extremes.minimum.verified)
        spdlog::warn("witness graph does not reproduce the extreme (discrepancies {} / {})",
                     extremes.maximum.discrepancy, extremes.minimum.discrepancy);
    json result{{"n", n},
                {"lambda", cfg.params.lambda(n)},
                {"levels", std::move(levels)},
                {"seeding_extremes", netgame::io::to_json(extremes)},
                {"budget_regime", netgame::io::to_json(netgame::budget_regime(n, cfg.params, cfg.K_a, cfg.c_s))}};
    return envelope(cfg, std::move(result)).dump(2) + "\n";
}

std::string render_table(const netgame::ReproduceReport& r) {
    std::ostringstream out;
    std::size_t width = 5;
    for (const auto& c : r.checks) width = std::max(width, c.name.size());
    out << r.example << '\n';
    char line[512];
    std::snprintf(line, sizeof line, "  %-*s  %22s  %22s  %9s  %s\n", static_cast<int>(width), "check", "expected",
                  "computed", "tolerance", "result");
    out << line;
    for (const auto& c : r.checks) {
        std::snprintf(line, sizeof line, "  %-*s  %22.17g  %22.17g  %9.1e  %s\n", static_cast<int>(width),
                      c.name.c_str(), c.expected, c.computed, c.tolerance, c.pass ? "PASS" : "FAIL");
        out << line;
    }
    out << (r.all_pass() ? "all checks passed\n" : "some checks FAILED\n");
    return out.str();
}

std::string cmd_reproduce(const RunConfig& cfg, bool& passed) {
    require_format(cfg, {"table", "json", "csv"});
    netgame::ReproduceReport report;
    if (cfg.example == "example1")
        report = netgame::reproduce_example1(cfg.negative_control);
    else if (cfg.example == "example2")
        report = netgame::reproduce_example2(cfg.negative_control);
    else
        throw netgame::invalid_input("unknown example '" + cfg.example + "' (expected example1 or example2)");
    passed = report.all_pass();

    if (cfg.format == "table") return render_table(report);
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "check,expected,computed,tolerance,pass\n";
        for (const auto& c : report.checks)
            out << '"' << c.name << "\"," << netgame::io::format_number(c.expected) << ','
                << netgame::io::format_number(c.computed) << ',' << netgame::io::format_number(c.tolerance) << ','
                << (c.pass ? "true" : "false") << '\n';
        return out.str();
    }
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"check", c.name},
                          {"expected", c.expected},
                          {"computed", c.computed},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    return envelope(cfg, {{"example", report.example}, {"all_pass", passed}, {"checks", std::move(checks)}}).dump(2) +
           "\n";
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(cfg.out);
    if (!file) throw netgame::invalid_input("cannot write output file " + cfg.out);
    file << text;
    spdlog::info("wrote {}", cfg.out);
}

void add_graph_options(CLI::App& sub, RunConfig& cfg) {
    auto* graph = sub.add_option("--graph", cfg.graph_path, "Graph file {\"n\", \"edges\": [[i, j, w], ...]}");
    auto* gen = sub.add_option("--generate", cfg.generate_kind,
                               "Generator: balanced, star, l_star, near_star_one_bidirectional, random");
    graph->excludes(gen);
    sub.add_option("--n", cfg.n, "Number of agents for --generate")->check(CLI::Range(2, 100000));
    sub.add_option("--l", cfg.l, "Hub count for l_star");
    sub.add_option("--seed", cfg.seed, "Seed for the random generator");
}

void add_param_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--alpha", cfg.params.alpha, "Conformity weight alpha");
    sub.add_option("--beta", cfg.params.beta, "Own-consumption weight beta");
    sub.add_option("--delta", cfg.params.delta, "Discount factor delta");
    sub.add_option("--epsilon", cfg.params.epsilon, "Minimum quality");
}

void add_output_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--format", cfg.format, "Output format: json or csv (reproduce: table, json or csv)");
    sub.add_option("--out", cfg.out, "Write output to this path instead of stdout");
}

} // namespace

int main(int argc, char** argv) {
    configure_logging();
    CLI::App app{"Two-firm quality vs seeding competition on social networks"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* centrality = app.add_subcommand("centrality", "Centrality vector, sum identity and closed-form comparison");
    auto* simulate = app.add_subcommand("simulate", "Consumption trajectory and discounted utilities");
    auto* nash = app.add_subcommand("nash", "Nash equilibrium of the budget game");
    auto* allocate = app.add_subcommand("allocate", "Threshold allocation of a budget under preset qualities");
    auto* extremal = app.add_subcommand("extremal", "Extremal centralities and seeding budgets over all graphs");
    auto* reproduce = app.add_subcommand("reproduce", "Check the worked examples against computed values");

    for (auto* sub : {centrality, simulate, nash, allocate}) {
        add_graph_options(*sub, cfg);
        add_param_options(*sub, cfg);
    }
    add_param_options(*extremal, cfg);
    extremal->add_option("--n", cfg.n, "Number of agents")->check(CLI::Range(2, 100000));

    for (auto* sub : {centrality, simulate, nash, allocate, extremal, reproduce}) add_output_options(*sub, cfg);

    nash->add_option("--Ka", cfg.K_a, "Budget of firm a");
    nash->add_option("--Kb", cfg.K_b, "Budget of firm b");
    nash->add_option("--method", cfg.method, "enumerate or iterative");
    extremal->add_option("--K,--Ka", cfg.K_a, "Budget of each firm");
    for (auto* sub : {nash, allocate, extremal}) {
        sub->add_option("--cs", cfg.c_s, "Unit seeding cost");
        sub->add_option("--cq", cfg.c_q, "Unit quality cost");
    }
    for (auto* sub : {simulate, allocate}) {
        sub->add_option("--qa", cfg.q_a, "Quality of firm a");
        sub->add_option("--qb", cfg.q_b, "Quality of firm b");
    }
    allocate->add_option("--budget", cfg.budget, "Budget of the allocating firm");
    allocate->add_option("--firm", cfg.firm, "Allocating firm: a or b");
    allocate->add_option("--y0", cfg.y0, "Prior centered consumption per agent")->delimiter(',');
    simulate->add_option("--Sa", cfg.S_a, "Seeding of firm a per agent")->delimiter(',');
    simulate->add_option("--Sb", cfg.S_b, "Seeding of firm b per agent")->delimiter(',');
    simulate->add_option("--T", cfg.T, "Number of steps");
    reproduce->add_option("example", cfg.example, "example1 or example2")->required();
    reproduce->add_flag("--negative-control", cfg.negative_control, "Add a check that must fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (cfg.format.empty()) cfg.format = cfg.command == "reproduce" ? "table" : "json";
        if (cfg.uses_graph() && cfg.graph_path.empty() && cfg.generate_kind.empty())
            throw netgame::invalid_input("one of --graph or --generate is required");
        cfg.params.validate();

        bool passed = true;
        std::string text;
        if (cfg.command == "centrality")
            text = cmd_centrality(cfg);
        else if (cfg.command == "simulate")
            text = cmd_simulate(cfg);
        else if (cfg.command == "nash")
            text = cmd_nash(cfg);
        else if (cfg.command == "allocate")
            text = cmd_allocate(cfg);
        else if (cfg.command == "extremal")
            text = cmd_extremal(cfg);
        else
            text = cmd_reproduce(cfg, passed);
        emit(cfg, text);
        return passed ? kOk : kReproduceFailed;
    } catch (const netgame::invalid_input& e) {
        spdlog::error("invalid input: {}", e.what());
        return kValidation;
    } catch (const netgame::solver_error& e) {
        spdlog::error("solver failure: {}", e.what());
        return kSolver;
    } catch (const netgame::invariant_violation& e) {
        spdlog::error("invariant violated: {}", e.what());
        return kSolver;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kUnexpected;
    }
}
