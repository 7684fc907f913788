#pragma once

#include "netgame/allocation.hpp"
#include "netgame/centrality.hpp"
#include "netgame/equilibrium.hpp"
#include "netgame/extremal.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace netgame {

struct Check {
    std::string name;
    double expected = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ReproduceReport {
    std::string example;
    std::vector<Check> checks;

    void add(std::string name, double expected, double computed, double tolerance) {
        checks.push_back({std::move(name), expected, computed, tolerance, std::abs(expected - computed) <= tolerance});
    }
    [[nodiscard]] bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Worked budget-game example: n = 15, alpha = beta = 1, delta = 1/2, K = 2,
/// c_s = c_q = 1. With `negative_control` an extra row asserts the maximum
/// seeding budget against the balanced graph, which must fail.
inline ReproduceReport reproduce_example1(bool negative_control = false) {
    constexpr std::size_t n = 15;
    const ModelParams p{1.0, 1.0, 0.5, 1e-6};
    constexpr double K = 2.0;
    ReproduceReport r{"example1", {}};

    r.add("lambda", 5.0, p.lambda(n), 1e-12);

    const auto balanced = centrality(generate(GraphKind::balanced(), n), p);
    const auto star = centrality(generate(GraphKind::star(), n), p);
    const auto three_star = centrality(generate(GraphKind::l_star(3), n), p);
    r.add("balanced centrality v_bar", 4.0 / 3.0, balanced.ranked(1), 1e-9);
    r.add("star hub centrality v_h^s", 4.8, star.ranked(1), 1e-9);
    // The published figure 1.08 is truncated to two decimals.
    r.add("star peripheral centrality v_l^s (two decimals)", 1.08, std::trunc(star.ranked(2) * 100.0) / 100.0, 5e-3);
    r.add("star peripheral centrality v_l^s", star_peripheral_centrality(n, p), star.ranked(2), 1e-9);
    r.add("3-star hub centrality v_3^max", 8.0 / 3.0, three_star.ranked(1), 1e-9);
    r.add("v_3^max closed form", 8.0 / 3.0, extremal_centrality(3, n, p).v_max, 1e-9);

    const auto extremes = symmetric_seeding_extremes(n, p, K, 1.0, 1.0);
    r.add("maximum seeding budget", 17.0 / 16.0, extremes.maximum.seeding_budget, 1e-9);
    r.add("maximum at level l", 3.0, static_cast<double>(extremes.maximum.solution.l), 0.0);
    r.add("maximum witness (3-star) seeding", 17.0 / 16.0, extremes.maximum.verified_seeding, 1e-9);
    r.add("minimum seeding budget", 1.0 / 8.0, extremes.minimum.seeding_budget, 1e-9);
    r.add("minimum witness (balanced) seeding", 1.0 / 8.0, extremes.minimum.verified_seeding, 1e-9);

    const auto nash_balanced = symmetric_nash(balanced, p, K, 1.0, 1.0);
    r.add("balanced equilibrium quality", 15.0 / 8.0, nash_balanced.a.quality, 1e-9);
    r.add("balanced equilibrium seeding", 1.0 / 8.0, nash_balanced.a.seeding_total(), 1e-9);

    const auto nash_three = solve_nash(three_star, p, {K, K, 1.0, 1.0});
    r.add("3-star equilibrium seeding", 17.0 / 16.0, nash_three.a.seeding_total(), 1e-9);
    r.add("3-star third hub seeding S_3", 1.0 / 16.0, nash_three.a.seeding(2), 1e-9);
    r.add("3-star equilibrium quality", 15.0 / 16.0, nash_three.a.quality, 1e-9);

    const auto nash_star = solve_nash(star, p, {K, K, 1.0, 1.0});
    r.add("star equilibrium seeding", 0.5, nash_star.a.seeding_total(), 1e-9);
    r.add("star effective centrality v~_2", 5.0 / 3.0, nash_star.v_tilde_k, 1e-9);

    if (negative_control) {
        const auto wrong = symmetric_nash(balanced, p, K, 1.0, 1.0);
        r.add("negative control: 17/16 asserted on balanced graph", 17.0 / 16.0, wrong.a.seeding_total(), 1e-9);
    }
    return r;
}

/// Worked preset-quality example: n = 15, q_a = q_b = 1, c_s = c_q = 1,
/// alpha = beta = 1, delta = 1/2, every demand capacity 1/2.
inline ReproduceReport reproduce_example2(bool negative_control = false) {
    constexpr std::size_t n = 15;
    const ModelParams p{1.0, 1.0, 0.5, 1e-6};
    const QualityPair q{1.0, 1.0};
    const auto state = PresetState::uniform(q, n);
    ReproduceReport r{"example2", {}};

    const auto t = thresholds(q, p, n, 1.0, 1.0);
    r.add("threshold v_c^a", 2.5, t.a, 1e-9);
    r.add("threshold v_c^b", 2.5, t.b, 1e-9);

    const std::vector<double> caps(n, 0.5);
    const auto bound = max_seeding_capacity_bound(n, p, t.a, caps);
    r.add("k from closed form", 3.0, static_cast<double>(bound.k), 0.0);
    r.add("maximum seeding capacity", 1.5, bound.max_capacity, 1e-9);
    r.add("minimum seeding capacity", 0.0, bound.min_capacity, 1e-9);

    const auto three_star = centrality(generate(GraphKind::l_star(3), n), p);
    const auto star = centrality(generate(GraphKind::star(), n), p);
    const auto balanced = centrality(generate(GraphKind::balanced(), n), p);
    r.add("3-star seeding capacity", 1.5, seeding_capacity(three_star, state, Firm::a, p, 1.0, 1.0), 1e-9);
    r.add("star seeding capacity", 0.5, seeding_capacity(star, state, Firm::a, p, 1.0, 1.0), 1e-9);
    r.add("balanced seeding capacity", 0.0, seeding_capacity(balanced, state, Firm::a, p, 1.0, 1.0), 1e-9);
    r.add("3-star allocation with ample budget", 1.5,
          allocate_budget(three_star, state, Firm::a, 10.0, 1.0, 1.0, p).seeding_total(), 1e-9);

    if (negative_control) {
        r.add("negative control: 1.5 asserted on balanced graph", 1.5,
              seeding_capacity(balanced, state, Firm::a, p, 1.0, 1.0), 1e-9);
    }
    return r;
}

} // namespace netgame
