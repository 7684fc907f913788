#pragma once

#include "netgame/centrality.hpp"
#include "netgame/equilibrium.hpp"
#include "netgame/graph.hpp"
#include "netgame/params.hpp"
#include "netgame/regime.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace netgame {

/// Largest and smallest value the l-th largest centrality can take over all
/// graphs on n agents.
struct ExtremalCentrality {
    std::size_t l = 1;
    double v_max = 0.0;
    double v_min = 0.0;
};

inline ExtremalCentrality extremal_centrality(std::size_t l, std::size_t n, const ModelParams& p) {
    p.validate();
    if (n < 2) throw invalid_input("extremal centralities need n >= 2");
    if (l < 1 || l > n)
        throw invalid_input("level " + std::to_string(l) + " outside [1, " + std::to_string(n) + "]");
    ExtremalCentrality e{l, 0.0, 0.0};
    e.v_max = l == 1 ? star_hub_centrality(n, p) : l_star_hub_centrality(n, l, p);
    if (l == 1)
        e.v_min = balanced_centrality(p);
    else if (l == 2)
        e.v_min = star_peripheral_centrality(n, p);
    else
        e.v_min = 1.0;
    return e;
}

inline std::vector<double> max_centrality_sequence(std::size_t n, const ModelParams& p) {
    std::vector<double> out;
    for (std::size_t l = 1; l <= n; ++l) out.push_back(extremal_centrality(l, n, p).v_max);
    return out;
}

inline std::vector<double> min_centrality_sequence(std::size_t n, const ModelParams& p) {
    std::vector<double> out;
    for (std::size_t l = 1; l <= n; ++l) out.push_back(extremal_centrality(l, n, p).v_min);
    return out;
}

struct SeedingExtreme {
    SymmetricSolution solution;   // against the extremal centrality sequence
    double seeding_budget = 0.0;  // per firm
    GraphKind witness_kind;
    SocialGraph witness;
    double verified_seeding = 0.0; // symmetric equilibrium seeding on the witness
    double discrepancy = 0.0;
    bool verified = false;
};

struct SeedingExtremes {
    SeedingExtreme maximum;
    SeedingExtreme minimum;
};

namespace detail {

inline GraphKind max_witness_kind(const SymmetricSolution& s, std::size_t n) {
    if (s.tag == SeedingCase::saturated) return GraphKind::balanced();
    // Effective centrality strictly above v_l^max: the (l-1)-star attains it.
    const std::size_t hubs = s.tag == SeedingCase::boundary_zero ? (s.l > 1 ? s.l - 1 : 1) : s.l;
    if (hubs <= 1) return GraphKind::star();
    if (hubs >= n) return GraphKind::balanced();
    return GraphKind::l_star(hubs);
}

inline GraphKind min_witness_kind(const SymmetricSolution& s) {
    if (s.tag == SeedingCase::saturated) return GraphKind::balanced();
    if (s.l == 1) return GraphKind::balanced();
    if (s.l == 2) return GraphKind::star();
    return GraphKind::near_star();
}

inline SeedingExtreme build_extreme(GraphKind kind, std::size_t n, const ModelParams& p, const FirmBudget& b,
                                    const SymmetricSolution& s) {
    SocialGraph witness = generate(kind, n);
    const auto on_witness = symmetric_nash(witness, p, b.K, b.c_s, b.c_q);
    SeedingExtreme e{s, s.seeding_total, kind, std::move(witness), on_witness.a.seeding_total(), 0.0, false};
    e.discrepancy = std::abs(e.verified_seeding - e.seeding_budget);
    e.verified = e.discrepancy <= kConditionTolerance;
    return e;
}

} // namespace detail

/// Maximum and minimum equilibrium seeding budget over all graphs on n agents
/// when both firms hold budget K, each with a witness graph that attains it.
/// The witness is re-solved with symmetric_nash; `verified` records whether it
/// reproduces the extreme within tolerance.
inline SeedingExtremes symmetric_seeding_extremes(std::size_t n, const ModelParams& p, double K, double c_s,
                                                  double c_q) {
    p.validate();
    const FirmBudget b{K, c_s, c_q};
    b.validate(p);
    const double lambda = p.lambda(n);

    const auto vmax = max_centrality_sequence(n, p);
    const auto vmin = min_centrality_sequence(n, p);
    const auto smax = solve_symmetric_levels(vmax, lambda, b, p.epsilon);
    const auto smin = solve_symmetric_levels(vmin, lambda, b, p.epsilon);
    return {detail::build_extreme(detail::max_witness_kind(smax, n), n, p, b, smax),
            detail::build_extreme(detail::min_witness_kind(smin), n, p, b, smin)};
}

} // namespace netgame
