#pragma once

#include "netgame/centrality.hpp"
#include "netgame/params.hpp"

#include <cmath>
#include <string>
#include <variant>
#include <vector>

namespace netgame {

/// How star and balanced graphs compare in seeding for a given threshold or budget.
enum class Regime {
    none_seedable,         // no graph seeds any agent
    star_exceeds_balanced, // star seeds strictly more than balanced
    balanced_exceeds_star, // balanced seeds strictly more than star
    equal,                 // star and balanced seed the same amount
    all_saturated,         // every graph seeds every agent to capacity
    boundary,              // position coincides with an interval endpoint
};

inline std::string to_string(Regime r) {
    switch (r) {
        case Regime::none_seedable: return "none_seedable";
        case Regime::star_exceeds_balanced: return "star_exceeds_balanced";
        case Regime::balanced_exceeds_star: return "balanced_exceeds_star";
        case Regime::equal: return "equal";
        case Regime::all_saturated: return "all_saturated";
        case Regime::boundary: return "boundary";
    }
    return "unknown";
}

struct RegimeReport {
    std::string context;          // "threshold" or "budget"
    double position = 0.0;        // v_c or K/c_s
    std::vector<double> endpoints; // ascending interval endpoints
    Regime regime = Regime::boundary;
};

namespace detail {

/// `labels` has one more entry than `endpoints`; positions within
/// kTieTolerance of an endpoint are reported as boundary.
inline Regime locate(double x, const std::vector<double>& endpoints, const std::vector<Regime>& labels) {
    for (double e : endpoints)
        if (std::abs(x - e) <= kTieTolerance) return Regime::boundary;
    std::size_t i = 0;
    while (i < endpoints.size() && x > endpoints[i]) ++i;
    return labels[i];
}

/// With two agents the star and the balanced graph are both the 2-cycle.
inline Regime collapse_two_agents(Regime r, std::size_t n) {
    if (n == 2 && (r == Regime::star_exceeds_balanced || r == Regime::balanced_exceeds_star)) return Regime::equal;
    return r;
}

} // namespace detail

/// Preset-quality game: classifies v_c against 1 < v_l^s < v-bar < v_h^s.
inline RegimeReport threshold_regime(double v_c, const ModelParams& p, std::size_t n) {
    p.validate();
    RegimeReport r{"threshold", v_c,
                   {1.0, star_peripheral_centrality(n, p), balanced_centrality(p), star_hub_centrality(n, p)},
                   Regime::boundary};
    r.regime = detail::collapse_two_agents(
        detail::locate(v_c, r.endpoints,
                       {Regime::all_saturated, Regime::equal, Regime::balanced_exceeds_star,
                        Regime::star_exceeds_balanced, Regime::none_seedable}),
        n);
    return r;
}

/// Budget game with equal budgets: classifies K/c_s against
/// lambda/(2 v_h^s) < 1/2 + lambda/(2 v-bar) < n/2 + lambda/(2 v_l^s) < n/2 + lambda/2.
inline RegimeReport budget_regime(std::size_t n, const ModelParams& p, double K, double c_s) {
    p.validate();
    if (!(c_s > 0.0)) throw invalid_input("seeding cost must be positive");
    const double lambda = p.lambda(n);
    const double half_n = 0.5 * static_cast<double>(n);
    RegimeReport r{"budget", K / c_s,
                   {lambda / (2.0 * star_hub_centrality(n, p)), 0.5 + lambda / (2.0 * balanced_centrality(p)),
                    half_n + lambda / (2.0 * star_peripheral_centrality(n, p)), half_n + lambda / 2.0},
                   Regime::boundary};
    r.regime = detail::collapse_two_agents(
        detail::locate(r.position, r.endpoints,
                       {Regime::none_seedable, Regime::star_exceeds_balanced, Regime::balanced_exceeds_star,
                        Regime::equal, Regime::all_saturated}),
        n);
    return r;
}

struct ThresholdContext {
    double v_c;
};
struct BudgetContext {
    double K;
    double c_s = 1.0;
};

inline RegimeReport regime_classify(const std::variant<ThresholdContext, BudgetContext>& context,
                                    const ModelParams& p, std::size_t n) {
    if (const auto* t = std::get_if<ThresholdContext>(&context)) return threshold_regime(t->v_c, p, n);
    const auto& b = std::get<BudgetContext>(context);
    return budget_regime(n, p, b.K, b.c_s);
}

} // namespace netgame
