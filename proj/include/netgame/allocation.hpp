#pragma once

#include "netgame/centrality.hpp"
#include "netgame/dynamics.hpp"
#include "netgame/params.hpp"
#include "netgame/waterfill.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace netgame {

enum class Firm { a, b };

inline std::string to_string(Firm f) { return f == Firm::a ? "a" : "b"; }

/// Market state when the firms learn the network: preset qualities and the
/// consumption the agents already settled on.
struct PresetState {
    QualityPair q;
    Eigen::VectorXd y0;
    Eigen::VectorXd capacity_a; // 1/2 - y0
    Eigen::VectorXd capacity_b; // 1/2 + y0

    static PresetState from_prior(const QualityPair& q, Eigen::VectorXd y0) {
        require_feasible_state(y0, 0.0);
        PresetState s{q, std::move(y0), {}, {}};
        s.capacity_a = (0.5 - s.y0.array()).matrix();
        s.capacity_b = (0.5 + s.y0.array()).matrix();
        return s;
    }
    /// Undecided agents (y0 = 0), every demand capacity 1/2.
    static PresetState uniform(const QualityPair& q, std::size_t n) {
        return from_prior(q, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)));
    }

    [[nodiscard]] const Eigen::VectorXd& capacity(Firm f) const { return f == Firm::a ? capacity_a : capacity_b; }
};

struct AllocationResult {
    Firm firm = Firm::a;
    Eigen::VectorXd seeding;
    double quality_improvement = 0.0;
    double threshold = 0.0;
    double marginal_utility = 0.0; // own-firm terms of the marginal utility change
    double budget = 0.0;

    [[nodiscard]] double seeding_total() const { return seeding.sum(); }
};

struct Thresholds {
    double a;
    double b;
    [[nodiscard]] double of(Firm f) const { return f == Firm::a ? a : b; }
};

/// Centralities above which seeding beats quality improvement for each firm:
/// v_c^a = 2 lambda (c_s/c_q) q_b/(q_a+q_b)^2 and symmetrically for b.
inline Thresholds thresholds(const QualityPair& q, const ModelParams& p, std::size_t n, double c_s, double c_q) {
    q.validate(p);
    const double s = q.q_a + q.q_b;
    const double scale = 2.0 * p.lambda(n) * (c_s / c_q) / (s * s);
    return {scale * q.q_b, scale * q.q_a};
}

/// Own-firm marginal utility v^T S + 2 lambda q_opp dq / (q_a + q_b)^2.
inline double own_marginal_utility(const CentralityVector& v, const ModelParams& p, const QualityPair& q, Firm firm,
                                   const Eigen::VectorXd& seeding, double dq) {
    const double s = q.q_a + q.q_b;
    const double q_opp = firm == Firm::a ? q.q_b : q.q_a;
    return v.values.dot(seeding) + 2.0 * p.lambda(v.size()) * q_opp * dq / (s * s);
}

/// Full marginal utility changes (dU_a, dU_b) when both firms act.
inline std::array<double, 2> marginal_utility_change(const CentralityVector& v, const ModelParams& p,
                                                     const QualityPair& q, const Eigen::VectorXd& S_a, double dq_a,
                                                     const Eigen::VectorXd& S_b, double dq_b) {
    const double own_a = own_marginal_utility(v, p, q, Firm::a, S_a, dq_a);
    const double own_b = own_marginal_utility(v, p, q, Firm::b, S_b, dq_b);
    return {own_a - own_b, own_b - own_a};
}

/// Threshold rule: seed agents strictly above v_c in centrality order up to
/// their demand capacity while budget remains; the rest buys quality. An agent
/// exactly at the threshold is left unseeded.
inline AllocationResult allocate_budget(const CentralityVector& v, const PresetState& state, Firm firm, double K,
                                        double c_s, double c_q, const ModelParams& p) {
    p.validate();
    if (!(K >= 0.0)) throw invalid_input("budget must be nonnegative");
    if (!(c_s > 0.0) || !(c_q > 0.0)) throw invalid_input("unit costs must be positive");
    if (state.y0.size() != v.values.size()) throw invalid_input("prior consumption size does not match centralities");
    const std::size_t n = v.size();
    const double vc = thresholds(state.q, p, n, c_s, c_q).of(firm);

    std::vector<std::size_t> eligible;
    for (std::size_t agent : v.order)
        if (v[agent] > vc + kTieTolerance) eligible.push_back(agent);

    const auto& cap = state.capacity(firm);
    auto fill = water_fill(n, eligible, [&](std::size_t i) { return cap(static_cast<Eigen::Index>(i)); }, K / c_s);

    AllocationResult r;
    r.firm = firm;
    r.seeding = std::move(fill.seeding);
    r.quality_improvement = std::max(0.0, (K - c_s * fill.total) / c_q);
    r.threshold = vc;
    r.budget = K;
    r.marginal_utility = own_marginal_utility(v, p, state.q, firm, r.seeding, r.quality_improvement);
    return r;
}

/// Seeding a firm would place with unlimited budget.
inline double seeding_capacity(const CentralityVector& v, const PresetState& state, Firm firm, const ModelParams& p,
                               double c_s, double c_q) {
    const double vc = thresholds(state.q, p, v.size(), c_s, c_q).of(firm);
    const auto& cap = state.capacity(firm);
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > vc + kTieTolerance) total += cap(static_cast<Eigen::Index>(i));
    return total;
}

enum class MinCapacityCase { two_agents, one_agent, zero, boundary };

inline std::string to_string(MinCapacityCase c) {
    switch (c) {
        case MinCapacityCase::two_agents: return "two_agents";
        case MinCapacityCase::one_agent: return "one_agent";
        case MinCapacityCase::zero: return "zero";
        case MinCapacityCase::boundary: return "boundary";
    }
    return "unknown";
}

struct CapacityBound {
    std::size_t k = 0;       // most agents any graph can place above v_c
    double max_capacity = 0; // sum of the k largest demand capacities
    MinCapacityCase min_case = MinCapacityCase::zero;
    double min_capacity = 0; // smallest seeding capacity over all graphs
};

/// Extremal seeding capacities over all graphs on n agents for a threshold v_c
/// in (1, v_h^s).
///
/// The minimum with 1 < v_c < v_l^s is reported as the sum of the two smallest
/// capacities: the two agents that must sit above v_c can be chosen freely, so
/// the graph can put them on the smallest capacities.
inline CapacityBound max_seeding_capacity_bound(std::size_t n, const ModelParams& p, double v_c,
                                                std::vector<double> capacities) {
    p.validate();
    if (capacities.size() != n) throw invalid_input("need one demand capacity per agent");
    const double hub = star_hub_centrality(n, p);
    if (!(v_c > 1.0 && v_c < hub))
        throw invalid_input("threshold " + std::to_string(v_c) + " outside (1, v_h^s=" + std::to_string(hub) + ")");
    std::sort(capacities.begin(), capacities.end(), std::greater<>());

    CapacityBound out;
    const double raw = static_cast<double>(n) * p.delta / ((v_c - 1.0) * (2.0 * p.beta - p.delta));
    out.k = std::min<std::size_t>(static_cast<std::size_t>(std::floor(raw)), n);
    for (std::size_t i = 0; i < out.k; ++i) out.max_capacity += capacities[i];

    const double vl = star_peripheral_centrality(n, p);
    const double vbar = balanced_centrality(p);
    if (std::abs(v_c - vl) <= kTieTolerance || std::abs(v_c - vbar) <= kTieTolerance) {
        out.min_case = MinCapacityCase::boundary;
        out.min_capacity = 0.0;
    } else if (v_c < vl) {
        out.min_case = MinCapacityCase::two_agents;
        out.min_capacity = capacities[n - 1] + capacities[n - 2];
    } else if (v_c < vbar) {
        out.min_case = MinCapacityCase::one_agent;
        out.min_capacity = capacities[n - 1];
    } else {
        out.min_case = MinCapacityCase::zero;
        out.min_capacity = 0.0;
    }
    return out;
}

} // namespace netgame
