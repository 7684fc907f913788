#pragma once

#include "netgame/centrality.hpp"
#include "netgame/graph.hpp"
#include "netgame/params.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <variant>
#include <vector>

namespace netgame {

struct QualityPair {
    double q_a = 1.0;
    double q_b = 1.0;

    void validate(const ModelParams& p) const {
        if (!(q_a >= p.epsilon) || !(q_b >= p.epsilon))
            throw invalid_input("qualities must be at least epsilon=" + std::to_string(p.epsilon));
    }
    [[nodiscard]] QualityPair swapped() const { return {q_b, q_a}; }
};

/// Centered consumption y (x_i = 1/2 + y_i) at time t.
struct ConsumptionState {
    Eigen::VectorXd y;
    std::size_t t = 0;
};

struct SeedingPair {
    Eigen::VectorXd S_a;
    Eigen::VectorXd S_b;

    static SeedingPair zero(std::size_t n) {
        const auto N = static_cast<Eigen::Index>(n);
        return {Eigen::VectorXd::Zero(N), Eigen::VectorXd::Zero(N)};
    }

    void validate(std::size_t n) const {
        const auto N = static_cast<Eigen::Index>(n);
        if (S_a.size() != N || S_b.size() != N) throw invalid_input("seeding vectors must have one entry per agent");
        if ((S_a.array() < 0.0).any() || (S_b.array() < 0.0).any()) throw invalid_input("seeding must be nonnegative");
        if (S_a.maxCoeff() > 0.5 || S_b.maxCoeff() > 0.5) throw invalid_input("seeding exceeds demand capacity 1/2");
    }
    [[nodiscard]] SeedingPair swapped() const { return {S_b, S_a}; }
    /// Initial centered consumption y(0) produced by the seeding.
    [[nodiscard]] Eigen::VectorXd initial_offset() const { return S_a - S_b; }
};

struct UtilityBreakdown {
    double base = 0.0;      // n / (2 (1 - delta))
    double seeding_a = 0.0; // v^T S_a
    double seeding_b = 0.0; // v^T S_b
    double quality = 0.0;   // lambda (q_a - q_b) / (q_a + q_b)
};

struct UtilityReport {
    double U_a = 0.0;
    double U_b = 0.0;
    double lambda = 0.0;
    UtilityBreakdown breakdown;
    std::string mode;
    std::size_t horizon = 0; // simulated mode only
};

/// Per-agent constant drift u_a of the linear consumption update.
inline double externality_drift(const QualityPair& q, const ModelParams& p) {
    return ((1.0 + 2.0 * (p.alpha - p.beta)) / (4.0 * p.beta)) * ((q.q_a - q.q_b) / (q.q_a + q.q_b));
}

/// Throws invariant_violation when some |y_i| exceeds 1/2 (beyond rounding).
inline void require_feasible_state(const Eigen::VectorXd& y, double slack = 1e-12) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (!(std::abs(y(i)) <= 0.5 + slack))
            throw invariant_violation("consumption of agent " + std::to_string(i) + " left [0, 1]: y=" +
                                      std::to_string(y(i)));
    }
}

/// One round of myopic best responses: y(t+1) = W y(t) + u_a 1.
inline ConsumptionState step(const SocialGraph& g, const ModelParams& p, const QualityPair& q,
                             const ConsumptionState& s) {
    if (s.y.size() != static_cast<Eigen::Index>(g.size())) throw invalid_input("state size does not match graph");
    require_feasible_state(s.y);
    Eigen::VectorXd next = g.interaction(p) * s.y;
    next.array() += externality_drift(q, p);
    require_feasible_state(next);
    return {std::move(next), s.t + 1};
}

/// Total utility of agent i for choosing y_i while the others play `y`
/// (entry i of `y` is ignored).
inline double agent_utility(std::size_t i, double y_i, const Eigen::VectorXd& y, const SocialGraph& g,
                            const ModelParams& p, const QualityPair& q) {
    const double qa = q.q_a;
    const double qb = q.q_b;
    double u = (qa + qb) * (p.alpha / 2.0 - p.beta / 4.0 - p.beta * y_i * y_i) + (qa - qb) * (p.alpha - p.beta) * y_i;
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (j == i) continue;
        const double gij = g(i, j);
        const double yj = y(static_cast<Eigen::Index>(j));
        u += qa * gij * (0.5 + y_i) * (0.5 + yj) + qb * gij * (0.5 - y_i) * (0.5 - yj);
    }
    return u;
}

/// Iterates `step` T times; the result holds states t = 0..T.
inline std::vector<ConsumptionState> simulate(const SocialGraph& g, const ModelParams& p, const QualityPair& q,
                                              const ConsumptionState& y0, std::size_t T) {
    std::vector<ConsumptionState> trajectory;
    trajectory.reserve(T + 1);
    trajectory.push_back({y0.y, 0});
    require_feasible_state(y0.y);
    for (std::size_t t = 0; t < T; ++t) trajectory.push_back(step(g, p, q, trajectory.back()));
    return trajectory;
}

/// Closed expanded form y(t) = W^t y(0) + sum_{k<t} W^k u_a 1.
inline ConsumptionState expanded_state(const SocialGraph& g, const ModelParams& p, const QualityPair& q,
                                       const Eigen::VectorXd& y0, std::size_t t) {
    const auto n = static_cast<Eigen::Index>(g.size());
    const Eigen::MatrixXd W = g.interaction(p);
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(n, externality_drift(q, p));
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd drift = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < t; ++k) {
        drift += power * u;
        power = W * power;
    }
    return {power * y0 + drift, t};
}

/// Fixed point y* = (I - W)^{-1} u_a 1 of the dynamics.
inline Eigen::VectorXd steady_state(const SocialGraph& g, const ModelParams& p, const QualityPair& q) {
    const auto n = static_cast<Eigen::Index>(g.size());
    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - g.interaction(p);
    return system.partialPivLu().solve(Eigen::VectorXd::Constant(n, externality_drift(q, p)));
}

/// Smallest T with delta^T n / (1 - delta) <= `tol`, which bounds the
/// discounted tail beyond T.
inline std::size_t adaptive_horizon(const ModelParams& p, std::size_t n, double tol = 1e-10) {
    const double T = std::ceil(std::log(tol * (1.0 - p.delta) / static_cast<double>(n)) / std::log(p.delta));
    return T > 0.0 ? static_cast<std::size_t>(T) : 0;
}

struct ClosedForm {};
struct Simulated {
    std::size_t horizon = 0; // 0 selects adaptive_horizon
};
using UtilityMode = std::variant<ClosedForm, Simulated>;

/// Closed-form firm utilities from a precomputed centrality vector.
inline UtilityReport firm_utilities(const CentralityVector& v, const ModelParams& p, const QualityPair& q,
                                    const SeedingPair& seeding) {
    const std::size_t n = v.size();
    UtilityReport r;
    r.lambda = p.lambda(n);
    r.breakdown.base = static_cast<double>(n) / (2.0 * (1.0 - p.delta));
    r.breakdown.seeding_a = v.values.dot(seeding.S_a);
    r.breakdown.seeding_b = v.values.dot(seeding.S_b);
    r.breakdown.quality = r.lambda * (q.q_a - q.q_b) / (q.q_a + q.q_b);
    r.U_a = r.breakdown.base + r.breakdown.seeding_a - r.breakdown.seeding_b + r.breakdown.quality;
    r.U_b = r.breakdown.base + r.breakdown.seeding_b - r.breakdown.seeding_a - r.breakdown.quality;
    r.mode = "closed_form";
    return r;
}

/// Discounted consumption of both firms, either closed form or by simulating
/// the dynamics from y(0) = S_a - S_b.
inline UtilityReport discounted_utilities(const SocialGraph& g, const ModelParams& p, const QualityPair& q,
                                          const SeedingPair& seeding, const UtilityMode& mode = ClosedForm{}) {
    p.validate();
    q.validate(p);
    const std::size_t n = g.size();
    seeding.validate(n);
    const Eigen::VectorXd y0 = seeding.initial_offset();
    require_feasible_state(y0, 0.0);

    UtilityReport report = firm_utilities(centrality(g, p), p, q, seeding);
    if (const auto* sim = std::get_if<Simulated>(&mode)) {
        const std::size_t T = sim->horizon ? sim->horizon : adaptive_horizon(p, n);
        double ua = 0.0;
        double ub = 0.0;
        double discount = 1.0;
        ConsumptionState state{y0, 0};
        for (std::size_t t = 0; t <= T; ++t) {
            const double total = state.y.sum();
            ua += discount * (0.5 * static_cast<double>(n) + total);
            ub += discount * (0.5 * static_cast<double>(n) - total);
            discount *= p.delta;
            if (t < T) state = step(g, p, q, state);
        }
        report.U_a = ua;
        report.U_b = ub;
        report.mode = "simulated";
        report.horizon = T;
    }
    return report;
}

} // namespace netgame
