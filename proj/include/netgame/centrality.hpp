#pragma once

#include "netgame/graph.hpp"
#include "netgame/params.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace netgame {

/// Discounted influence centralities v = (I - delta W^T)^{-1} 1 together with
/// the agent ranking used for water-filling.
struct CentralityVector {
    Eigen::VectorXd values;
    /// Agents sorted by descending centrality. Values that agree to within
    /// kTieTolerance (relative) count as equal and keep ascending index.
    std::vector<std::size_t> order;

    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(values.size()); }
    [[nodiscard]] double operator[](std::size_t agent) const { return values(static_cast<Eigen::Index>(agent)); }

    /// Centrality at 1-based rank position (v_1 >= v_2 >= ...).
    [[nodiscard]] double ranked(std::size_t position) const { return (*this)[order.at(position - 1)]; }

    [[nodiscard]] std::vector<double> sorted() const {
        std::vector<double> out;
        out.reserve(order.size());
        for (auto agent : order) out.push_back((*this)[agent]);
        return out;
    }
};

inline CentralityVector make_centrality(Eigen::VectorXd values) {
    CentralityVector cv{std::move(values), {}};
    cv.order.resize(cv.size());
    std::iota(cv.order.begin(), cv.order.end(), std::size_t{0});
    std::stable_sort(cv.order.begin(), cv.order.end(),
                     [&](std::size_t a, std::size_t b) { return cv[a] > cv[b]; });
    // Solver round-off splits ties by a few ulps; regroup runs of near-equal
    // values so the order stays reproducible.
    for (auto run = cv.order.begin(); run != cv.order.end();) {
        const double head = cv[*run];
        auto end = std::find_if(run, cv.order.end(), [&](std::size_t a) {
            return head - cv[a] > kTieTolerance * std::max(1.0, std::abs(head));
        });
        std::sort(run, end);
        run = end;
    }
    return cv;
}

/// Direct dense solve of (I - delta W^T) v = 1.
inline CentralityVector centrality(const SocialGraph& g, const ModelParams& p) {
    p.validate();
    const auto n = static_cast<Eigen::Index>(g.size());
    const Eigen::MatrixXd system =
        Eigen::MatrixXd::Identity(n, n) - p.delta * g.interaction(p).transpose();
    Eigen::VectorXd v = system.partialPivLu().solve(Eigen::VectorXd::Ones(n));
    return make_centrality(std::move(v));
}

/// Neumann-series evaluation v = sum_k (delta W^T)^k 1, truncated once the
/// geometric tail is below `tol`.
inline CentralityVector centrality_neumann(const SocialGraph& g, const ModelParams& p, double tol = 1e-15) {
    p.validate();
    const auto n = static_cast<Eigen::Index>(g.size());
    const Eigen::MatrixXd step = p.delta * g.interaction(p).transpose();
    const double ratio = p.influence_ratio();
    Eigen::VectorXd term = Eigen::VectorXd::Ones(n);
    Eigen::VectorXd v = term;
    // W has row sums 1/(2 beta), so ||term_k||_1 <= n ratio^k and the tail after
    // term_k is below n ratio^{k+1} / (1 - ratio) in every norm.
    for (double bound = static_cast<double>(n) * ratio; bound / (1.0 - ratio) > tol; bound *= ratio) {
        term = step * term;
        v += term;
    }
    return make_centrality(std::move(v));
}

/// Centralities v-bar of every agent in a balanced graph.
inline double balanced_centrality(const ModelParams& p) { return 2.0 * p.beta / (2.0 * p.beta - p.delta); }

inline double star_hub_centrality(std::size_t n, const ModelParams& p) {
    const double r = p.influence_ratio();
    return (1.0 + r * static_cast<double>(n - 1)) / (1.0 - r * r);
}

inline double star_peripheral_centrality(std::size_t n, const ModelParams& p) {
    const double r = p.influence_ratio();
    return (1.0 + r / static_cast<double>(n - 1)) / (1.0 - r * r);
}

/// Largest feasible l-th centrality for l >= 2; reached by the hubs of an l-star.
inline double l_star_hub_centrality(std::size_t n, std::size_t l, const ModelParams& p) {
    return static_cast<double>(n) * p.delta / (static_cast<double>(l) * (2.0 * p.beta - p.delta)) + 1.0;
}

struct RoleCentrality {
    double hub;
    double peripheral;
};

inline RoleCentrality closed_form_centrality(const GraphKind& kind, std::size_t n, const ModelParams& p) {
    p.validate();
    if (n < 2) throw invalid_input("closed-form centrality needs n >= 2");
    switch (kind.family) {
        case GraphFamily::balanced: {
            const double v = balanced_centrality(p);
            return {v, v};
        }
        case GraphFamily::star:
            return {star_hub_centrality(n, p), star_peripheral_centrality(n, p)};
        case GraphFamily::l_star:
            if (kind.hubs < 2 || kind.hubs > n - 1) throw invalid_input("l_star requires 2 <= l <= n-1");
            return {l_star_hub_centrality(n, kind.hubs, p), 1.0};
        default:
            throw invalid_input("no closed-form centrality for " + to_string(kind));
    }
}

} // namespace netgame
