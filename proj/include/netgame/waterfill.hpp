#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <ranges>

namespace netgame {

struct WaterFill {
    Eigen::VectorXd seeding;
    /// 1-based rank position of the first agent (in fill order) left below its
    /// cap, or the last position when every agent is full.
    std::size_t marginal = 1;
    double total = 0.0;
};

/// Fills agents in the given order, each up to its own cap, until `amount` is
/// used or the order is exhausted. `order` may be a prefix of the agents.
template <std::ranges::input_range Order, typename CapFn>
WaterFill water_fill(std::size_t n, const Order& order, CapFn&& cap, double amount) {
    WaterFill out{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)), 1, 0.0};
    double remaining = std::max(amount, 0.0);
    std::size_t position = 0;
    std::size_t marginal = 0;
    for (std::size_t agent : order) {
        ++position;
        const double c = cap(agent);
        const double take = std::min(c, remaining);
        out.seeding(static_cast<Eigen::Index>(agent)) = take;
        out.total += take;
        remaining -= take;
        if (marginal == 0 && take < c) marginal = position;
    }
    out.marginal = marginal == 0 ? std::max<std::size_t>(position, 1) : marginal;
    return out;
}

} // namespace netgame
