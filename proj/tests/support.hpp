#pragma once

#include "netgame/netgame.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace netgame::test_support {

/// Seeded source of random model instances.
class InstanceGen {
public:
    explicit InstanceGen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::size_t integer(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    std::uint64_t seed() { return rng_(); }

    /// beta in [1, 2], alpha in [beta, 2 beta - 1], delta in [0.05, 0.95].
    ModelParams params() {
        const double beta = uniform(1.0, 2.0);
        const double alpha = uniform(beta, 2.0 * beta - 1.0);
        return {alpha, beta, uniform(0.05, 0.95), 1e-6};
    }

    SocialGraph graph(std::size_t n) { return generate(GraphKind::random(), n, seed()); }

    BudgetSpec budget(std::size_t n) {
        const double c_s = uniform(0.5, 2.0);
        const double c_q = uniform(0.5, 2.0);
        const double hi = c_s * 0.5 * static_cast<double>(n) + 2.0;
        return {uniform(0.05, hi), uniform(0.05, hi), c_s, c_q};
    }

    QualityPair qualities() { return {uniform(0.1, 5.0), uniform(0.1, 5.0)}; }

    /// Feasible centered state: every |y_i| <= 1/2.
    Eigen::VectorXd state(std::size_t n) {
        Eigen::VectorXd y(static_cast<Eigen::Index>(n));
        for (auto& x : y) x = uniform(-0.5, 0.5);
        return y;
    }

private:
    std::mt19937_64 rng_;
};

/// Maximizer of a unimodal f on [lo, hi]: coarse grid, then golden section
/// around the best grid cell.
inline double numeric_argmax(const std::function<double(double)>& f, double lo, double hi, int grid = 400) {
    double best_x = lo;
    double best_f = f(lo);
    const double h = (hi - lo) / grid;
    for (int i = 1; i <= grid; ++i) {
        const double x = lo + h * i;
        const double fx = f(x);
        if (fx > best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    double a = std::max(lo, best_x - h);
    double b = std::min(hi, best_x + h);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
        if (f(c) > f(d)) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    return 0.5 * (a + b);
}

/// Largest number of agents that can have centrality strictly above v_c when
/// every centrality is at least 1 and the total is fixed, by enumerating
/// subsets A: A is realizable iff |A| v_c + (n - |A|) < total.
inline std::size_t brute_force_count(std::size_t n, double total, double v_c) {
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size <= best) continue;
        if (static_cast<double>(size) * v_c + static_cast<double>(n - size) < total) best = size;
    }
    return best;
}

/// Sorted (descending) seeding check: fully seeded prefix, at most one
/// partial agent, zeros after.
inline bool is_water_filled(const CentralityVector& v, const Eigen::VectorXd& s, double tol = 1e-9) {
    bool partial_seen = false;
    for (std::size_t r = 1; r <= v.size(); ++r) {
        const double x = s(static_cast<Eigen::Index>(v.order[r - 1]));
        if (x < -tol || x > 0.5 + tol) return false;
        const bool full = x >= 0.5 - tol;
        const bool zero = x <= tol;
        if (partial_seen && !zero) return false;
        if (!full) partial_seen = true;
    }
    return true;
}

} // namespace netgame::test_support
namespace ts = netgame::test_support;
