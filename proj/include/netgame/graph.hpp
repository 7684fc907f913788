#pragma once

#include "netgame/params.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace netgame {

struct ValidationReport {
    std::vector<std::string> violations;

    [[nodiscard]] bool ok() const { return violations.empty(); }

    [[nodiscard]] std::string summary() const {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) out += "; ";
            out += v;
        }
        return out;
    }
};

/// Checks the influence-matrix invariants: square, n >= 2, zero diagonal,
/// nonnegative entries, every row summing to one.
inline ValidationReport validate_graph(const Eigen::MatrixXd& weights, double tol = kGraphTolerance) {
    ValidationReport report;
    const auto fmt = [](double x) {
        std::ostringstream os;
        os << std::setprecision(12) << x;
        return os.str();
    };
    if (weights.rows() != weights.cols()) {
        report.violations.push_back("matrix is not square (" + std::to_string(weights.rows()) + "x" +
                                    std::to_string(weights.cols()) + ")");
        return report;
    }
    if (weights.rows() < 2) {
        report.violations.push_back("agent count " + std::to_string(weights.rows()) + " below 2");
        return report;
    }
    const Eigen::Index n = weights.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (weights(i, i) != 0.0) report.violations.push_back("nonzero diagonal at " + std::to_string(i));
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!std::isfinite(weights(i, j))) {
                report.violations.push_back("non-finite weight at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            } else if (weights(i, j) < 0.0) {
                report.violations.push_back("negative weight at (" + std::to_string(i) + ", " + std::to_string(j) +
                                            ") = " + fmt(weights(i, j)));
            }
        }
        const double row = weights.row(i).sum();
        if (!(std::abs(row - 1.0) <= tol)) report.violations.push_back("row " + std::to_string(i) + " sum " + fmt(row));
    }
    return report;
}

/// Weighted directed influence graph. weights(i, j) is the influence of agent j
/// on agent i. Always valid once constructed.
class SocialGraph {
public:
    explicit SocialGraph(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
        if (auto report = validate_graph(weights_); !report.ok()) throw invalid_input("invalid graph: " + report.summary());
    }

    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(weights_.rows()); }
    [[nodiscard]] const Eigen::MatrixXd& weights() const { return weights_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
        return weights_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    /// Interaction matrix W = G / (2 beta) of the consumption dynamics.
    [[nodiscard]] Eigen::MatrixXd interaction(const ModelParams& p) const { return weights_ / (2.0 * p.beta); }

    friend bool operator==(const SocialGraph& a, const SocialGraph& b) { return a.weights_ == b.weights_; }

private:
    Eigen::MatrixXd weights_;
};

enum class GraphFamily { balanced, star, l_star, near_star_one_bidirectional, random };

struct GraphKind {
    GraphFamily family = GraphFamily::balanced;
    std::size_t hubs = 0; // only meaningful for l_star

    static GraphKind balanced() { return {GraphFamily::balanced, 0}; }
    static GraphKind star() { return {GraphFamily::star, 1}; }
    static GraphKind l_star(std::size_t l) { return {GraphFamily::l_star, l}; }
    static GraphKind near_star() { return {GraphFamily::near_star_one_bidirectional, 0}; }
    static GraphKind random() { return {GraphFamily::random, 0}; }

    friend bool operator==(const GraphKind&, const GraphKind&) = default;
};

inline std::string to_string(const GraphKind& kind) {
    switch (kind.family) {
        case GraphFamily::balanced: return "balanced";
        case GraphFamily::star: return "star";
        case GraphFamily::l_star: return "l_star(" + std::to_string(kind.hubs) + ")";
        case GraphFamily::near_star_one_bidirectional: return "near_star_one_bidirectional";
        case GraphFamily::random: return "random";
    }
    return "unknown";
}

/// Parses a family name as used on the command line; `hubs` fills in l for l_star.
inline GraphKind parse_graph_kind(std::string_view name, std::size_t hubs = 0) {
    if (name == "balanced") return GraphKind::balanced();
    if (name == "star") return GraphKind::star();
    if (name == "l_star") return GraphKind::l_star(hubs);
    if (name == "near_star" || name == "near_star_one_bidirectional") return GraphKind::near_star();
    if (name == "random") return GraphKind::random();
    throw invalid_input("unknown graph kind '" + std::string(name) + "'");
}

/// Builds a canonical member of a graph family.
///
/// balanced: directed n-cycle i -> i+1 with unit weights.
/// star: agent 0 is the center; every peripheral puts weight 1 on the center,
///   the center spreads 1/(n-1) over the peripherals.
/// l_star(l): agents 0..l-1 are hubs; each hub splits 1/(l-1) over the other
///   hubs, each peripheral splits 1/l over the hubs.
/// near_star_one_bidirectional: star whose center puts all its weight on agent 1.
/// random: Bernoulli(1/2) support with uniform weights, rows normalized; a row
///   that comes out empty is drawn again. Deterministic in `seed`.
inline SocialGraph generate(const GraphKind& kind, std::size_t n, std::uint64_t seed = 0) {
    if (n < 2) throw invalid_input("graph needs at least 2 agents, got " + std::to_string(n));
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(N, N);
    switch (kind.family) {
        case GraphFamily::balanced:
            for (Eigen::Index i = 0; i < N; ++i) g(i, (i + 1) % N) = 1.0;
            break;
        case GraphFamily::star:
            for (Eigen::Index i = 1; i < N; ++i) {
                g(i, 0) = 1.0;
                g(0, i) = 1.0 / static_cast<double>(n - 1);
            }
            break;
        case GraphFamily::l_star: {
            const std::size_t l = kind.hubs;
            if (l < 2 || l > n - 1)
                throw invalid_input("l_star requires 2 <= l <= n-1, got l=" + std::to_string(l) + " n=" + std::to_string(n));
            const auto L = static_cast<Eigen::Index>(l);
            for (Eigen::Index h = 0; h < L; ++h)
                for (Eigen::Index o = 0; o < L; ++o)
                    if (o != h) g(h, o) = 1.0 / static_cast<double>(l - 1);
            for (Eigen::Index i = L; i < N; ++i)
                for (Eigen::Index h = 0; h < L; ++h) g(i, h) = 1.0 / static_cast<double>(l);
            break;
        }
        case GraphFamily::near_star_one_bidirectional:
            for (Eigen::Index i = 1; i < N; ++i) g(i, 0) = 1.0;
            g(0, 1) = 1.0;
            break;
        case GraphFamily::random: {
            std::mt19937_64 rng(seed);
            std::bernoulli_distribution present(0.5);
            std::uniform_real_distribution<double> weight(0.0, 1.0);
            for (Eigen::Index i = 0; i < N; ++i) {
                double total = 0.0;
                while (total <= 0.0) {
                    for (Eigen::Index j = 0; j < N; ++j) {
                        g(i, j) = (j != i && present(rng)) ? weight(rng) : 0.0;
                    }
                    total = g.row(i).sum();
                }
                g.row(i) /= total;
                // Renormalizing can leave the row a few ulps off 1; push the residue into the largest entry.
                Eigen::Index arg = 0;
                g.row(i).maxCoeff(&arg);
                g(i, arg) += 1.0 - g.row(i).sum();
            }
            break;
        }
    }
    return SocialGraph(std::move(g));
}

} // namespace netgame
