#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>

namespace netgame {

/// Input that violates a documented precondition (graph, params, budgets).
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A solver could not produce an answer (no equilibrium candidate, no convergence).
class solver_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An invariant that the model guarantees was observed broken at runtime.
class invariant_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr double kGraphTolerance = 1e-9;
inline constexpr double kConditionTolerance = 1e-9;
inline constexpr double kTieTolerance = 1e-12;

/// Payoff and discount parameters shared by every model component.
///
/// `alpha`, `beta` shape the isolation payoff q(alpha x - beta x^2); `delta` is
/// the firms' discount factor and `epsilon` the smallest admissible quality.
struct ModelParams {
    double alpha = 1.0;
    double beta = 1.0;
    double delta = 0.5;
    double epsilon = 1e-6;

    /// Throws invalid_input when any constraint fails.
    void validate() const {
        std::ostringstream err;
        if (!(std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(delta) && std::isfinite(epsilon))) {
            err << "model parameters must be finite";
        } else if (beta > alpha) {
            err << "beta (" << beta << ") must not exceed alpha (" << alpha << ")";
        } else if (1.0 + alpha > 2.0 * beta) {
            err << "1 + alpha (" << 1.0 + alpha << ") must not exceed 2 beta (" << 2.0 * beta << ")";
        } else if (!(delta > 0.0 && delta < 1.0)) {
            err << "delta must lie in (0, 1), got " << delta;
        } else if (!(epsilon > 0.0)) {
            err << "epsilon must be positive, got " << epsilon;
        }
        if (!err.str().empty()) throw invalid_input(err.str());
    }

    /// Ratio delta / (2 beta); the spectral bound of delta * W^T.
    [[nodiscard]] double influence_ratio() const { return delta / (2.0 * beta); }

    /// Quality-competition weight in the firms' closed-form utilities.
    [[nodiscard]] double lambda(std::size_t n) const {
        return delta * (1.0 + 2.0 * (alpha - beta)) * static_cast<double>(n) /
               (2.0 * (1.0 - delta) * (2.0 * beta - delta));
    }

    /// Fixed sum of all centralities for a graph on n agents.
    [[nodiscard]] double centrality_sum(std::size_t n) const {
        return 2.0 * beta * static_cast<double>(n) / (2.0 * beta - delta);
    }
};

} // namespace netgame
