#pragma once

#include "netgame/centrality.hpp"
#include "netgame/dynamics.hpp"
#include "netgame/graph.hpp"
#include "netgame/params.hpp"
#include "netgame/waterfill.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace netgame {

/// Budget of a single firm with its unit costs.
struct FirmBudget {
    double K = 0.0;
    double c_s = 1.0;
    double c_q = 1.0;

    void validate(const ModelParams& p) const {
        if (!(c_s > 0.0) || !(c_q > 0.0)) throw invalid_input("unit costs c_s and c_q must be positive");
        if (!(K >= c_q * p.epsilon * (1.0 - 1e-12)))
            throw invalid_input("budget " + std::to_string(K) + " cannot afford the minimum quality c_q*epsilon");
    }
    /// Seeding units left after paying for quality q.
    [[nodiscard]] double seeding_amount(double q) const { return (K - c_q * q) / c_s; }
    /// Quality bought with what is left after seeding `amount` units.
    [[nodiscard]] double quality_for(double amount) const { return (K - c_s * amount) / c_q; }
};

struct BudgetSpec {
    double K_a = 0.0;
    double K_b = 0.0;
    double c_s = 1.0;
    double c_q = 1.0;

    [[nodiscard]] FirmBudget firm_a() const { return {K_a, c_s, c_q}; }
    [[nodiscard]] FirmBudget firm_b() const { return {K_b, c_s, c_q}; }
    void validate(const ModelParams& p) const {
        firm_a().validate(p);
        firm_b().validate(p);
    }
};

/// Where a firm's marginal seeding unit sits at an optimum.
enum class SeedingCase {
    interior,      // marginal agent partially seeded, effective centrality = its centrality
    boundary_zero, // marginal agent unseeded, effective centrality inside [v_k, v_{k-1}]
    saturated,     // every agent seeded to 1/2
    quality_floor, // quality pinned at epsilon
};

inline std::string to_string(SeedingCase c) {
    switch (c) {
        case SeedingCase::interior: return "interior";
        case SeedingCase::boundary_zero: return "boundary_zero";
        case SeedingCase::saturated: return "saturated";
        case SeedingCase::quality_floor: return "quality_floor";
    }
    return "unknown";
}

struct FirmStrategy {
    Eigen::VectorXd seeding;
    double quality = 0.0;

    [[nodiscard]] double seeding_total() const { return seeding.sum(); }
};

struct NashOutcome {
    FirmStrategy a;
    FirmStrategy b;
    std::size_t k = 1; // 1-based rank of firm a's marginal agent
    std::size_t l = 1; // 1-based rank of firm b's marginal agent
    double v_tilde_k = 0.0;
    double v_tilde_l = 0.0;
    SeedingCase case_a = SeedingCase::interior;
    SeedingCase case_b = SeedingCase::interior;
    double U_a = 0.0;
    double U_b = 0.0;
    std::size_t accepted_candidates = 1;
};

/// Seeds agents in centrality order up to 1/2 each.
inline WaterFill water_fill_seeding(const CentralityVector& v, double amount) {
    const double capacity = 0.5 * static_cast<double>(v.size());
    if (amount < 0.0 || amount > capacity + kTieTolerance)
        throw invalid_input("seeding amount " + std::to_string(amount) + " outside [0, n/2]");
    return water_fill(v.size(), v.order, [](std::size_t) { return 0.5; }, std::min(amount, capacity));
}

namespace detail {

/// Quality range where the budget equation can hold with seeding in [0, n/2].
inline std::array<double, 2> quality_range(const FirmBudget& b, std::size_t n, const ModelParams& p) {
    const double lo = std::max(p.epsilon, b.quality_for(0.5 * static_cast<double>(n)));
    return {lo, b.K / b.c_q};
}

inline double clamp_amount(double m, std::size_t n) { return std::clamp(m, 0.0, 0.5 * static_cast<double>(n)); }

/// 2 lambda (c_s/c_q) q_opp / (q + q_opp)^2: the centrality at which a firm is
/// indifferent between one more unit of seeding and of quality.
inline double indifference_centrality(double lambda, const FirmBudget& b, double q, double q_opp) {
    const double s = q + q_opp;
    return 2.0 * lambda * (b.c_s / b.c_q) * q_opp / (s * s);
}

} // namespace detail

/// Own-firm part of the utility, v^T S + lambda (q - q_opp)/(q + q_opp), with
/// S water-filled from the budget left after buying quality q.
inline double firm_objective(const CentralityVector& v, const ModelParams& p, const FirmBudget& b, double q,
                             double q_opp) {
    const auto fill = water_fill_seeding(v, detail::clamp_amount(b.seeding_amount(q), v.size()));
    return v.values.dot(fill.seeding) + p.lambda(v.size()) * (q - q_opp) / (q + q_opp);
}

struct BestResponse {
    double quality = 0.0;
    WaterFill seeding;
    double utility = 0.0;
};

/// Maximizes the strictly concave own-firm objective over q.
///
/// The feasible quality range is cut at the qualities where the water-filled
/// marginal agent changes. On each piece the derivative has the sign of
/// psi(q) - v_m (psi decreasing, v_m nondecreasing in q), so scanning pieces
/// from low to high quality the first sign change locates the optimum, either
/// at a breakpoint or at the stationary point
/// q = sqrt(2 lambda q_opp c_s / (c_q v_m)) - q_opp.
inline BestResponse best_response_quality(const CentralityVector& v, const ModelParams& p, const FirmBudget& b,
                                          double q_opp) {
    b.validate(p);
    if (!(q_opp >= p.epsilon * (1.0 - 1e-12))) throw invalid_input("opponent quality below epsilon");
    const std::size_t n = v.size();
    const double lambda = p.lambda(n);
    const double ratio = b.c_s / b.c_q;
    const double max_amount = std::max(0.0, detail::clamp_amount(b.seeding_amount(p.epsilon), n));

    double amount = 0.0; // q = K / c_q unless a piece below stops the scan
    const auto pieces = static_cast<std::size_t>(std::ceil(2.0 * max_amount - kTieTolerance));
    for (std::size_t piece = std::max<std::size_t>(pieces, 1); piece >= 1 && max_amount > 0.0; --piece) {
        const double lo_amount = 0.5 * static_cast<double>(piece - 1);
        const double hi_amount = std::min(0.5 * static_cast<double>(piece), max_amount);
        const double vm = v.ranked(piece);
        const double q_high = b.quality_for(lo_amount);
        const double q_low = b.quality_for(hi_amount);
        if (detail::indifference_centrality(lambda, b, q_high, q_opp) >= vm) continue;
        if (detail::indifference_centrality(lambda, b, q_low, q_opp) <= vm) {
            amount = hi_amount;
        } else {
            const double q = std::clamp(std::sqrt(2.0 * lambda * ratio * q_opp / vm) - q_opp, q_low, q_high);
            amount = std::clamp(b.seeding_amount(q), lo_amount, hi_amount);
        }
        break;
    }

    BestResponse br;
    br.quality = amount > 0.0 ? b.quality_for(amount) : b.K / b.c_q;
    br.quality = std::max(br.quality, p.epsilon);
    br.seeding = water_fill_seeding(v, amount);
    br.utility = v.values.dot(br.seeding.seeding) + lambda * (br.quality - q_opp) / (br.quality + q_opp);
    return br;
}

/// Largest gain either firm could get over `q_self` among `grid` evenly spaced
/// qualities (water-filled seeding) across its feasible range.
inline double max_deviation_gain(const CentralityVector& v, const ModelParams& p, const FirmBudget& b, double q_self,
                                 double q_opp, std::size_t grid = 200) {
    const auto [lo, hi] = detail::quality_range(b, v.size(), p);
    const double base = firm_objective(v, p, b, q_self, q_opp);
    double gain = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid; ++i) {
        const double t = grid == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(grid - 1);
        gain = std::max(gain, firm_objective(v, p, b, lo + t * (hi - lo), q_opp) - base);
    }
    return gain;
}

namespace detail {

/// Candidate description of one firm's side of the equilibrium: either the
/// effective centrality is pinned (interior) or the quality is (all others).
struct FirmCandidate {
    SeedingCase tag;
    std::size_t k;
    bool quality_fixed;
    double value; // quality when quality_fixed, effective centrality otherwise
};

inline std::vector<FirmCandidate> firm_candidates(const CentralityVector& v, const ModelParams& p,
                                                  const FirmBudget& b) {
    const std::size_t n = v.size();
    std::vector<FirmCandidate> out;
    const double floor_amount = clamp_amount(b.seeding_amount(p.epsilon), n);
    const std::size_t floor_k = water_fill_seeding(v, floor_amount).marginal;
    for (std::size_t k = 1; k <= n; ++k) {
        out.push_back({SeedingCase::interior, k, false, v.ranked(k)});
        const double q_zero = b.quality_for(0.5 * static_cast<double>(k - 1));
        if (q_zero >= p.epsilon - kConditionTolerance) out.push_back({SeedingCase::boundary_zero, k, true, q_zero});
        if (k == n) {
            const double q_sat = b.quality_for(0.5 * static_cast<double>(n));
            if (q_sat >= p.epsilon - kConditionTolerance) out.push_back({SeedingCase::saturated, k, true, q_sat});
        }
        if (k == floor_k) out.push_back({SeedingCase::quality_floor, k, true, p.epsilon});
    }
    return out;
}

/// Checks one firm's optimality conditions given both qualities.
inline bool firm_conditions_hold(const FirmCandidate& c, const CentralityVector& v, const ModelParams& p,
                                 const FirmBudget& b, double q, double psi, double tol) {
    const std::size_t n = v.size();
    if (q < p.epsilon - tol || q > b.K / b.c_q + tol) return false;
    const double amount = b.seeding_amount(q);
    if (amount < -tol || amount > 0.5 * static_cast<double>(n) + tol) return false;
    const double upper = c.k == 1 ? std::numeric_limits<double>::infinity() : v.ranked(c.k - 1);
    switch (c.tag) {
        case SeedingCase::interior: {
            const double marginal = amount - 0.5 * static_cast<double>(c.k - 1);
            return marginal >= -tol && marginal < 0.5 + tol && std::abs(psi - v.ranked(c.k)) <= tol;
        }
        case SeedingCase::boundary_zero:
            return psi >= v.ranked(c.k) - tol && psi <= upper + tol;
        case SeedingCase::saturated:
            return psi <= v.ranked(n) + tol;
        case SeedingCase::quality_floor: {
            if (amount <= tol) return true;
            const auto last = static_cast<std::size_t>(std::ceil(2.0 * amount - kTieTolerance));
            return psi <= v.ranked(std::clamp<std::size_t>(last, 1, n)) + tol;
        }
    }
    return false;
}

inline NashOutcome assemble_outcome(const CentralityVector& v, const ModelParams& p, const BudgetSpec& budget,
                                    double q_a, double q_b) {
    const std::size_t n = v.size();
    NashOutcome out;
    const auto fill_a = water_fill_seeding(v, clamp_amount(budget.firm_a().seeding_amount(q_a), n));
    const auto fill_b = water_fill_seeding(v, clamp_amount(budget.firm_b().seeding_amount(q_b), n));
    out.a = {fill_a.seeding, q_a};
    out.b = {fill_b.seeding, q_b};
    const auto report = firm_utilities(v, p, {q_a, q_b}, {fill_a.seeding, fill_b.seeding});
    out.U_a = report.U_a;
    out.U_b = report.U_b;
    return out;
}

} // namespace detail

/// Unique Nash equilibrium of the budget-allocation game by enumerating the
/// marginal-agent pair (k, l) and each firm's case. Every case pins either the
/// effective centrality or the quality, so each candidate resolves in closed
/// form; the candidate is accepted when both firms' optimality conditions hold
/// within `tol`. The lexicographically smallest accepted (k, l) is returned.
inline NashOutcome solve_nash(const CentralityVector& v, const ModelParams& p, const BudgetSpec& budget,
                              double tol = kConditionTolerance) {
    p.validate();
    budget.validate(p);
    const std::size_t n = v.size();
    const double lambda = p.lambda(n);
    const double ratio = budget.c_s / budget.c_q;
    const auto fa = budget.firm_a();
    const auto fb = budget.firm_b();
    const auto cand_a = detail::firm_candidates(v, p, fa);
    const auto cand_b = detail::firm_candidates(v, p, fb);

    std::optional<NashOutcome> best;
    std::size_t accepted = 0;
    for (const auto& ca : cand_a) {
        for (const auto& cb : cand_b) {
            double qa = 0.0;
            double qb = 0.0;
            if (!ca.quality_fixed && !cb.quality_fixed) {
                const double s = ca.value + cb.value;
                qa = 2.0 * lambda * ratio * cb.value / (s * s);
                qb = 2.0 * lambda * ratio * ca.value / (s * s);
            } else if (!ca.quality_fixed) {
                qb = cb.value;
                qa = std::sqrt(2.0 * lambda * ratio * qb / ca.value) - qb;
            } else if (!cb.quality_fixed) {
                qa = ca.value;
                qb = std::sqrt(2.0 * lambda * ratio * qa / cb.value) - qa;
            } else {
                qa = ca.value;
                qb = cb.value;
            }
            if (!(qa > 0.0) || !(qb > 0.0)) continue;
            const double psi_a = detail::indifference_centrality(lambda, fa, qa, qb);
            const double psi_b = detail::indifference_centrality(lambda, fb, qb, qa);
            if (!detail::firm_conditions_hold(ca, v, p, fa, qa, psi_a, tol)) continue;
            if (!detail::firm_conditions_hold(cb, v, p, fb, qb, psi_b, tol)) continue;
            ++accepted;
            if (best) {
                if (std::abs(best->a.quality - qa) > 1e-6 || std::abs(best->b.quality - qb) > 1e-6)
                    throw solver_error("conflicting equilibrium candidates at (k, l) = (" + std::to_string(ca.k) +
                                       ", " + std::to_string(cb.k) + ")");
                continue;
            }
            NashOutcome out = detail::assemble_outcome(v, p, budget, qa, qb);
            out.k = ca.k;
            out.l = cb.k;
            out.case_a = ca.tag;
            out.case_b = cb.tag;
            out.v_tilde_k = ca.quality_fixed ? psi_a : ca.value;
            out.v_tilde_l = cb.quality_fixed ? psi_b : cb.value;
            best = std::move(out);
        }
    }
    if (!best) throw solver_error("no equilibrium candidate satisfies the optimality conditions");
    best->accepted_candidates = accepted;
    return *best;
}

inline NashOutcome solve_nash(const SocialGraph& g, const ModelParams& p, const BudgetSpec& budget) {
    return solve_nash(centrality(g, p), p, budget);
}

/// Symmetric-game solution against a nonincreasing centrality sequence.
struct SymmetricSolution {
    std::size_t l = 1;
    double v_tilde = 0.0;
    double quality = 0.0;
    double marginal_seeding = 0.0; // seeding of the l-th agent
    double seeding_total = 0.0;
    SeedingCase tag = SeedingCase::interior;
};

/// Finds the unique level l and effective centrality for equal budgets:
/// S_l = K/c_s - (l-1)/2 - lambda/(2 v~) must lie in [0, 1/2) with v~ = v_l
/// when S_l > 0, v~ in [v_l, v_{l-1}] when S_l = 0, v~ <= v_n at saturation.
/// `sorted` must be nonincreasing; it need not come from a single graph.
inline SymmetricSolution solve_symmetric_levels(std::span<const double> sorted, double lambda, const FirmBudget& b,
                                                double epsilon, double tol = kConditionTolerance) {
    const std::size_t n = sorted.size();
    if (n == 0) throw invalid_input("empty centrality sequence");
    const double budget_units = b.K / b.c_s;
    const double ratio = b.c_s / b.c_q;
    const auto at = [&](std::size_t l) {
        return l == 0 ? std::numeric_limits<double>::infinity() : sorted[l - 1];
    };
    const auto finish = [&](std::size_t l, double v_tilde, double quality, SeedingCase tag) {
        SymmetricSolution s;
        s.l = l;
        s.v_tilde = v_tilde;
        s.quality = quality;
        s.tag = tag;
        s.seeding_total = std::clamp((b.K - b.c_q * quality) / b.c_s, 0.0, 0.5 * static_cast<double>(n));
        s.marginal_seeding = std::clamp(s.seeding_total - 0.5 * static_cast<double>(l - 1), 0.0, 0.5);
        return s;
    };

    for (std::size_t l = 1; l <= n; ++l) {
        const double filled = 0.5 * static_cast<double>(l - 1);
        {
            const double vt = at(l);
            const double S = budget_units - filled - lambda / (2.0 * vt);
            const double q = 0.5 * lambda * ratio / vt;
            if (S >= -tol && S < 0.5 + tol && q >= epsilon - tol) return finish(l, vt, q, SeedingCase::interior);
        }
        if (budget_units - filled > 0.0) {
            const double vt = lambda / (2.0 * (budget_units - filled));
            const double q = b.quality_for(filled);
            if (vt >= at(l) - tol && vt <= at(l - 1) + tol && q >= epsilon - tol)
                return finish(l, vt, q, SeedingCase::boundary_zero);
        }
        if (l == n) {
            const double q = b.quality_for(0.5 * static_cast<double>(n));
            if (q >= epsilon - tol && q > 0.0) {
                const double vt = 0.5 * lambda * ratio / q;
                if (vt <= at(n) + tol) return finish(n, vt, q, SeedingCase::saturated);
            }
        }
    }
    // Quality pinned at epsilon: seeding takes everything else.
    const double amount = std::clamp(b.seeding_amount(epsilon), 0.0, 0.5 * static_cast<double>(n));
    const double vt = 0.5 * lambda * ratio / epsilon;
    const auto last = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(2.0 * amount - kTieTolerance)), 1, n);
    if (amount <= tol || vt <= at(last) + tol) {
        const auto l = std::min<std::size_t>(static_cast<std::size_t>(std::floor(2.0 * amount + kTieTolerance)) + 1, n);
        return finish(l, vt, epsilon, SeedingCase::quality_floor);
    }
    throw solver_error("no level satisfies the symmetric equilibrium conditions");
}

/// Symmetric equilibrium (K_a = K_b = K) on a graph.
inline NashOutcome symmetric_nash(const CentralityVector& v, const ModelParams& p, double K, double c_s, double c_q) {
    p.validate();
    const FirmBudget b{K, c_s, c_q};
    b.validate(p);
    const auto sorted = v.sorted();
    const auto s = solve_symmetric_levels(sorted, p.lambda(v.size()), b, p.epsilon);
    NashOutcome out = detail::assemble_outcome(v, p, {K, K, c_s, c_q}, s.quality, s.quality);
    out.k = out.l = s.l;
    out.v_tilde_k = out.v_tilde_l = s.v_tilde;
    out.case_a = out.case_b = s.tag;
    return out;
}

inline NashOutcome symmetric_nash(const SocialGraph& g, const ModelParams& p, double K, double c_s, double c_q) {
    return symmetric_nash(centrality(g, p), p, K, c_s, c_q);
}

struct IterativeOptions {
    std::size_t max_iterations = 20000;
    double tolerance = 1e-10;
    /// Starts must converge to qualities within this distance of each other.
    double agreement = 1e-6;
};

/// Rebuilds the full outcome (marginal indices, cases, effective centralities)
/// from a pair of equilibrium qualities.
inline NashOutcome outcome_from_qualities(const CentralityVector& v, const ModelParams& p, const BudgetSpec& budget,
                                          double q_a, double q_b, double tol = 1e-7) {
    const std::size_t n = v.size();
    const double lambda = p.lambda(n);
    NashOutcome out = detail::assemble_outcome(v, p, budget, q_a, q_b);
    const auto classify = [&](const FirmBudget& b, double q, double q_opp, std::size_t& k, double& vt,
                              SeedingCase& tag) {
        const double amount = detail::clamp_amount(b.seeding_amount(q), n);
        const double psi = detail::indifference_centrality(lambda, b, q, q_opp);
        const double twice = 2.0 * amount;
        const double nearest = std::round(twice);
        if (q <= p.epsilon + tol && amount > tol) {
            tag = SeedingCase::quality_floor;
            k = std::min<std::size_t>(static_cast<std::size_t>(std::floor(twice + tol)) + 1, n);
            vt = psi;
        } else if (amount >= 0.5 * static_cast<double>(n) - tol) {
            tag = SeedingCase::saturated;
            k = n;
            vt = psi;
        } else if (std::abs(twice - nearest) <= tol) {
            tag = SeedingCase::boundary_zero;
            k = static_cast<std::size_t>(nearest) + 1;
            vt = psi;
        } else {
            tag = SeedingCase::interior;
            k = static_cast<std::size_t>(std::floor(twice)) + 1;
            vt = v.ranked(k);
        }
    };
    classify(budget.firm_a(), q_a, q_b, out.k, out.v_tilde_k, out.case_a);
    classify(budget.firm_b(), q_b, q_a, out.l, out.v_tilde_l, out.case_b);
    return out;
}

/// Alternating best responses from the 3x3 grid of starting qualities
/// {epsilon, K/(2 c_q), K/c_q}. Each sweep is relaxed by a factor that halves
/// whenever the step length stops shrinking, which tames the oscillation that
/// undamped alternation shows when the qualities are far apart.
inline NashOutcome solve_nash_iterative(const CentralityVector& v, const ModelParams& p, const BudgetSpec& budget,
                                        const IterativeOptions& opts = {}) {
    p.validate();
    budget.validate(p);
    const auto fa = budget.firm_a();
    const auto fb = budget.firm_b();
    const std::array<double, 3> starts_a{p.epsilon, fa.K / (2.0 * fa.c_q), fa.K / fa.c_q};
    const std::array<double, 3> starts_b{p.epsilon, fb.K / (2.0 * fb.c_q), fb.K / fb.c_q};

    std::optional<std::array<double, 2>> agreed;
    for (double sa : starts_a) {
        for (double sb : starts_b) {
            double qa = std::max(sa, p.epsilon);
            double qb = std::max(sb, p.epsilon);
            double relax = 1.0;
            double last_step = std::numeric_limits<double>::infinity();
            bool converged = false;
            for (std::size_t it = 0; it < opts.max_iterations; ++it) {
                const double next_a =
                    std::max(p.epsilon, qa + relax * (best_response_quality(v, p, fa, qb).quality - qa));
                const double next_b =
                    std::max(p.epsilon, qb + relax * (best_response_quality(v, p, fb, next_a).quality - qb));
                const double step_len = std::max(std::abs(next_a - qa), std::abs(next_b - qb));
                qa = next_a;
                qb = next_b;
                if (step_len < opts.tolerance) {
                    converged = true;
                    break;
                }
                if (step_len >= last_step && relax > 1.0 / 1024.0) relax *= 0.5;
                last_step = step_len;
            }
            if (!converged)
                throw solver_error("best-response iteration did not converge within " +
                                   std::to_string(opts.max_iterations) + " sweeps");
            if (!agreed) {
                agreed = std::array<double, 2>{qa, qb};
            } else if (std::abs((*agreed)[0] - qa) > opts.agreement || std::abs((*agreed)[1] - qb) > opts.agreement) {
                throw solver_error("best-response iteration reached different fixed points from different starts");
            }
        }
    }
    return outcome_from_qualities(v, p, budget, (*agreed)[0], (*agreed)[1]);
}

inline NashOutcome solve_nash_iterative(const SocialGraph& g, const ModelParams& p, const BudgetSpec& budget,
                                        const IterativeOptions& opts = {}) {
    return solve_nash_iterative(centrality(g, p), p, budget, opts);
}

} // namespace netgame
