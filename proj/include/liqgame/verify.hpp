#pragma once

#include <cstdint>
#include <vector>

#include "liqgame/grid.hpp"
#include "liqgame/model.hpp"

namespace liq {
namespace verify {

/// Per-player trading-rate paths on a common grid (values at the nodes).
struct StrategyProfile {
    TimeGrid grid;
    std::vector<std::vector<double>> xi;  // [player][node]

    void validate() const;
};

/// States produced by integrating the impact dynamics under a profile.
struct StatePaths {
    std::vector<std::vector<double>> X, Y, C;  // [player][node]
};

/// Cost J split into its terms; J reconstructs from the terms to 1e-9
/// relative. lemma_gap is the difference between the direct quadrature and
/// the rewritten form int X <Theta, -A S + B chi + R> + eta xi^2 + lambda X^2
/// (meaningful when the terminal position is ~0).
struct CostReport {
    double J = 0.0;
    double instantaneous = 0.0;  // int eta xi^2
    double transient = 0.0;      // int xi Y
    double risk = 0.0;           // int lambda X^2
    double terminal = 0.0;       // n X_T^2
    double lemma_gap = 0.0;
};

/// Integrates the (Y, C) dynamics driven by the aggregate (xi_bar, X_bar)
/// and the constant forcing, with X reconstructed from -xi. Exponential
/// stepping with locally-cubic driver interpolation, exact for polynomial
/// drivers up to degree 3.
StatePaths simulate_states(const StrategyProfile& profile,
                           const std::vector<SystemBlocks>& blocks,
                           const std::vector<double>& initial_positions);

/// Trapezoidal cost quadrature plus the terminal penalty; also evaluates the
/// rewritten (integrated-by-parts) form and reports the difference.
std::vector<CostReport> cost(const StrategyProfile& profile, const StatePaths& states,
                             const std::vector<PlayerParams>& params,
                             const std::vector<SystemBlocks>& blocks, const Penalty& penalty);

struct DecompositionReport {
    double lhs = 0.0;   // J^i(candidate, equilibrium others) - J^i(equilibrium)
    double rhs = 0.0;   // quadratic round-trip form
    double gap = 0.0;   // lhs - rhs
};

/// Evaluates both sides of the round-trip cost decomposition for player i
/// deviating to `candidate` while the others keep their equilibrium rates.
/// Requires the candidate to terminate within strict_tol of the equilibrium
/// terminal position.
DecompositionReport decomposition_check(const StrategyProfile& equilibrium,
                                        const std::vector<PlayerParams>& params,
                                        const std::vector<SystemBlocks>& blocks,
                                        const std::vector<double>& initial_positions,
                                        const Penalty& penalty,
                                        const std::vector<double>& candidate, std::size_t player);

struct DeviationTrial {
    std::size_t trial = 0;
    std::size_t player = 0;
    double gap = 0.0;        // cost increase of the deviation (>= 0 at a Nash point)
    double amplitude = 0.0;  // sup-norm bound of the bump
    double identity_gap = 0.0;
};

struct DeviationReport {
    std::vector<DeviationTrial> trials;
    double min_gap = 0.0;
    std::size_t worst_trial = 0;
    bool stronger_condition_holds = false;
};

/// Samples random zero-integral Fourier bumps (first `modes` sine modes,
/// amplitudes <= max_amplitude) around each player's equilibrium rate and
/// evaluates the cost gap of every deviation.
DeviationReport nash_deviation_test(const StrategyProfile& equilibrium,
                                    const std::vector<PlayerParams>& params,
                                    const std::vector<SystemBlocks>& blocks,
                                    const std::vector<double>& initial_positions,
                                    const Penalty& penalty, std::size_t num_trials,
                                    std::uint64_t seed, int modes = 8,
                                    double max_amplitude = 1.0);

/// The bump family used by nash_deviation_test, exposed for tests.
std::vector<double> fourier_bump(const TimeGrid& grid, const std::vector<double>& coefficients);

}  // namespace verify
}  // namespace liq
