#pragma once

#include <cstddef>
#include <vector>

#include "liqgame/matops.hpp"

namespace liq {

/// Per-player cost and impact coefficients. eta is the instantaneous-impact
/// cost, lambda the risk aversion, rho the order-book resilience rate,
/// (alpha, beta) the excitation jump and decay of the order flow, gamma the
/// transient-impact factor.
struct PlayerParams {
    double eta = 0.1;
    double lambda = 0.3;
    double rho = 0.2;
    double alpha = 0.0;
    double beta = 1.1;
    double gamma = 1.0;

    /// Throws InvalidArgument on violated invariants (eta > 0, beta > alpha >= 0,
    /// lambda, rho, gamma >= 0, all finite).
    void validate() const;
};

/// Terminal-penalty setting: a finite weight n, or strict liquidation which
/// is resolved as a large penalty (kStrictPenalty) with a terminal tolerance.
struct Penalty {
    double n = 0.0;
    bool strict = false;

    static constexpr double kStrictPenalty = 1e8;
    static constexpr double kStrictTol = 1e-4;

    double effective() const { return strict ? kStrictPenalty : n; }
    static Penalty strict_mode() { return Penalty{kStrictPenalty, true}; }
    static Penalty weight(double n) { return Penalty{n, false}; }
};

struct MarketSetup {
    std::size_t num_players = 1;
    double horizon = 5.0;
    Penalty penalty;
    std::vector<double> initial_positions;  // one per player
    double population_mean = 0.0;           // mean-field initial mean (MFG only)

    void validate() const;
};

/// The 2x2 / 2x3 blocks of the forward-backward system for one player:
/// impact-state matrix A, drive columns B = (B1, B2), aggregate coupling K
/// (columns ordered as the aggregate (xi_bar, E[X_bar], E[xi_bar])), constant
/// R0, and the fixed selector Theta = (1, 0)^T.
struct SystemBlocks {
    Mat A;       // 2x2
    Vec2 B1;     // own-rate drive
    Vec2 B2;     // mean-position drive
    Mat K;       // 2x3
    Vec2 R0;     // constant forcing
    Vec2 Bhat1;  // feedback column entering the best-response rate (zero in the MFG)
    Vec2 Bhat2;  // feedback column entering the adjoint drift (zero in the MFG)

    static Vec2 theta() { return Vec2(1.0, 0.0); }
};

/// Outcome of the weak-interaction admissibility checks. Slacks are the
/// left-hand sides of the respective inequalities at the best constants
/// found; positive slack means the inequality holds.
struct ConditionReport {
    bool stable = false;  // beta > alpha for every player
    double rho_hat = 0.0;
    double rho_tilde = 0.0;
    double theta[4] = {0, 0, 0, 0};  // theta_0..theta_3 at the best grid point
    double b = 1.0;                  // regularity exponent, 1 for constant eta
    double ass1_slack[2] = {0, 0};
    double stronger_slack[2] = {0, 0};
    bool holds_assumption_iii = false;
    bool holds_stronger = false;
};

enum class GameKind { NPlayer, MeanField };

/// Grid specification for the theta-constant search (log-uniform).
struct ThetaSearch {
    double lo = 1e-3;
    double hi = 1e3;
    int points_per_axis = 25;
};

/// Blocks of the N-player system: A = [[rho, gamma(beta-alpha)], [0, beta-alpha]],
/// B1 = (gamma, 0), B2 = (-alpha gamma, -alpha), K = (B1, B2, 0),
/// R0 = ((alpha gamma / N) sum_j x_j, (alpha / N) sum_j x_j).
std::vector<SystemBlocks> assemble_nplayer_blocks(const std::vector<PlayerParams>& params,
                                                  const MarketSetup& setup);

/// Blocks of the mean-field system: same A, B but K = (0, B2, B1) and
/// R0 = (alpha gamma E[X0], alpha E[X0]); the feedback columns are zero.
SystemBlocks assemble_mfg_blocks(const PlayerParams& params, double mean_x0);

/// Minimum eigenvalue of (A + A^T)/2:
/// (rho + beta - alpha - sqrt((rho+beta-alpha)^2 - 4 rho (beta-alpha)
///  + gamma^2 (beta-alpha)^2)) / 2.
/// Requires 4 rho > gamma^2 (beta - alpha) so the margin is positive.
double rho_hat(const PlayerParams& params);

/// Minimum eigenvalue of the symmetrized A^T + Theta B1^T / (2 N eta).
double rho_tilde(const PlayerParams& params, std::size_t num_players);

/// Evaluates the weak-interaction inequalities over a theta grid and reports
/// the best slacks, with theta = ||Bhat1|| / (N rho_tilde) fixed as in the
/// contraction argument.
ConditionReport check_weak_interaction(const std::vector<PlayerParams>& params,
                                       std::size_t num_players, GameKind kind,
                                       const ThetaSearch& search = {});

}  // namespace liq
