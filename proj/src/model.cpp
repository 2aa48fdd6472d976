#include "liqgame/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace liq {

void PlayerParams::validate() const {
    const double all[] = {eta, lambda, rho, alpha, beta, gamma};
    for (double v : all)
        if (!std::isfinite(v)) throw InvalidArgument("PlayerParams: non-finite value");
    if (!(eta > 0.0)) throw InvalidArgument("PlayerParams: eta must be positive");
    if (!(alpha >= 0.0)) throw InvalidArgument("PlayerParams: alpha must be nonnegative");
    if (!(beta > alpha)) {
        std::ostringstream os;
        os << "PlayerParams: stability requires beta > alpha (got beta=" << beta
           << ", alpha=" << alpha << ")";
        throw InvalidArgument(os.str());
    }
    if (!(lambda >= 0.0)) throw InvalidArgument("PlayerParams: lambda must be nonnegative");
    if (!(rho >= 0.0)) throw InvalidArgument("PlayerParams: rho must be nonnegative");
    if (!(gamma >= 0.0)) throw InvalidArgument("PlayerParams: gamma must be nonnegative");
}

void MarketSetup::validate() const {
    if (num_players < 1) throw InvalidArgument("MarketSetup: need at least one player");
    if (!(horizon > 0.0)) throw InvalidArgument("MarketSetup: horizon must be positive");
    if (!(penalty.n >= 0.0)) throw InvalidArgument("MarketSetup: penalty must be nonnegative");
    if (!initial_positions.empty() && initial_positions.size() != num_players)
        throw InvalidArgument("MarketSetup: one initial position per player required");
    for (double x : initial_positions)
        if (!std::isfinite(x)) throw InvalidArgument("MarketSetup: non-finite initial position");
}

namespace {

Mat impact_matrix(const PlayerParams& p) {
    const double b = p.beta - p.alpha;
    Mat a(2, 2);
    a << p.rho, p.gamma * b, 0.0, b;
    return a;
}

}  // namespace

std::vector<SystemBlocks> assemble_nplayer_blocks(const std::vector<PlayerParams>& params,
                                                  const MarketSetup& setup) {
    setup.validate();
    if (params.size() != setup.num_players)
        throw InvalidArgument("assemble_nplayer_blocks: one parameter set per player required");
    const double n = static_cast<double>(setup.num_players);
    const double sum_x0 =
        std::accumulate(setup.initial_positions.begin(), setup.initial_positions.end(), 0.0);

    std::vector<SystemBlocks> out;
    out.reserve(params.size());
    for (const auto& p : params) {
        p.validate();
        SystemBlocks blk;
        blk.A = impact_matrix(p);
        blk.B1 = Vec2(p.gamma, 0.0);
        blk.B2 = Vec2(-p.alpha * p.gamma, -p.alpha);
        blk.K = Mat::Zero(2, 3);
        blk.K.col(0) = blk.B1;
        blk.K.col(1) = blk.B2;
        blk.R0 = Vec2(p.alpha * p.gamma * sum_x0 / n, p.alpha * sum_x0 / n);
        blk.Bhat1 = blk.B1;
        blk.Bhat2 = blk.B2;
        out.push_back(std::move(blk));
    }
    return out;
}

SystemBlocks assemble_mfg_blocks(const PlayerParams& p, double mean_x0) {
    p.validate();
    if (!std::isfinite(mean_x0)) throw InvalidArgument("assemble_mfg_blocks: non-finite mean");
    SystemBlocks blk;
    blk.A = impact_matrix(p);
    blk.B1 = Vec2(p.gamma, 0.0);
    blk.B2 = Vec2(-p.alpha * p.gamma, -p.alpha);
    blk.K = Mat::Zero(2, 3);
    blk.K.col(1) = blk.B2;
    blk.K.col(2) = blk.B1;
    blk.R0 = Vec2(p.alpha * p.gamma * mean_x0, p.alpha * mean_x0);
    blk.Bhat1.setZero();
    blk.Bhat2.setZero();
    return blk;
}

double rho_hat(const PlayerParams& p) {
    p.validate();
    const double b = p.beta - p.alpha;
    if (!(4.0 * p.rho > p.gamma * p.gamma * b)) {
        std::ostringstream os;
        os << "rho_hat: positivity condition 4*rho > gamma^2*(beta-alpha) violated "
           << "(4*rho=" << 4.0 * p.rho << ", gamma^2*(beta-alpha)=" << p.gamma * p.gamma * b
           << ")";
        throw InvalidArgument(os.str());
    }
    const double tr = p.rho + b;
    const double disc = tr * tr - 4.0 * p.rho * b + p.gamma * p.gamma * b * b;
    if (disc < 0.0) throw InvalidArgument("rho_hat: negative discriminant");
    return 0.5 * (tr - std::sqrt(disc));
}

double rho_tilde(const PlayerParams& p, std::size_t num_players) {
    p.validate();
    const double b = p.beta - p.alpha;
    const double n = static_cast<double>(num_players);
    // Symmetric part of A^T + Theta * B1^T / (2 N eta).
    const double a00 = p.rho + p.gamma / (2.0 * n * p.eta);
    const double a11 = b;
    const double off = 0.5 * p.gamma * b;
    const double tr = a00 + a11;
    const double disc = (a00 - a11) * (a00 - a11) + 4.0 * off * off;
    return 0.5 * (tr - std::sqrt(disc));
}

ConditionReport check_weak_interaction(const std::vector<PlayerParams>& params,
                                       std::size_t num_players, GameKind kind,
                                       const ThetaSearch& search) {
    if (params.empty()) throw InvalidArgument("check_weak_interaction: no parameters");
    ConditionReport rep;
    rep.stable = std::all_of(params.begin(), params.end(),
                             [](const PlayerParams& p) { return p.beta > p.alpha; });
    if (!rep.stable) return rep;

    const double n = static_cast<double>(num_players);
    double norm_a = 0.0, norm_b1 = 0.0, norm_b2 = 0.0;
    double norm_k1 = 0.0, norm_k2 = 0.0, norm_k3 = 0.0;
    double lambda_min = std::numeric_limits<double>::infinity();
    double eta_min = std::numeric_limits<double>::infinity();
    rep.rho_hat = std::numeric_limits<double>::infinity();
    rep.rho_tilde = std::numeric_limits<double>::infinity();

    for (const auto& p : params) {
        p.validate();
        const SystemBlocks blk = kind == GameKind::NPlayer
                                     ? assemble_nplayer_blocks({p}, MarketSetup{1, 1.0, {}, {0.0}, 0.0})[0]
                                     : assemble_mfg_blocks(p, 0.0);
        norm_a = std::max(norm_a, blk.A.norm());
        norm_b1 = std::max(norm_b1, blk.Bhat1.norm());
        norm_b2 = std::max(norm_b2, blk.Bhat2.norm());
        norm_k1 = std::max(norm_k1, blk.K.col(0).norm());
        norm_k2 = std::max(norm_k2, blk.K.col(1).norm());
        norm_k3 = std::max(norm_k3, blk.K.col(2).norm());
        lambda_min = std::min(lambda_min, p.lambda);
        eta_min = std::min(eta_min, p.eta);
        rep.rho_hat = std::min(rep.rho_hat, rho_hat(p));
        if (kind == GameKind::NPlayer)
            rep.rho_tilde = std::min(rep.rho_tilde, rho_tilde(p, num_players));
    }
    if (kind == GameKind::MeanField) rep.rho_tilde = rep.rho_hat;
    rep.b = 1.0;  // constant eta per player

    const double rho_hat2 = rep.rho_hat * rep.rho_hat;
    const double k13 = norm_k1 + norm_k3;
    // B columns of the stronger condition (independent of the game kind).
    double nb1 = 0.0, nb2 = 0.0;
    for (const auto& p : params) {
        nb1 = std::max(nb1, p.gamma);
        nb2 = std::max(nb2, p.alpha * std::sqrt(1.0 + p.gamma * p.gamma));
    }

    const int np = std::max(2, search.points_per_axis);
    const double lr = std::log(search.lo), ur = std::log(search.hi);
    auto grid = [&](int i) { return std::exp(lr + (ur - lr) * i / double(np - 1)); };

    double best_ass = -std::numeric_limits<double>::infinity();
    double best_strong = -std::numeric_limits<double>::infinity();

    // theta of the contraction bound is fixed at ||Bhat1|| / (N rho_tilde);
    // with that choice the second inequality carries -||Bhat1||/(N rho_tilde).
    const double amp = 1.0 + norm_b1 / (2.0 * n * eta_min * rep.rho_tilde);
    for (int i1 = 0; i1 < np; ++i1) {
        const double th1 = grid(i1);
        for (int i2 = 0; i2 < np; ++i2) {
            const double th2 = grid(i2);
            const double br = norm_a * norm_a / (2.0 * th1 * rho_hat2) + 0.5 / th2;
            for (int i3 = 0; i3 < np; ++i3) {
                const double th3 = grid(i3);
                const double t1 = lambda_min - 0.5 * (th1 + th2) -
                                  nb2 * nb2 / (n * n) * (1.0 + 1.0 / th3) * br;
                const double t2 = eta_min - (1.0 + th3) * nb1 * nb1 / (n * n) * br;
                if (std::min(t1, t2) > best_strong) {
                    best_strong = std::min(t1, t2);
                    rep.stronger_slack[0] = t1;
                    rep.stronger_slack[1] = t2;
                }
                const double s2_base =
                    2.0 * eta_min - (norm_b1 > 0.0 ? norm_b1 / (n * rep.rho_tilde) : 0.0) -
                    amp * amp * (1.0 + th3) * k13 * k13 * br;
                for (int i0 = 0; i0 < np; ++i0) {
                    const double th0 = grid(i0);
                    const double s2n =
                        s2_base - (norm_b2 > 0.0
                                       ? norm_b2 * norm_b2 /
                                             (2.0 * n * n * rep.rho_tilde * rep.rho_tilde * th0)
                                       : 0.0);
                    const double s1 = 2.0 * lambda_min - 0.5 * (th0 + th1 + th2) -
                                      (1.0 + 1.0 / th3) * norm_k2 * norm_k2 * br;
                    if (std::min(s1, s2n) > best_ass) {
                        best_ass = std::min(s1, s2n);
                        rep.ass1_slack[0] = s1;
                        rep.ass1_slack[1] = s2n;
                        rep.theta[0] = th0;
                        rep.theta[1] = th1;
                        rep.theta[2] = th2;
                        rep.theta[3] = th3;
                    }
                }
            }
        }
    }
    rep.holds_assumption_iii = best_ass > 0.0;
    rep.holds_stronger = best_strong >= 0.0;
    return rep;
}

}  // namespace liq
