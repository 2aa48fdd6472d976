#include "liqgame/hawkes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "liqgame/rng.hpp"

namespace liq {
namespace hawkes {

void HawkesParams::validate() const {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw InvalidArgument("HawkesParams: mu must be nonnegative");
    if (!(alpha >= 0.0)) throw InvalidArgument("HawkesParams: alpha must be nonnegative");
    if (!(beta > alpha)) {
        std::ostringstream os;
        os << "HawkesParams: stability requires beta > alpha (got beta=" << beta
           << ", alpha=" << alpha << ")";
        throw InvalidArgument(os.str());
    }
}

EventStream simulate(const HawkesParams& params, std::span<const double> trader_rate,
                     const TimeGrid& grid, std::uint64_t seed, std::uint64_t stream) {
    params.validate();
    if (trader_rate.size() != grid.steps)
        throw InvalidArgument("simulate: trader rate must have one value per grid interval");

    CounterRng rng(seed, stream);
    EventStream out;
    const double T = grid.horizon;
    double t = 0.0;
    double exc_sell = 0.0, exc_buy = 0.0;  // sum of e^{-beta(t-s)} over own past events
    std::size_t k = 0;

    while (k < grid.steps) {
        const double xi = trader_rate[k];
        const double xi_pos = std::max(xi, 0.0);
        const double xi_neg = std::max(-xi, 0.0);
        const double te = grid.node(k + 1);

        // Intensities only decay between events, so the current value bounds
        // them on [t, te).
        const double bound_sell = params.mu + xi_pos + params.alpha * exc_sell;
        const double bound_buy = params.mu + xi_neg + params.alpha * exc_buy;
        const double bound = bound_sell + bound_buy;
        if (bound > 1e12)
            throw NumericFailure("hawkes::simulate: intensity overflow, bound exceeds 1e12");
        if (bound <= 0.0) {
            t = te;
            ++k;
            continue;
        }

        const double dt = rng.exponential(bound);
        if (t + dt >= te) {
            const double decay = std::exp(-params.beta * (te - t));
            exc_sell *= decay;
            exc_buy *= decay;
            t = te;
            ++k;
            continue;
        }

        t += dt;
        const double decay = std::exp(-params.beta * dt);
        exc_sell *= decay;
        exc_buy *= decay;
        const double lam_sell = params.mu + xi_pos + params.alpha * exc_sell;
        const double lam_buy = params.mu + xi_neg + params.alpha * exc_buy;
        const double u = rng.uniform01() * bound;
        if (u < lam_sell) {
            out.sell_times.push_back(t);
            exc_sell += 1.0;
        } else if (u < lam_sell + lam_buy) {
            out.buy_times.push_back(t);
            exc_buy += 1.0;
        }
        // otherwise thinning rejection
    }
    (void)T;
    return out;
}

FlowPath expected_child_flow(double alpha, double beta, std::span<const double> traded_volume,
                             const TimeGrid& grid) {
    if (!(beta > alpha) || !(alpha >= 0.0))
        throw InvalidArgument("expected_child_flow: need beta > alpha >= 0");
    if (traded_volume.size() != grid.num_nodes())
        throw InvalidArgument("expected_child_flow: volume path must live on the grid nodes");

    const double b = beta - alpha;
    const double dt = grid.dt();
    const double e = std::exp(-b * dt);
    const double phi1 = (1.0 - e) / b;        // int_0^dt e^{-b(dt-s)} ds
    const double phi2 = (dt - phi1) / b;      // int_0^dt e^{-b(dt-s)} s ds

    FlowPath out;
    out.grid = grid;
    out.C.assign(grid.num_nodes(), 0.0);
    out.Zbar.assign(grid.num_nodes(), 0.0);
    out.Zbar[0] = traded_volume[0];
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double slope = (traded_volume[k + 1] - traded_volume[k]) / dt;
        out.C[k + 1] = e * out.C[k] + alpha * (traded_volume[k] * phi1 + slope * phi2);
        out.Zbar[k + 1] = traded_volume[k + 1] + out.C[k + 1];
    }
    return out;
}

FlowPath net_flow_fixedpoint(const HawkesParams& params, std::span<const double> mean_rate,
                             const TimeGrid& grid) {
    params.validate();
    if (mean_rate.size() != grid.steps)
        throw InvalidArgument("net_flow_fixedpoint: rate must have one value per interval");

    // State (Zbar, I) with I = int mean_rate:
    //   Zbar' = -(beta-alpha) Zbar + beta I + xi,  I' = xi.
    Mat gen(2, 2);
    gen << -(params.beta - params.alpha), params.beta, 0.0, 0.0;
    const auto [e, j] = matops::expm_with_integral(gen, grid.dt());

    FlowPath out;
    out.grid = grid;
    out.C.assign(grid.num_nodes(), 0.0);
    out.Zbar.assign(grid.num_nodes(), 0.0);
    Vec2 y(0.0, 0.0);
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const Vec2 drive(mean_rate[k], mean_rate[k]);
        y = e * y + j * drive;
        out.Zbar[k + 1] = y(0);
        out.C[k + 1] = y(0) - y(1);
    }
    return out;
}

std::vector<double> excitation_integral(const EventStream& stream, double alpha, double beta,
                                        const TimeGrid& grid) {
    // int_0^t alpha e^{-beta(s-r)} ds from an event at r contributes
    // (alpha/beta)(1 - e^{-beta(t-r)}); accumulate per side with decayed sums.
    std::vector<double> out(grid.num_nodes(), 0.0);
    auto accumulate = [&](const std::vector<double>& times, double sign) {
        std::size_t next = 0;
        double decayed = 0.0;
        double count = 0.0;
        double t_prev = 0.0;
        for (std::size_t k = 1; k < grid.num_nodes(); ++k) {
            const double t = grid.node(k);
            while (next < times.size() && times[next] <= t) {
                decayed *= std::exp(-beta * (times[next] - t_prev));
                decayed += 1.0;
                count += 1.0;
                t_prev = times[next];
                ++next;
            }
            decayed *= std::exp(-beta * (t - t_prev));
            t_prev = t;
            out[k] += sign * (alpha / beta) * (count - decayed);
        }
    };
    accumulate(stream.sell_times, +1.0);
    accumulate(stream.buy_times, -1.0);
    return out;
}

}  // namespace hawkes
}  // namespace liq
