#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "liqgame/grid.hpp"
#include "liqgame/matops.hpp"

namespace liq {
namespace hawkes {

struct HawkesParams {
    double mu = 1.0;     // base intensity
    double alpha = 0.0;  // excitation jump per event
    double beta = 1.0;   // exponential decay rate

    void validate() const;
};

/// Sell/buy order arrival times, strictly increasing within [0, T].
struct EventStream {
    std::vector<double> sell_times;
    std::vector<double> buy_times;
};

/// Expected net child-order count C and expected net sell-order count Zbar
/// on a grid; both start at zero.
struct FlowPath {
    TimeGrid grid;
    std::vector<double> C;
    std::vector<double> Zbar;
};

/// Ogata thinning with sell intensity mu + xi^+(t) + alpha * sum e^{-beta(t-s)}
/// over past sell events (buys symmetric with xi^-). The trader rate is
/// piecewise constant per grid interval (size grid.steps); identical
/// (seed, stream) pairs give identical streams.
EventStream simulate(const HawkesParams& params, std::span<const double> trader_rate,
                     const TimeGrid& grid, std::uint64_t seed, std::uint64_t stream = 0);

/// Integrates dC = (-(beta-alpha) C + alpha v) dt, C(0) = 0, by exact
/// exponential stepping; v is the traded-volume path at the grid nodes
/// (piecewise linear). Zbar is filled as v + C.
FlowPath expected_child_flow(double alpha, double beta, std::span<const double> traded_volume,
                             const TimeGrid& grid);

/// Solves the renewal equation Zbar_t = int_0^t mean_rate + alpha int_0^t
/// e^{-beta(t-s)} Zbar_s ds by exponential stepping of the equivalent linear
/// system; mean_rate is piecewise constant per interval (size grid.steps).
/// C = Zbar - int mean_rate.
FlowPath net_flow_fixedpoint(const HawkesParams& params, std::span<const double> mean_rate,
                             const TimeGrid& grid);

/// Pathwise cumulative excitation integral int_0^{t_k} alpha * sum_events
/// +-e^{-beta(s-r)} ds (sells +, buys -), evaluated exactly at the grid
/// nodes. Monte Carlo averages of this path estimate the expected net
/// child-order count.
std::vector<double> excitation_integral(const EventStream& stream, double alpha, double beta,
                                        const TimeGrid& grid);

}  // namespace hawkes
}  // namespace liq
