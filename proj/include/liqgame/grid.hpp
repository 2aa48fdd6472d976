#pragma once

#include <cstddef>

#include "liqgame/errors.hpp"

namespace liq {

/// Uniform grid on [0, T] with nodes t_k = k*T/M, k = 0..M.
struct TimeGrid {
    double horizon = 0.0;
    std::size_t steps = 0;

    TimeGrid() = default;
    TimeGrid(double T, std::size_t M) : horizon(T), steps(M) {
        if (!(T > 0.0)) throw InvalidArgument("TimeGrid: horizon must be positive");
        if (M < 2) throw InvalidArgument("TimeGrid: need at least 2 steps");
    }

    double dt() const { return horizon / static_cast<double>(steps); }
    std::size_t num_nodes() const { return steps + 1; }
    double node(std::size_t k) const { return horizon * static_cast<double>(k) / static_cast<double>(steps); }

    bool operator==(const TimeGrid& o) const {
        return horizon == o.horizon && steps == o.steps;
    }
};

}  // namespace liq
