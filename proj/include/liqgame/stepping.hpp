#pragma once

#include <array>
#include <cstddef>

#include "liqgame/matops.hpp"

namespace liq {

/// Exact exponential stepping for y' = F y + d(t) on a uniform grid with
/// constant F. The step is exact whenever the driver is a polynomial of
/// degree <= 3 on the interval; node-sampled smooth drivers are interpolated
/// by a local cubic, giving O(dt^4) accuracy. The moment responses
/// int_0^dt e^{F(dt-s)} s^m ds are precomputed once through a Van Loan block
/// exponential.
class LinearStepper {
  public:
    LinearStepper(const Mat& f, double dt);

    const Mat& propagator() const { return e_; }
    double dt() const { return dt_; }

    /// Advances from node k to k+1; driver_nodes is dim x (M+1), one column
    /// per grid node. Cubic interpolation through the 4 nearest nodes.
    Vec step(const Vec& y, const Mat& driver_nodes, std::size_t k) const;

    /// Advances one step with an interval-constant driver.
    Vec step_const(const Vec& y, const Vec& d) const;

    /// Advances one step with a driver linear on the interval (values at the
    /// two endpoints); exact for piecewise-linear drivers.
    Vec step_linear(const Vec& y, const Vec& d_left, const Vec& d_right) const;

  private:
    Mat e_;
    std::array<Mat, 4> r_;  // responses to u^m, u = s/dt
    double dt_ = 0.0;
    Eigen::Index dim_ = 0;
};

/// Solution of the scalar Riccati a' = a^2/(2 eta) - 2 lambda with terminal
/// value a(T) = 2n; n = +infinity encodes the strict-liquidation boundary.
/// Used both for the idiosyncratic coefficient (closed coth form) and for the
/// weighted integrating-factor steps of the fixed-point solver.
class RiccatiWeight {
  public:
    RiccatiWeight(double eta, double lambda, double horizon, double terminal_n);

    /// a(t); +infinity at t == T in the strict case.
    double value(double t) const;

    /// e^{-int_r^t a/(2 eta) ds} for r <= t (overflow-safe via log forms).
    double weight(double r, double t) const;

    double horizon() const { return T_; }

  private:
    double log_scale(double t) const;  // log of the decreasing positive integral kernel

    enum class Branch { Coth, Tanh, Const, RationalZeroLambda, Zero };
    Branch branch_ = Branch::Zero;
    double eta_, lambda_, T_;
    double u_ = 0.0;  // sqrt(lambda/eta)
    double s_ = 0.0;  // sqrt(eta lambda)
    double c_ = 0.0;  // terminal offset
    double eps_ = 0.0;  // eta/n for the lambda = 0 branch
};

/// 4-point Gauss-Legendre nodes and weights on [0, 1].
struct Gauss4 {
    static constexpr std::array<double, 4> nodes = {
        0.06943184420297371, 0.33000947820757187, 0.6699905217924281, 0.9305681557970262};
    static constexpr std::array<double, 4> weights = {
        0.17392742256872692, 0.3260725774312731, 0.3260725774312731, 0.17392742256872692};
};

}  // namespace liq
