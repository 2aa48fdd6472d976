#include "liqgame/stepping.hpp"

#include <cmath>
#include <limits>

namespace liq {

namespace {

// Inverse Vandermonde for the cubic stencil with node offsets {o, o+1, o+2, o+3}
// in units of dt; maps samples to coefficients of u^m with u = s/dt.
Eigen::Matrix4d stencil_inverse(int offset) {
    Eigen::Matrix4d v;
    for (int i = 0; i < 4; ++i) {
        const double ui = offset + i;
        double p = 1.0;
        for (int m = 0; m < 4; ++m) {
            v(i, m) = p;
            p *= ui;
        }
    }
    return v.inverse();
}

}  // namespace

LinearStepper::LinearStepper(const Mat& f, double dt) : dt_(dt), dim_(f.rows()) {
    if (f.rows() != f.cols()) throw InvalidArgument("LinearStepper: square matrix required");
    if (!(dt > 0.0)) throw InvalidArgument("LinearStepper: positive step required");

    // Van Loan chain: the (1, m+2) block of exp of the bidiagonal aug matrix
    // equals int_0^dt e^{F(dt-s)} s^m / m! ds.
    const auto n = dim_;
    Mat aug = Mat::Zero(5 * n, 5 * n);
    aug.topLeftCorner(n, n) = f;
    for (int b = 0; b < 4; ++b) aug.block(b * n, (b + 1) * n, n, n) = Mat::Identity(n, n);
    const Mat e = matops::expm(aug, dt);
    e_ = e.topLeftCorner(n, n);
    double factorial = 1.0;
    double scale = 1.0;  // m! / dt^m
    for (int m = 0; m < 4; ++m) {
        r_[m] = e.block(0, (m + 1) * n, n, n) * scale;
        factorial *= (m + 1);
        scale = factorial / std::pow(dt_, m + 1);
    }
}

Vec LinearStepper::step(const Vec& y, const Mat& driver_nodes, std::size_t k) const {
    const auto num_nodes = static_cast<std::size_t>(driver_nodes.cols());
    if (driver_nodes.rows() != dim_)
        throw InvalidArgument("LinearStepper: driver dimension mismatch");
    if (k + 1 >= num_nodes) throw InvalidArgument("LinearStepper: step beyond grid");

    if (num_nodes < 4) return step_linear(y, driver_nodes.col(k), driver_nodes.col(k + 1));

    std::size_t j0 = k == 0 ? 0 : k - 1;
    if (j0 + 3 >= num_nodes) j0 = num_nodes - 4;
    const int offset = static_cast<int>(j0) - static_cast<int>(k);

    static const Eigen::Matrix4d inv[3] = {stencil_inverse(0), stencil_inverse(-1),
                                           stencil_inverse(-2)};
    const Eigen::Matrix4d& c = inv[-offset];

    Vec out = e_ * y;
    for (int m = 0; m < 4; ++m) {
        Vec coeff = Vec::Zero(dim_);
        for (int i = 0; i < 4; ++i) coeff += c(m, i) * driver_nodes.col(j0 + i);
        out += r_[m] * coeff;
    }
    return out;
}

Vec LinearStepper::step_const(const Vec& y, const Vec& d) const {
    return e_ * y + r_[0] * d;
}

Vec LinearStepper::step_linear(const Vec& y, const Vec& d_left, const Vec& d_right) const {
    return e_ * y + r_[0] * d_left + r_[1] * (d_right - d_left);
}

RiccatiWeight::RiccatiWeight(double eta, double lambda, double horizon, double terminal_n)
    : eta_(eta), lambda_(lambda), T_(horizon) {
    if (!(eta > 0.0)) throw InvalidArgument("RiccatiWeight: eta must be positive");
    if (!(lambda >= 0.0)) throw InvalidArgument("RiccatiWeight: lambda must be nonnegative");
    if (!(terminal_n >= 0.0)) throw InvalidArgument("RiccatiWeight: penalty must be nonnegative");

    const bool strict = std::isinf(terminal_n);
    if (lambda > 0.0) {
        u_ = std::sqrt(lambda / eta);
        s_ = std::sqrt(eta * lambda);
        if (strict) {
            branch_ = Branch::Coth;
            c_ = 0.0;
        } else if (terminal_n > s_) {
            branch_ = Branch::Coth;
            c_ = std::atanh(s_ / terminal_n);
        } else if (terminal_n == s_) {
            branch_ = Branch::Const;
        } else {
            branch_ = Branch::Tanh;
            c_ = std::atanh(terminal_n / s_);
        }
    } else {
        if (strict) {
            branch_ = Branch::RationalZeroLambda;
            eps_ = 0.0;
        } else if (terminal_n > 0.0) {
            branch_ = Branch::RationalZeroLambda;
            eps_ = eta / terminal_n;
        } else {
            branch_ = Branch::Zero;
        }
    }
}

double RiccatiWeight::value(double t) const {
    const double tau = T_ - t;
    if (tau < 0.0) throw InvalidArgument("RiccatiWeight: t beyond horizon");
    switch (branch_) {
        case Branch::Coth: {
            const double z = u_ * tau + c_;
            if (z == 0.0) return std::numeric_limits<double>::infinity();
            return 2.0 * s_ / std::tanh(z);
        }
        case Branch::Tanh:
            return 2.0 * s_ * std::tanh(u_ * tau + c_);
        case Branch::Const:
            return 2.0 * s_;
        case Branch::RationalZeroLambda:
            if (tau + eps_ == 0.0) return std::numeric_limits<double>::infinity();
            return 2.0 * eta_ / (tau + eps_);
        case Branch::Zero:
            return 0.0;
    }
    return 0.0;
}

double RiccatiWeight::log_scale(double t) const {
    const double tau = T_ - t;
    auto log_sinh = [](double x) {
        // log(sinh x), stable for large x; x >= 0.
        if (x == 0.0) return -std::numeric_limits<double>::infinity();
        return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
    };
    auto log_cosh = [](double x) { return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0); };
    switch (branch_) {
        case Branch::Coth:
            return log_sinh(u_ * tau + c_);
        case Branch::Tanh:
            return log_cosh(u_ * tau + c_);
        case Branch::Const:
            return u_ * tau;
        case Branch::RationalZeroLambda:
            return std::log(tau + eps_);
        case Branch::Zero:
            return 0.0;
    }
    return 0.0;
}

double RiccatiWeight::weight(double r, double t) const {
    if (t < r) throw InvalidArgument("RiccatiWeight: weight requires r <= t");
    if (t == r) return 1.0;
    const double lt = log_scale(t);
    if (std::isinf(lt) && lt < 0.0) return 0.0;
    return std::exp(lt - log_scale(r));
}

}  // namespace liq
