#pragma once

#include <Eigen/Dense>
#include <utility>

#include "liqgame/errors.hpp"

namespace liq {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

namespace matops {

/// Matrix exponential e^{G*tau} by scaling-and-squaring with a degree-13
/// Pade approximant. Relative accuracy <= 1e-12 for ||G*tau|| <= 1e3.
Mat expm(const Mat& g, double tau);

/// Returns (E, J) with E = e^{G*tau} and J = int_0^tau e^{G s} ds, computed
/// through the augmented block exponential exp([[G, I], [0, 0]] tau) so that
/// singular G is handled without inversion.
std::pair<Mat, Mat> expm_with_integral(const Mat& g, double tau);

/// Same as expm_with_integral but the integral is applied to the columns of
/// W only: returns (E, J*W). Augments by W.cols() columns instead of n, which
/// keeps large systems affordable when only a few driven columns are needed.
std::pair<Mat, Mat> expm_with_integral_cols(const Mat& g, double tau, const Mat& w);

/// LU factorization with partial pivoting on the row-equilibrated matrix,
/// plus a 1-norm condition estimate (Hager's method on the equilibrated
/// system). Solves fail with SingularMatrix when the estimate exceeds 1e12.
class LinearSolver {
  public:
    explicit LinearSolver(const Mat& a);

    Vec solve(const Vec& b) const;
    Mat solve(const Mat& b) const;

    /// 1-norm condition estimate of the row-equilibrated matrix.
    double condition_estimate() const { return cond_; }

    static constexpr double kSingularThreshold = 1e12;

  private:
    Eigen::PartialPivLU<Mat> lu_;
    Vec row_scale_;
    double cond_ = 0.0;
};

/// Solves A x = b. Residual ||Ax - b|| <= 1e-10 ||b|| for cond(A) <= 1e10;
/// throws SingularMatrix (carrying the estimate) beyond 1e12.
Vec solve_linear(const Mat& a, const Vec& b);

}  // namespace matops
}  // namespace liq
