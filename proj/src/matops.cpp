#include "liqgame/matops.hpp"

#include <cmath>
#include <sstream>

namespace liq {
namespace matops {

namespace {

void require_square_finite(const Mat& g, const char* who) {
    if (g.rows() != g.cols()) {
        std::ostringstream os;
        os << who << ": matrix must be square, got " << g.rows() << "x" << g.cols();
        throw InvalidArgument(os.str());
    }
    if (!g.allFinite()) throw InvalidArgument(std::string(who) + ": non-finite entries");
}

// Degree-13 Pade approximant of e^A, A pre-scaled so ||A||_1 <= theta_13.
Mat pade13(const Mat& a) {
    static const double b[14] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    const auto n = a.rows();
    const Mat id = Mat::Identity(n, n);
    const Mat a2 = a * a;
    const Mat a4 = a2 * a2;
    const Mat a6 = a2 * a4;
    const Mat u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                       b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                  b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Mat expm(const Mat& g, double tau) {
    require_square_finite(g, "expm");
    if (!std::isfinite(tau)) throw InvalidArgument("expm: tau must be finite");
    const auto n = g.rows();
    if (n == 0) return Mat(0, 0);

    Mat a = g * tau;
    const double theta13 = 5.371920351148152;
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int s = 0;
    if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    if (s > 0) a /= std::pow(2.0, s);
    Mat e = pade13(a);
    for (int i = 0; i < s; ++i) e = e * e;
    if (!e.allFinite()) {
        std::ostringstream os;
        os << "expm: non-finite result, ||G*tau||_1 = " << norm1;
        throw NumericFailure(os.str());
    }
    return e;
}

std::pair<Mat, Mat> expm_with_integral(const Mat& g, double tau) {
    require_square_finite(g, "expm_with_integral");
    const auto n = g.rows();
    Mat aug = Mat::Zero(2 * n, 2 * n);
    aug.topLeftCorner(n, n) = g;
    aug.topRightCorner(n, n) = Mat::Identity(n, n);
    const Mat e = expm(aug, tau);
    return {e.topLeftCorner(n, n), e.topRightCorner(n, n)};
}

std::pair<Mat, Mat> expm_with_integral_cols(const Mat& g, double tau, const Mat& w) {
    require_square_finite(g, "expm_with_integral_cols");
    if (w.rows() != g.rows())
        throw InvalidArgument("expm_with_integral_cols: row mismatch between G and W");
    const auto n = g.rows();
    const auto k = w.cols();
    Mat aug = Mat::Zero(n + k, n + k);
    aug.topLeftCorner(n, n) = g;
    aug.topRightCorner(n, k) = w;
    const Mat e = expm(aug, tau);
    return {e.topLeftCorner(n, n), e.topRightCorner(n, k)};
}

LinearSolver::LinearSolver(const Mat& a) {
    require_square_finite(a, "solve_linear");
    const auto n = a.rows();
    row_scale_ = Vec::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double r = a.row(i).cwiseAbs().maxCoeff();
        if (r > 0.0 && std::isfinite(r)) row_scale_(i) = 1.0 / r;
    }
    const Mat scaled = row_scale_.asDiagonal() * a;
    lu_.compute(scaled);

    // Hager 1-norm estimate of ||scaled^{-1}||_1.
    const double norm1 = scaled.cwiseAbs().colwise().sum().maxCoeff();
    Vec x = Vec::Constant(n, 1.0 / static_cast<double>(n));
    double inv_norm = 0.0;
    for (int it = 0; it < 5; ++it) {
        Vec y = lu_.solve(x);
        if (!y.allFinite()) {
            inv_norm = std::numeric_limits<double>::infinity();
            break;
        }
        inv_norm = std::max(inv_norm, y.template lpNorm<1>());
        Vec xi = y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
        Vec z = lu_.transpose().solve(xi);
        Eigen::Index j;
        const double zmax = z.cwiseAbs().maxCoeff(&j);
        if (zmax <= z.dot(x)) break;
        x = Vec::Zero(n);
        x(j) = 1.0;
    }
    cond_ = norm1 * inv_norm;
}

Vec LinearSolver::solve(const Vec& b) const {
    if (b.size() != row_scale_.size())
        throw InvalidArgument("solve_linear: dimension mismatch between A and b");
    if (!(cond_ < kSingularThreshold)) {
        std::ostringstream os;
        os << "solve_linear: singular or near-singular matrix, condition estimate "
           << cond_;
        throw SingularMatrix(os.str(), cond_);
    }
    return lu_.solve(Vec(row_scale_.asDiagonal() * b));
}

Mat LinearSolver::solve(const Mat& b) const {
    if (b.rows() != row_scale_.size())
        throw InvalidArgument("solve_linear: dimension mismatch between A and B");
    if (!(cond_ < kSingularThreshold)) {
        std::ostringstream os;
        os << "solve_linear: singular or near-singular matrix, condition estimate "
           << cond_;
        throw SingularMatrix(os.str(), cond_);
    }
    return lu_.solve(Mat(row_scale_.asDiagonal() * b));
}

Vec solve_linear(const Mat& a, const Vec& b) {
    LinearSolver solver(a);
    return solver.solve(b);
}

}  // namespace matops
}  // namespace liq
