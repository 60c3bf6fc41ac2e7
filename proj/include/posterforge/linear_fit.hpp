#pragma once

// Dense least-squares fits shared by the CLG estimators and the ridge
// baseline. Rows are small (a few features plus intercept), so everything is
// fixed-width at compile time.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "posterforge/error.hpp"

namespace posterforge {

template <std::size_t N>
using Features = std::array<double, N>;

template <std::size_t N>
inline double dot(const Features<N>& w, const Features<N>& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += w[i] * x[i];
    return s;
}

template <std::size_t N>
struct LinearFit {
    Features<N> weights{};
    double residual_std = 0.0; // sqrt(mean squared residual), unclamped
};

namespace detail {

template <std::size_t N>
Eigen::Matrix<double, Eigen::Dynamic, static_cast<int>(N)> design(
    std::span<const Features<N>> rows) {
    Eigen::Matrix<double, Eigen::Dynamic, static_cast<int>(N)> x(rows.size(), N);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < N; ++c) x(r, c) = rows[r][c];
    return x;
}

template <std::size_t N>
double residual_std(std::span<const Features<N>> rows, std::span<const double> y,
                    const Features<N>& w) {
    double ss = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double e = y[r] - dot(w, rows[r]);
        ss += e * e;
    }
    return std::sqrt(ss / static_cast<double>(rows.size()));
}

} // namespace detail

/// Ordinary least squares via column-pivoted Householder QR. Throws
/// FitError when there are fewer than `min_rows` rows or the design matrix
/// is rank deficient.
template <std::size_t N>
LinearFit<N> least_squares(std::span<const Features<N>> rows, std::span<const double> y,
                           std::size_t min_rows, const std::string& what) {
    if (rows.size() != y.size()) throw InputError(what + ": feature/target length mismatch");
    if (rows.size() < min_rows || rows.size() < N)
        throw FitError(FitError::Kind::TooFewRows,
                       what + ": too few rows (" + std::to_string(rows.size()) + ", need " +
                           std::to_string(std::max(min_rows, N)) + ")");
    const auto x = detail::design<N>(rows);
    Eigen::VectorXd b(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) b(i) = y[i];

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() < static_cast<Eigen::Index>(N))
        throw FitError(FitError::Kind::RankDeficient,
                       what + ": design matrix is rank deficient (rank " +
                           std::to_string(qr.rank()) + " < " + std::to_string(N) + ")");
    const Eigen::VectorXd sol = qr.solve(b);

    LinearFit<N> fit;
    for (std::size_t i = 0; i < N; ++i) fit.weights[i] = sol(static_cast<Eigen::Index>(i));
    fit.residual_std = detail::residual_std<N>(rows, y, fit.weights);
    return fit;
}

/// Ridge regression minimizing |Xw - y|^2 + lambda |w|^2 (intercept column
/// penalized like the rest). Solved as an augmented least-squares problem.
template <std::size_t N>
LinearFit<N> ridge(std::span<const Features<N>> rows, std::span<const double> y, double lambda,
                   const std::string& what) {
    if (rows.size() != y.size()) throw InputError(what + ": feature/target length mismatch");
    if (rows.empty()) throw FitError(FitError::Kind::TooFewRows, what + ": no training rows");
    if (!(lambda >= 0.0)) throw InputError(what + ": ridge penalty must be nonnegative");
    if (lambda == 0.0) return least_squares<N>(rows, y, 1, what);

    const auto m = static_cast<Eigen::Index>(rows.size());
    constexpr auto n = static_cast<Eigen::Index>(N);
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(m + n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m + n);
    x.topRows(m) = detail::design<N>(rows);
    x.bottomRows(n) = std::sqrt(lambda) * Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < m; ++i) b(i) = y[static_cast<std::size_t>(i)];

    const Eigen::VectorXd sol = x.householderQr().solve(b);
    LinearFit<N> fit;
    for (std::size_t i = 0; i < N; ++i) fit.weights[i] = sol(static_cast<Eigen::Index>(i));
    fit.residual_std = detail::residual_std<N>(rows, y, fit.weights);
    return fit;
}

inline constexpr double kLog2Pi = 1.8378770664093454836; // log(2*pi)

inline double gaussian_log_pdf(double x, double mean, double sigma) {
    const double z = (x - mean) / sigma;
    return -0.5 * kLog2Pi - std::log(sigma) - 0.5 * z * z;
}

} // namespace posterforge
