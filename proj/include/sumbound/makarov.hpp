#pragma once

#include "sumbound/normal.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sumbound {

/// Two normal summands X and Y whose sum Z = X + Y is bounded.
struct SumProblem {
    NormalMarginal x;
    NormalMarginal y;

    double mean_sum() const noexcept { return x.mu() + y.mu(); }

    /// True when sigma_x and sigma_y agree to 1e-12 relative; such problems
    /// take the closed-form equal-scale path.
    bool equal_scales() const noexcept;
};

/// Coefficients of alpha*x^2 + beta*x + gamma = 0, whose roots are the
/// stationary points of psi. alpha is exactly 0 for equal scales.
struct QuadraticCoefficients {
    double alpha;
    double beta;
    double gamma;
    double discriminant;
    bool is_linear;
};

/// Stationary points of psi: one for equal scales, two (ascending) otherwise.
class CriticalPoints {
public:
    static CriticalPoints single(double x0) noexcept { return CriticalPoints({x0, 0.0}, 1); }
    static CriticalPoints pair(double a, double b) noexcept
    {
        return a <= b ? CriticalPoints({a, b}, 2) : CriticalPoints({b, a}, 2);
    }

    std::span<const double> points() const noexcept { return {points_.data(), count_}; }
    std::size_t size() const noexcept { return count_; }
    double operator[](std::size_t i) const
    {
        if (i >= count_) {
            throw std::out_of_range("CriticalPoints: index out of range");
        }
        return points_[i];
    }

private:
    CriticalPoints(std::array<double, 2> pts, std::size_t n) : points_(pts), count_(n) {}
    std::array<double, 2> points_;
    std::size_t count_;
};

/// Raised by critical_points when scales are equal and z equals the mean of
/// the sum: psi is then constant and has no isolated stationary point.
class DegenerateLinearCase : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct BoundPoint {
    double z;
    double lower;
    double upper;
};

/// Bounds sampled on a strictly increasing z grid.
struct BoundCurve {
    std::vector<BoundPoint> points;
};

/// Lower/upper bound pair produced by the brute-force grid search.
struct OracleBounds {
    double lower;
    double upper;
};

using CdfFunction = std::function<double(double)>;

/// psi(x) = F_X(x) + F_Y(z - x), the quantity whose extrema give the bounds.
double psi_eval(const SumProblem& problem, double z, double x);

/// d psi / dx = f_X(x) - f_Y(z - x).
double psi_derivative(const SumProblem& problem, double z, double x);

/// |psi'(x)| rescaled by the smaller of the two sigmas, the residual used to
/// judge a stationary point.
double psi_derivative_residual(const SumProblem& problem, double z, double x);

QuadraticCoefficients quadratic_coefficients(const SumProblem& problem, double z);

/// Roots of the stationarity equation. The quadratic is solved in the
/// variable x - mu_x, which keeps it well conditioned for large means, with
/// the cancellation-free pairing q / alpha and gamma / q.
///
/// Throws DegenerateLinearCase for equal scales at z == mean_sum().
CriticalPoints critical_points(const SumProblem& problem, double z);

/// Pointwise best-possible lower bound on P(X + Y <= z) over all couplings.
double lower_bound(const SumProblem& problem, double z);

/// Pointwise best-possible upper bound on P(X + Y <= z) over all couplings.
double upper_bound(const SumProblem& problem, double z);

/// Both bounds at z, sharing the root computation.
BoundPoint bound_point(const SumProblem& problem, double z);

/// Bounds on every grid point (OpenMP-parallel over z).
/// Throws std::domain_error if the grid is empty, unsorted or non-finite.
BoundCurve bound_curve(const SumProblem& problem, std::span<const double> z_grid);

/// Single-threaded reference for bound_curve.
BoundCurve bound_curve_serial(const SumProblem& problem, std::span<const double> z_grid);

/// Direct sup/inf of W(F(x), G(z - x)) and min(F(x) + G(z - x), 1) over the
/// grid x_lo + k * step, k = 0, 1, ... while <= x_hi. Works for any marginal
/// CDFs and is independent of the analytic path.
OracleBounds grid_oracle(const CdfFunction& f_cdf, const CdfFunction& g_cdf, double z,
                         double x_lo, double x_hi, double step);

struct OracleWindow {
    double x_lo;
    double x_hi;
};

/// Search window covering both marginal centres +- 10 of the larger sigma.
OracleWindow oracle_window(const SumProblem& problem, double z);

/// grid_oracle over oracle_window with step 1e-4 * width, followed by a
/// ternary refinement inside the best cell for each extremum.
OracleBounds grid_oracle(const SumProblem& problem, double z);

/// grid_oracle over oracle_window with the given absolute step, for each z
/// (OpenMP-parallel over z).
std::vector<OracleBounds> oracle_curve(const SumProblem& problem, std::span<const double> z_grid,
                                       double step);

/// Single-threaded reference for oracle_curve.
std::vector<OracleBounds> oracle_curve_serial(const SumProblem& problem,
                                              std::span<const double> z_grid, double step);

/// n equally spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

} // namespace sumbound
