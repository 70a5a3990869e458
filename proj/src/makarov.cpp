#include "sumbound/makarov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sumbound {

namespace {

constexpr double kScaleTolerance = 1e-12;

double clamp_unit(double p) noexcept { return std::clamp(p, 0.0, 1.0); }

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}

// Standardized arguments of the two CDF terms at u = x - mu_x.
struct PsiTerms {
    double a; // (x - mu_x) / sigma_x
    double b; // (z - x - mu_y) / sigma_y
};

PsiTerms terms_at(const SumProblem& p, double d, double u) noexcept
{
    return {u / p.x.sigma(), (d - u) / p.y.sigma()};
}

// psi - 1 with both terms taken from the small tails, chosen by the signs
// of a and b, so nothing cancels against 1.
double psi_minus_one(PsiTerms t)
{
    if (t.a >= 0.0 && t.b >= 0.0) {
        return 1.0 - (phi_cdf(-t.a) + phi_cdf(-t.b));
    }
    if (t.a < 0.0 && t.b < 0.0) {
        return (phi_cdf(t.a) + phi_cdf(t.b)) - 1.0;
    }
    return t.a >= 0.0 ? phi_cdf(t.b) - phi_cdf(-t.a) : phi_cdf(t.a) - phi_cdf(-t.b);
}

// min(psi, 1); the direct sum is exact enough when both terms are below 1/2.
double capped_psi(PsiTerms t)
{
    if (t.a < 0.0 && t.b < 0.0) {
        return phi_cdf(t.a) + phi_cdf(t.b);
    }
    return 1.0 + std::min(psi_minus_one(t), 0.0);
}

BoundPoint equal_scale_bounds(const SumProblem& p, double z)
{
    const double sigma = 0.5 * (p.x.sigma() + p.y.sigma());
    const double d = z - p.x.mu() - p.y.mu();
    const double t = d / (2.0 * sigma);
    if (d == 0.0) {
        return {z, 0.0, 1.0};
    }
    if (d < 0.0) {
        return {z, 0.0, clamp_unit(2.0 * phi_cdf(t))};
    }
    return {z, clamp_unit(1.0 - 2.0 * phi_cdf(-t)), 1.0};
}

// Roots of the stationarity quadratic in u = x - mu_x.
std::array<double, 2> shifted_roots(const SumProblem& p, double d) noexcept
{
    const double vx = p.x.sigma() * p.x.sigma();
    const double vy = p.y.sigma() * p.y.sigma();
    const double alpha = 0.5 / vx - 0.5 / vy;
    const double beta = d / vy;
    const double gamma = -0.5 * d * d / vy - std::log(p.y.sigma() / p.x.sigma());
    const double disc = std::max(beta * beta - 4.0 * alpha * gamma, 0.0);
    const double sign = beta >= 0.0 ? 1.0 : -1.0;
    const double q = -0.5 * (beta + sign * std::sqrt(disc));
    const double big = q / alpha;
    const double small = q != 0.0 ? gamma / q : -big;
    return {big, small};
}

BoundPoint quadratic_bounds(const SumProblem& p, double z)
{
    const double d = z - p.x.mu() - p.y.mu();
    auto roots = shifted_roots(p, d);
    if (roots[1] < roots[0]) {
        std::swap(roots[0], roots[1]);
    }
    const PsiTerms t1 = terms_at(p, d, roots[0]);
    const PsiTerms t2 = terms_at(p, d, roots[1]);
    const double excess1 = psi_minus_one(t1);
    const double excess2 = psi_minus_one(t2);

    // Ties resolve to the first (smaller) root.
    const PsiTerms& at_max = excess2 > excess1 ? t2 : t1;
    const PsiTerms& at_min = excess2 < excess1 ? t2 : t1;

    const double lower = clamp_unit(std::max(psi_minus_one(at_max), 0.0));
    const double upper = clamp_unit(capped_psi(at_min));
    return {z, lower, upper};
}

void validate_grid(std::span<const double> z_grid)
{
    if (z_grid.empty()) {
        throw std::domain_error("bound_curve: empty z grid");
    }
    for (std::size_t i = 0; i < z_grid.size(); ++i) {
        require_finite(z_grid[i], "bound_curve: grid value");
        if (i > 0 && !(z_grid[i] > z_grid[i - 1])) {
            throw std::domain_error("bound_curve: z grid must be strictly increasing");
        }
    }
}

// Extreme grid points of psi; the objective is psi itself so both clamps
// can be applied afterwards.
struct GridExtrema {
    double max_psi;
    double max_x;
    double min_psi;
    double min_x;
};

template <typename Psi>
GridExtrema scan_grid(const Psi& psi, double x_lo, double x_hi, double step)
{
    if (!(x_lo < x_hi) || !(step > 0.0) || !std::isfinite(x_lo) || !std::isfinite(x_hi)) {
        throw std::domain_error("grid_oracle: need finite x_lo < x_hi and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((x_hi - x_lo) / step)) + 1;
    GridExtrema ext{-1.0, x_lo, 3.0, x_lo};
    for (std::size_t k = 0; k < count; ++k) {
        const double x = x_lo + static_cast<double>(k) * step;
        const double v = psi(x);
        if (v > ext.max_psi) {
            ext.max_psi = v;
            ext.max_x = x;
        }
        if (v < ext.min_psi) {
            ext.min_psi = v;
            ext.min_x = x;
        }
    }
    return ext;
}

template <typename F>
double ternary_extremum(const F& f, double lo, double hi, bool maximize)
{
    for (int it = 0; it < 100 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        const double f1 = f(m1);
        const double f2 = f(m2);
        if ((f1 < f2) == maximize) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    return f(0.5 * (lo + hi));
}

OracleBounds oracle_for(const SumProblem& problem, double z, double step)
{
    const OracleWindow w = oracle_window(problem, z);
    auto f = [&](double x) { return phi_cdf(problem.x.standardize(x)); };
    auto g = [&](double y) { return phi_cdf(problem.y.standardize(y)); };
    return grid_oracle(f, g, z, w.x_lo, w.x_hi, step);
}

} // namespace

bool SumProblem::equal_scales() const noexcept
{
    const double sx = x.sigma();
    const double sy = y.sigma();
    return std::abs(sx - sy) <= kScaleTolerance * std::max(sx, sy);
}

double psi_eval(const SumProblem& problem, double z, double x)
{
    require_finite(z, "psi_eval: z");
    require_finite(x, "psi_eval: x");
    return phi_cdf(problem.x.standardize(x)) + phi_cdf(problem.y.standardize(z - x));
}

double psi_derivative(const SumProblem& problem, double z, double x)
{
    require_finite(z, "psi_derivative: z");
    require_finite(x, "psi_derivative: x");
    return phi_pdf(problem.x.standardize(x)) / problem.x.sigma() -
           phi_pdf(problem.y.standardize(z - x)) / problem.y.sigma();
}

double psi_derivative_residual(const SumProblem& problem, double z, double x)
{
    return std::abs(psi_derivative(problem, z, x)) *
           std::min(problem.x.sigma(), problem.y.sigma());
}

QuadraticCoefficients quadratic_coefficients(const SumProblem& problem, double z)
{
    require_finite(z, "quadratic_coefficients: z");
    const double mx = problem.x.mu();
    const double my = problem.y.mu();
    const double vx = problem.x.sigma() * problem.x.sigma();
    const double vy = problem.y.sigma() * problem.y.sigma();
    const double c = z - my;

    QuadraticCoefficients q{};
    q.is_linear = problem.equal_scales();
    q.alpha = q.is_linear ? 0.0 : 0.5 / vx - 0.5 / vy;
    if (q.is_linear) {
        // One shared variance; log(sigma_y / sigma_x) vanishes.
        const double v = 0.5 * (vx + vy);
        q.beta = (c - mx) / v;
        q.gamma = (mx * mx - c * c) / (2.0 * v);
    } else {
        q.beta = c / vy - mx / vx;
        q.gamma = -c * c / (2.0 * vy) + mx * mx / (2.0 * vx) -
                  std::log(problem.y.sigma() / problem.x.sigma());
    }
    q.discriminant = q.beta * q.beta - 4.0 * q.alpha * q.gamma;
    return q;
}

CriticalPoints critical_points(const SumProblem& problem, double z)
{
    require_finite(z, "critical_points: z");
    const double d = z - problem.x.mu() - problem.y.mu();
    if (problem.equal_scales()) {
        if (d == 0.0) {
            throw DegenerateLinearCase(
                "critical_points: equal scales at z == mu_x + mu_y, psi is constant");
        }
        return CriticalPoints::single(problem.x.mu() + 0.5 * d);
    }
    const auto roots = shifted_roots(problem, d);
    return CriticalPoints::pair(problem.x.mu() + roots[0], problem.x.mu() + roots[1]);
}

BoundPoint bound_point(const SumProblem& problem, double z)
{
    require_finite(z, "bound: z");
    return problem.equal_scales() ? equal_scale_bounds(problem, z) : quadratic_bounds(problem, z);
}

double lower_bound(const SumProblem& problem, double z) { return bound_point(problem, z).lower; }

double upper_bound(const SumProblem& problem, double z) { return bound_point(problem, z).upper; }

BoundCurve bound_curve_serial(const SumProblem& problem, std::span<const double> z_grid)
{
    validate_grid(z_grid);
    BoundCurve curve;
    curve.points.reserve(z_grid.size());
    for (const double z : z_grid) {
        curve.points.push_back(bound_point(problem, z));
    }
    return curve;
}

BoundCurve bound_curve(const SumProblem& problem, std::span<const double> z_grid)
{
    validate_grid(z_grid);
    BoundCurve curve;
    curve.points.resize(z_grid.size());
    const auto n = static_cast<std::ptrdiff_t>(z_grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        curve.points[i] = bound_point(problem, z_grid[i]);
    }
    return curve;
}

OracleBounds grid_oracle(const CdfFunction& f_cdf, const CdfFunction& g_cdf, double z,
                         double x_lo, double x_hi, double step)
{
    require_finite(z, "grid_oracle: z");
    auto psi = [&](double x) { return f_cdf(x) + g_cdf(z - x); };
    const GridExtrema ext = scan_grid(psi, x_lo, x_hi, step);
    return {std::max(ext.max_psi - 1.0, 0.0), std::min(ext.min_psi, 1.0)};
}

OracleWindow oracle_window(const SumProblem& problem, double z)
{
    const double cx = problem.x.mu();
    const double cy = z - problem.y.mu();
    const double spread = 10.0 * std::max(problem.x.sigma(), problem.y.sigma());
    return {std::min(cx, cy) - spread, std::max(cx, cy) + spread};
}

OracleBounds grid_oracle(const SumProblem& problem, double z)
{
    require_finite(z, "grid_oracle: z");
    const OracleWindow w = oracle_window(problem, z);
    const double step = 1e-4 * (w.x_hi - w.x_lo);
    auto psi = [&](double x) { return psi_eval(problem, z, x); };
    const GridExtrema ext = scan_grid(psi, w.x_lo, w.x_hi, step);

    const double max_psi =
        std::max(ext.max_psi, ternary_extremum(psi, ext.max_x - step, ext.max_x + step, true));
    const double min_psi =
        std::min(ext.min_psi, ternary_extremum(psi, ext.min_x - step, ext.min_x + step, false));
    return {clamp_unit(max_psi - 1.0), clamp_unit(min_psi)};
}

std::vector<OracleBounds> oracle_curve_serial(const SumProblem& problem,
                                              std::span<const double> z_grid, double step)
{
    validate_grid(z_grid);
    std::vector<OracleBounds> out;
    out.reserve(z_grid.size());
    for (const double z : z_grid) {
        out.push_back(oracle_for(problem, z, step));
    }
    return out;
}

std::vector<OracleBounds> oracle_curve(const SumProblem& problem, std::span<const double> z_grid,
                                       double step)
{
    validate_grid(z_grid);
    if (!(step > 0.0)) {
        throw std::domain_error("oracle_curve: step must be positive");
    }
    std::vector<OracleBounds> out(z_grid.size());
    const auto n = static_cast<std::ptrdiff_t>(z_grid.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = oracle_for(problem, z_grid[i], step);
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {lo};
    }
    std::vector<double> out(n);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + static_cast<double>(i) * h;
    }
    out.back() = hi;
    return out;
}

} // namespace sumbound
