#include "sumbound/copula.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sumbound {

namespace {

constexpr double kSmallestQuantileArg = 1e-300;
constexpr double kLargestQuantileArg = 1.0 - 0x1.0p-53;

// Quantile of a copula coordinate; keeps frailty draws that round onto the
// boundary of [0, 1] finite.
double normal_score(double u)
{
    return phi_inv(std::clamp(u, kSmallestQuantileArg, kLargestQuantileArg));
}

double gaussian_copula_cdf(double rho, double u, double v)
{
    if (rho == 1.0) {
        return std::min(u, v);
    }
    if (rho == -1.0) {
        return frechet_lower({u, v});
    }
    if (rho == 0.0) {
        return u * v;
    }
    // C(u, v) = integral over s < Phi^-1(u) of phi(s) Phi((b - rho s) / sqrt(1 - rho^2)).
    const double a = phi_inv(u);
    const double b = phi_inv(v);
    const double scale = std::sqrt((1.0 - rho) * (1.0 + rho));
    auto integrand = [&](double s) { return phi_pdf(s) * phi_cdf((b - rho * s) / scale); };
    const double lo = -kPhiSaturation;
    if (a <= lo) {
        return 0.0;
    }
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, lo, a, 20, 1e-12, &error);
    return value;
}

double clayton_cdf(double theta, double u, double v)
{
    const double s = std::pow(u, -theta) + std::pow(v, -theta) - 1.0;
    return std::pow(s, -1.0 / theta);
}

double gumbel_cdf(double theta, double u, double v)
{
    const double lu = 0.0 - std::log(u);
    const double lv = 0.0 - std::log(v);
    const double s = std::pow(lu, theta) + std::pow(lv, theta);
    return std::exp(-std::pow(s, 1.0 / theta));
}

} // namespace

DependenceModel::DependenceModel(DependenceKind kind, double parameter)
    : kind_(kind), parameter_(parameter)
{
    if (!std::isfinite(parameter)) {
        throw std::domain_error("DependenceModel: parameter must be finite");
    }
    switch (kind) {
    case DependenceKind::Gaussian:
        if (parameter < -1.0 || parameter > 1.0) {
            throw std::domain_error("DependenceModel: gaussian rho must lie in [-1, 1]");
        }
        break;
    case DependenceKind::Clayton:
        if (!(parameter > 0.0)) {
            throw std::domain_error("DependenceModel: clayton theta must be > 0");
        }
        break;
    case DependenceKind::Gumbel:
        if (!(parameter >= 1.0)) {
            throw std::domain_error("DependenceModel: gumbel theta must be >= 1");
        }
        break;
    }
}

DependenceModel DependenceModel::parse(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("model must look like kind:param, got '" + std::string(text) +
                                    "'");
    }
    std::string kind_name(text.substr(0, colon));
    std::transform(kind_name.begin(), kind_name.end(), kind_name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const std::string_view param_text = text.substr(colon + 1);

    double value = 0.0;
    const auto [end, ec] =
        std::from_chars(param_text.data(), param_text.data() + param_text.size(), value);
    if (ec != std::errc{} || end != param_text.data() + param_text.size() || param_text.empty()) {
        throw std::invalid_argument("model parameter is not a number: '" + std::string(param_text) +
                                    "'");
    }

    DependenceKind kind{};
    if (kind_name == "gaussian" || kind_name == "normal") {
        kind = DependenceKind::Gaussian;
    } else if (kind_name == "clayton") {
        kind = DependenceKind::Clayton;
    } else if (kind_name == "gumbel") {
        kind = DependenceKind::Gumbel;
    } else {
        throw std::invalid_argument("unknown dependence model '" + kind_name + "'");
    }
    try {
        return DependenceModel(kind, value);
    } catch (const std::domain_error& e) {
        throw std::invalid_argument(e.what());
    }
}

std::string_view DependenceModel::name() const noexcept
{
    switch (kind_) {
    case DependenceKind::Gaussian:
        return "gaussian";
    case DependenceKind::Clayton:
        return "clayton";
    case DependenceKind::Gumbel:
        return "gumbel";
    }
    return "unknown";
}

UnitPair UnitPair::checked(double u, double v)
{
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
        throw std::domain_error("UnitPair: coordinates must lie in [0, 1]");
    }
    return {u, v};
}

// min - (1 - max): 1 - max is exact for max >= 1/2, so W(u, 1) == u.
double frechet_lower(UnitPair p) noexcept
{
    const auto [lo, hi] = std::minmax(p.u, p.v);
    return std::max(lo - (1.0 - hi), 0.0);
}

double frechet_upper(UnitPair p) noexcept { return std::min(p.u, p.v); }

double dual_w(UnitPair p) noexcept { return std::min(p.u + p.v, 1.0); }

double copula_cdf(const DependenceModel& model, UnitPair p)
{
    p = UnitPair::checked(p.u, p.v);
    if (p.u == 0.0 || p.v == 0.0) {
        return 0.0;
    }
    if (p.u == 1.0) {
        return p.v;
    }
    if (p.v == 1.0) {
        return p.u;
    }
    const double theta = model.parameter();
    double c = 0.0;
    switch (model.kind()) {
    case DependenceKind::Gaussian:
        c = gaussian_copula_cdf(theta, p.u, p.v);
        break;
    case DependenceKind::Clayton:
        c = clayton_cdf(theta, p.u, p.v);
        break;
    case DependenceKind::Gumbel:
        c = gumbel_cdf(theta, p.u, p.v);
        break;
    }
    // Rounding in the closed forms can step an ulp outside the envelope.
    return std::clamp(c, frechet_lower(p), frechet_upper(p));
}

double kendall_tau(const DependenceModel& model) noexcept
{
    const double p = model.parameter();
    switch (model.kind()) {
    case DependenceKind::Gaussian:
        return 2.0 / std::numbers::pi * std::asin(p);
    case DependenceKind::Clayton:
        return p / (p + 2.0);
    case DependenceKind::Gumbel:
        return 1.0 - 1.0 / p;
    }
    return 0.0;
}

namespace detail {

double sample_exponential(RandomStream& rng) noexcept { return -std::log1p(-rng.uniform()); }

double sample_normal(RandomStream& rng) { return phi_inv(rng.uniform()); }

double sample_gamma(double shape, RandomStream& rng)
{
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw std::domain_error("sample_gamma: shape must be positive and finite");
    }
    if (shape < 1.0) {
        const double boost = std::pow(rng.uniform(), 1.0 / shape);
        return sample_gamma(shape + 1.0, rng) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = sample_normal(rng);
        double v = 1.0 + c * x;
        if (v <= 0.0) {
            continue;
        }
        v = v * v * v;
        const double u = rng.uniform();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
            return d * v;
        }
    }
}

double sample_positive_stable(double index, RandomStream& rng)
{
    if (!(index > 0.0 && index <= 1.0)) {
        throw std::domain_error("sample_positive_stable: index must lie in (0, 1]");
    }
    if (index == 1.0) {
        return 1.0;
    }
    const double angle = std::numbers::pi * rng.uniform();
    const double w = sample_exponential(rng);
    const double a = index;
    return std::sin(a * angle) / std::pow(std::sin(angle), 1.0 / a) *
           std::pow(std::sin((1.0 - a) * angle) / w, (1.0 - a) / a);
}

} // namespace detail

UnitPair sample_pair(const DependenceModel& model, RandomStream& rng)
{
    const double theta = model.parameter();
    switch (model.kind()) {
    case DependenceKind::Gaussian: {
        const double u = rng.uniform();
        if (theta == 1.0) {
            return {u, u};
        }
        if (theta == -1.0) {
            return {u, 1.0 - u};
        }
        const double z1 = phi_inv(u);
        const double z2 = detail::sample_normal(rng);
        const double y = theta * z1 + std::sqrt((1.0 - theta) * (1.0 + theta)) * z2;
        return {u, phi_cdf(y)};
    }
    case DependenceKind::Clayton: {
        const double frailty = detail::sample_gamma(1.0 / theta, rng);
        const double e1 = detail::sample_exponential(rng);
        const double e2 = detail::sample_exponential(rng);
        return {std::pow(1.0 + e1 / frailty, -1.0 / theta),
                std::pow(1.0 + e2 / frailty, -1.0 / theta)};
    }
    case DependenceKind::Gumbel: {
        const double frailty = detail::sample_positive_stable(1.0 / theta, rng);
        const double e1 = detail::sample_exponential(rng);
        const double e2 = detail::sample_exponential(rng);
        return {std::exp(-std::pow(e1 / frailty, 1.0 / theta)),
                std::exp(-std::pow(e2 / frailty, 1.0 / theta))};
    }
    }
    return {0.5, 0.5};
}

double sample_sum(const DependenceModel& model, const SumProblem& problem, RandomStream& rng)
{
    const double sx = problem.x.sigma();
    const double sy = problem.y.sigma();
    const double mean = problem.mean_sum();
    if (model.kind() == DependenceKind::Gaussian) {
        const double rho = model.parameter();
        const double z1 = detail::sample_normal(rng);
        if (rho == 1.0) {
            return mean + (sx + sy) * z1;
        }
        if (rho == -1.0) {
            return mean + (sx - sy) * z1;
        }
        const double z2 = detail::sample_normal(rng);
        return mean + sx * z1 + sy * (rho * z1 + std::sqrt((1.0 - rho) * (1.0 + rho)) * z2);
    }
    const UnitPair p = sample_pair(model, rng);
    return problem.x.mu() + sx * normal_score(p.u) + problem.y.mu() + sy * normal_score(p.v);
}

double gaussian_sum_cdf(const SumProblem& problem, double rho, double z)
{
    if (!(rho >= -1.0 && rho <= 1.0)) {
        throw std::domain_error("gaussian_sum_cdf: rho must lie in [-1, 1]");
    }
    const double sx = problem.x.sigma();
    const double sy = problem.y.sigma();
    const double var = sx * sx + 2.0 * rho * sx * sy + sy * sy;
    const double s = std::sqrt(std::max(var, 0.0));
    const double d = z - problem.mean_sum();
    if (s <= 1e-15 * (sx + sy)) {
        return d >= 0.0 ? 1.0 : 0.0;
    }
    return phi_cdf(d / s);
}

} // namespace sumbound
