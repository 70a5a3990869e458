#pragma once

#include "sumbound/makarov.hpp"
#include "sumbound/random_stream.hpp"

#include <string>
#include <string_view>

namespace sumbound {

enum class DependenceKind { Gaussian, Clayton, Gumbel };

/// A concrete dependence structure between X and Y.
///
/// Gaussian takes the correlation rho in [-1, 1], Clayton theta > 0 and
/// Gumbel theta >= 1. Construction validates the parameter.
class DependenceModel {
public:
    DependenceModel(DependenceKind kind, double parameter);

    static DependenceModel gaussian(double rho) { return {DependenceKind::Gaussian, rho}; }
    static DependenceModel clayton(double theta) { return {DependenceKind::Clayton, theta}; }
    static DependenceModel gumbel(double theta) { return {DependenceKind::Gumbel, theta}; }

    /// Parses "kind:param", e.g. "clayton:2.5". Throws std::invalid_argument.
    static DependenceModel parse(std::string_view text);

    DependenceKind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return parameter_; }

    /// Lowercase kind name: "gaussian", "clayton" or "gumbel".
    std::string_view name() const noexcept;

    friend bool operator==(const DependenceModel&, const DependenceModel&) = default;

private:
    DependenceKind kind_;
    double parameter_;
};

/// Point of the unit square; both coordinates in [0, 1].
struct UnitPair {
    double u;
    double v;

    /// Validating constructor; throws std::domain_error outside [0, 1]^2.
    static UnitPair checked(double u, double v);
};

/// W(u, v) = max(u + v - 1, 0), the countermonotone copula.
double frechet_lower(UnitPair p) noexcept;

/// M(u, v) = min(u, v), the comonotone copula.
double frechet_upper(UnitPair p) noexcept;

/// u + v - W(u, v) = min(u + v, 1).
double dual_w(UnitPair p) noexcept;

/// Copula distribution function C(u, v) of the model.
///
/// Clayton and Gumbel use their closed forms. Gaussian integrates the
/// conditional normal law with adaptive Gauss-Kronrod quadrature (target
/// 1e-10), so it is meant for tests and diagnostics rather than hot loops.
double copula_cdf(const DependenceModel& model, UnitPair p);

/// Population Kendall's tau of the model.
double kendall_tau(const DependenceModel& model) noexcept;

/// One draw (U, V) from the model's copula. Clayton and Gumbel use
/// Marshall-Olkin frailty mixing; Gaussian uses the 2x2 Cholesky factor.
UnitPair sample_pair(const DependenceModel& model, RandomStream& rng);

/// One draw of X + Y with the model coupling the two normal marginals.
/// Gaussian |rho| = 1 uses the exact comonotone / countermonotone map.
double sample_sum(const DependenceModel& model, const SumProblem& problem, RandomStream& rng);

/// Exact P(X + Y <= z) when (X, Y) is bivariate normal with correlation rho.
/// Degenerates to a unit step at mu_x + mu_y when the sum has zero variance.
double gaussian_sum_cdf(const SumProblem& problem, double rho, double z);

namespace detail {

/// Exp(1) by inversion.
double sample_exponential(RandomStream& rng) noexcept;

/// Standard normal by inversion.
double sample_normal(RandomStream& rng);

/// Gamma(shape, 1): Marsaglia-Tsang for shape >= 1, boosted by U^(1/shape)
/// below that.
double sample_gamma(double shape, RandomStream& rng);

/// One-sided stable law with Laplace transform exp(-s^index), 0 < index <= 1
/// (Chambers-Mallows-Stuck).
double sample_positive_stable(double index, RandomStream& rng);

} // namespace detail

} // namespace sumbound
