#pragma once

#include <cmath>
#include <stdexcept>

namespace sumbound {

/// Location/scale pair of one normally distributed summand.
class NormalMarginal {
public:
    NormalMarginal(double mu, double sigma) : mu_(mu), sigma_(sigma)
    {
        if (!std::isfinite(mu) || !std::isfinite(sigma)) {
            throw std::domain_error("NormalMarginal: mu and sigma must be finite");
        }
        if (!(sigma > 0.0)) {
            throw std::domain_error("NormalMarginal: sigma must be strictly positive");
        }
    }

    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }

    /// (x - mu) / sigma
    double standardize(double x) const noexcept { return (x - mu_) / sigma_; }

    friend bool operator==(const NormalMarginal&, const NormalMarginal&) = default;

private:
    double mu_;
    double sigma_;
};

/// Beyond this magnitude phi_cdf returns exactly 0 or 1.
inline constexpr double kPhiSaturation = 38.0;

/// Standard normal distribution function.
///
/// Evaluated through erfc on the lower tail and reflected for positive
/// arguments, so both tails keep full relative precision. Absolute error is
/// below 1e-15 on [-8, 8]. Throws std::domain_error on NaN; accepts +-inf.
double phi_cdf(double t);

/// Upper tail 1 - phi_cdf(t) without cancellation.
double phi_ccdf(double t);

/// Standard normal density. Throws std::domain_error on NaN.
double phi_pdf(double t);

/// Standard normal quantile for 0 < p < 1.
///
/// Rational initial guess (Acklam) refined by Halley steps against phi_cdf.
/// Computed on the lower half and reflected, so phi_inv(1 - p) == -phi_inv(p)
/// whenever 1 - p is exact. Throws std::domain_error outside (0, 1).
double phi_inv(double p);

} // namespace sumbound
