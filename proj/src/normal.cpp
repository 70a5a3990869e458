#include "sumbound/normal.hpp"

#include <array>
#include <numbers>
#include <string>

namespace sumbound {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934381868;

void require_not_nan(double v, const char* where)
{
    if (std::isnan(v)) {
        throw std::domain_error(std::string(where) + ": NaN argument");
    }
}

// Lower-tail probability for t <= 0; erfc keeps relative accuracy there.
double lower_tail(double t) noexcept
{
    return 0.5 * std::erfc(-t * std::numbers::sqrt2 * 0.5);
}

// Acklam's rational approximation, relative error ~1.2e-9, for p <= 0.5.
double acklam_lower(double p) noexcept
{
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                             -2.759285104469687e+02, 1.383577518672690e+02,
                                             -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                             -1.556989798598866e+02, 6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                             -2.400758277161838e+00, -2.549732539343734e+00,
                                             4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                             2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

} // namespace

double phi_cdf(double t)
{
    require_not_nan(t, "phi_cdf");
    if (t < -kPhiSaturation) {
        return 0.0;
    }
    if (t > kPhiSaturation) {
        return 1.0;
    }
    if (t <= 0.0) {
        return lower_tail(t);
    }
    return 1.0 - lower_tail(-t);
}

double phi_ccdf(double t)
{
    require_not_nan(t, "phi_ccdf");
    return phi_cdf(-t);
}

double phi_pdf(double t)
{
    require_not_nan(t, "phi_pdf");
    return kInvSqrt2Pi * std::exp(-0.5 * t * t);
}

double phi_inv(double p)
{
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("phi_inv: probability must lie in (0, 1)");
    }
    if (p == 0.5) {
        return 0.0;
    }
    // Solve on the lower half; 1 - p is exact for p >= 0.5.
    const bool upper = p > 0.5;
    const double pl = upper ? 1.0 - p : p;

    double x = acklam_lower(pl);
    for (int step = 0; step < 2; ++step) {
        const double density = kInvSqrt2Pi * std::exp(-0.5 * x * x);
        if (!(density > 0.0) || x < -kPhiSaturation) {
            break;
        }
        const double err = lower_tail(x) - pl;
        const double u = err / density;
        x -= u / (1.0 + 0.5 * x * u);
    }
    return upper ? -x : x;
}

} // namespace sumbound
