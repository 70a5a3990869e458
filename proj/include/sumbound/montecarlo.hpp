#pragma once

#include "sumbound/copula.hpp"
#include "sumbound/makarov.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sumbound {

/// Right-continuous step CDF of a finite sample.
class EmpiricalCdf {
public:
    /// Takes ownership and sorts. Throws std::domain_error on an empty or
    /// non-finite sample.
    explicit EmpiricalCdf(std::vector<double> samples);

    std::size_t size() const noexcept { return sorted_.size(); }
    std::span<const double> sorted_samples() const noexcept { return sorted_; }

    /// Fraction of samples <= t.
    double operator()(double t) const noexcept;

private:
    std::vector<double> sorted_;
};

inline double ecdf_eval(const EmpiricalCdf& e, double t) noexcept { return e(t); }

/// Dvoretzky-Kiefer-Wolfowitz half-width sqrt(ln(2 / delta) / (2 n)).
double dkw_epsilon(std::size_t n, double delta);

struct ContainmentReport {
    DependenceModel model;
    std::size_t n;
    double epsilon;
    double max_violation_low;  // max over grid of lower - ECDF, floored at 0
    double max_violation_high; // max over grid of ECDF - upper, floored at 0
    bool passed;

    friend bool operator==(const ContainmentReport&, const ContainmentReport&) = default;
};

struct VerifyOptions {
    double delta = 0.01;
    /// Subtracted from the upper bound before comparing; a fault-injection
    /// hook for exercising the failure path. Zero in normal use.
    double upper_shift = 0.0;
};

/// Samples per substream. Block b of a run always uses substream b, which
/// makes the draw independent of the number of worker threads.
inline constexpr std::size_t kSampleBlock = 4096;

/// n draws of X + Y under model, in block order (OpenMP-parallel over blocks).
std::vector<double> draw_sums(const DependenceModel& model, const SumProblem& problem,
                              std::size_t n, std::uint64_t seed);

/// Single-threaded reference for draw_sums; returns identical values.
std::vector<double> draw_sums_serial(const DependenceModel& model, const SumProblem& problem,
                                     std::size_t n, std::uint64_t seed);

/// 200 points spanning mean_sum() +- 4 (sigma_x + sigma_y).
std::vector<double> default_z_grid(const SumProblem& problem, std::size_t points = 200);

/// Compare the empirical law of n simulated sums with the analytic bounds
/// on z_grid, using the DKW band as slack. Deterministic in seed.
/// Throws std::invalid_argument for n < 1000.
ContainmentReport verify_containment(const SumProblem& problem, const DependenceModel& model,
                                     std::size_t n, std::span<const double> z_grid,
                                     std::uint64_t seed, const VerifyOptions& options = {});

/// Kendall's tau-a in O(n log n); assumes no ties.
double kendall_tau_estimate(std::span<const double> x, std::span<const double> y);

/// One-sample Kolmogorov-Smirnov distance of the sample from U(0, 1).
double ks_uniform_statistic(std::span<const double> u);

} // namespace sumbound
