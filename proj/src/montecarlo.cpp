#include "sumbound/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sumbound {

namespace {

std::size_t block_count(std::size_t n) { return (n + kSampleBlock - 1) / kSampleBlock; }

void fill_block(const DependenceModel& model, const SumProblem& problem, RandomStream rng,
                std::span<double> out)
{
    for (double& s : out) {
        s = sample_sum(model, problem, rng);
    }
}

// Inversions of v (pairs i < j with v[i] > v[j]), sorting v in the process.
std::uint64_t count_inversions(std::vector<double>& v)
{
    std::vector<double> buf(v.size());
    std::uint64_t inversions = 0;
    for (std::size_t width = 1; width < v.size(); width *= 2) {
        for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, v.size());
            const std::size_t hi = std::min(lo + 2 * width, v.size());
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (v[j] < v[i]) {
                    inversions += mid - i;
                    buf[k++] = v[j++];
                } else {
                    buf[k++] = v[i++];
                }
            }
            while (i < mid) {
                buf[k++] = v[i++];
            }
            while (j < hi) {
                buf[k++] = v[j++];
            }
        }
        v.swap(buf);
    }
    return inversions;
}

} // namespace

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples))
{
    if (sorted_.empty()) {
        throw std::domain_error("EmpiricalCdf: empty sample");
    }
    if (!std::all_of(sorted_.begin(), sorted_.end(), [](double s) { return std::isfinite(s); })) {
        throw std::domain_error("EmpiricalCdf: non-finite sample");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double t) const noexcept
{
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double dkw_epsilon(std::size_t n, double delta)
{
    if (n == 0 || !(delta > 0.0 && delta < 1.0)) {
        throw std::domain_error("dkw_epsilon: need n >= 1 and 0 < delta < 1");
    }
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

std::vector<double> draw_sums_serial(const DependenceModel& model, const SumProblem& problem,
                                     std::size_t n, std::uint64_t seed)
{
    std::vector<double> out(n);
    const auto streams = RandomStream::substreams(seed, block_count(n));
    for (std::size_t b = 0; b < streams.size(); ++b) {
        const std::size_t lo = b * kSampleBlock;
        const std::size_t len = std::min(kSampleBlock, n - lo);
        fill_block(model, problem, streams[b], std::span<double>(out).subspan(lo, len));
    }
    return out;
}

std::vector<double> draw_sums(const DependenceModel& model, const SumProblem& problem,
                              std::size_t n, std::uint64_t seed)
{
    std::vector<double> out(n);
    const auto streams = RandomStream::substreams(seed, block_count(n));
    const auto blocks = static_cast<std::ptrdiff_t>(streams.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kSampleBlock;
        const std::size_t len = std::min(kSampleBlock, n - lo);
        fill_block(model, problem, streams[b], std::span<double>(out).subspan(lo, len));
    }
    return out;
}

std::vector<double> default_z_grid(const SumProblem& problem, std::size_t points)
{
    const double half = 4.0 * (problem.x.sigma() + problem.y.sigma());
    return linspace(problem.mean_sum() - half, problem.mean_sum() + half, points);
}

ContainmentReport verify_containment(const SumProblem& problem, const DependenceModel& model,
                                     std::size_t n, std::span<const double> z_grid,
                                     std::uint64_t seed, const VerifyOptions& options)
{
    if (n < 1000) {
        throw std::invalid_argument("verify_containment: need at least 1000 samples");
    }
    const BoundCurve bounds = bound_curve(problem, z_grid);
    const EmpiricalCdf ecdf(draw_sums(model, problem, n, seed));
    const double eps = dkw_epsilon(n, options.delta);

    double low = 0.0;
    double high = 0.0;
    for (const BoundPoint& bp : bounds.points) {
        const double f = ecdf(bp.z);
        low = std::max(low, bp.lower - f);
        high = std::max(high, f - (bp.upper - options.upper_shift));
    }
    return {model, n, eps, low, high, low <= eps && high <= eps};
}

double kendall_tau_estimate(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("kendall_tau_estimate: need two equal-length samples, n >= 2");
    }
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ys(order.size());
    std::transform(order.begin(), order.end(), ys.begin(), [&](std::size_t i) { return y[i]; });

    const double n = static_cast<double>(x.size());
    const double pairs = 0.5 * n * (n - 1.0);
    const double discordant = static_cast<double>(count_inversions(ys));
    return 1.0 - 2.0 * discordant / pairs;
}

double ks_uniform_statistic(std::span<const double> u)
{
    if (u.empty()) {
        throw std::invalid_argument("ks_uniform_statistic: empty sample");
    }
    std::vector<double> s(u.begin(), u.end());
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double c = std::clamp(s[i], 0.0, 1.0);
        d = std::max({d, static_cast<double>(i + 1) / n - c, c - static_cast<double>(i) / n});
    }
    return d;
}

} // namespace sumbound
