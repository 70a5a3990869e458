#include "oracles.hpp"
#include "sumbound/normal.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

using namespace sumbound;

TEST_CASE("NormalMarginal rejects bad scale")
{
    CHECK_THROWS_AS(NormalMarginal(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(NormalMarginal(0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(NormalMarginal(std::nan(""), 1.0), std::domain_error);
    CHECK_THROWS_AS(NormalMarginal(0.0, std::numeric_limits<double>::infinity()),
                    std::domain_error);
    const NormalMarginal m(1.0, 0.1);
    CHECK(m.standardize(1.2) == doctest::Approx(2.0));
}

TEST_CASE("erf oracle agrees with the frozen mpmath table")
{
    for (const auto& ref : oracle::kPhiReference) {
        CAPTURE(ref.t);
        CHECK(std::abs(oracle::phi_cdf(ref.t) - ref.value) < 1e-15);
    }
}

TEST_CASE("phi_cdf examples")
{
    CHECK(phi_cdf(0.0) == 0.5);
    CHECK(std::abs(phi_cdf(1.5) + phi_cdf(-1.5) - 1.0) < 1e-13);
    CHECK(std::abs(phi_cdf(1.96) - 0.9750021049) < 1e-9);
    CHECK(phi_cdf(-std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(phi_cdf(std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(phi_cdf(-38.5) == 0.0);
    CHECK(phi_cdf(38.5) == 1.0);
    CHECK_THROWS_AS(phi_cdf(std::nan("")), std::domain_error);
}

TEST_CASE("phi_cdf absolute error against the oracle on [-8, 8]")
{
    double worst = 0.0;
    for (double t = -8.0; t <= 8.0; t += 0.01) {
        worst = std::max(worst, std::abs(phi_cdf(t) - oracle::phi_cdf(t)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("phi_cdf lower tail keeps relative precision")
{
    for (double t : {-10.0, -20.0, -30.0}) {
        CAPTURE(t);
        CHECK(phi_cdf(t) == doctest::Approx(oracle::phi_cdf(t)).epsilon(1e-12));
        CHECK(phi_ccdf(-t) == phi_cdf(t));
    }
}

TEST_CASE("phi_cdf is monotone and reflection-symmetric on random points")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> dist(-8.0, 8.0);
    std::vector<double> ts(10000);
    for (auto& t : ts) {
        t = dist(gen);
    }
    std::sort(ts.begin(), ts.end());
    double prev = 0.0;
    for (double t : ts) {
        const double v = phi_cdf(t);
        CHECK(v >= prev);
        prev = v;
        CHECK(std::abs(v + phi_cdf(-t) - 1.0) <= 1e-13);
        // Representable neighbours.
        CHECK(phi_cdf(std::nextafter(t, 9.0)) >= v);
        CHECK(phi_cdf(std::nextafter(t, -9.0)) <= v);
    }
}

TEST_CASE("phi_pdf examples and accuracy")
{
    CHECK(std::abs(phi_pdf(0.0) - 0.3989422804) < 1e-9);
    CHECK(phi_pdf(2.0) == phi_pdf(-2.0));
    CHECK(std::abs(phi_pdf(1.0) - 0.2419707245) < 1e-9);
    for (double t = -10.0; t <= 10.0; t += 0.05) {
        CAPTURE(t);
        CHECK(phi_pdf(t) == doctest::Approx(oracle::phi_pdf(t)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(phi_pdf(std::nan("")), std::domain_error);
}

TEST_CASE("phi_pdf is the derivative of phi_cdf")
{
    for (double t = -6.0; t <= 6.0; t += 0.1) {
        CAPTURE(t);
        const double fd = (phi_cdf(t + 1e-5) - phi_cdf(t - 1e-5)) / 2e-5;
        CHECK(std::abs(fd - phi_pdf(t)) <= 1e-8);
    }
}

TEST_CASE("phi_inv inverts phi_cdf on [-6, 5.6]")
{
    for (double t = -6.0; t <= 5.6; t += 0.001) {
        CAPTURE(t);
        CHECK(std::abs(phi_inv(phi_cdf(t)) - t) <= 1e-9);
    }
}

TEST_CASE("phi_inv examples")
{
    CHECK(phi_inv(0.5) == 0.0);
    CHECK(std::abs(phi_inv(phi_cdf(1.2345)) - 1.2345) < 1e-9);
    CHECK(std::abs(phi_inv(0.975) - 1.9599640) < 1e-6);
    for (double p : {0.0, 1.0, -0.1, 1.5}) {
        CHECK_THROWS_AS(phi_inv(p), std::domain_error);
    }
    CHECK_THROWS_AS(phi_inv(std::nan("")), std::domain_error);
}

TEST_CASE("phi_inv residual and odd symmetry")
{
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int i = 0; i < 20000; ++i) {
        double p = dist(gen);
        if (p == 0.0) {
            continue;
        }
        CAPTURE(p);
        CHECK(std::abs(phi_cdf(phi_inv(p)) - p) <= 1e-11);
        CHECK(std::abs(phi_inv(1.0 - p) + phi_inv(p)) <= 1e-11 * (1.0 + std::abs(phi_inv(p))));
    }
    for (double p : {1e-300, 1e-100, 1e-20, 1e-10, 0.02425, 0.97575, 1.0 - 1e-12}) {
        CAPTURE(p);
        CHECK(phi_cdf(phi_inv(p)) == doctest::Approx(p).epsilon(1e-11));
    }
}

// Above t ~ 5.63 neighbouring doubles near 1 are further apart than
// phi_pdf(t) * 1e-9, so no double-valued phi_cdf can round-trip there; see
// the acceptance suite, which reports this as a failing criterion.
TEST_CASE("phi_inv inverts phi_cdf on [-6, 6]" * doctest::may_fail())
{
    for (double t = -6.0; t <= 6.0; t += 0.001) {
        CAPTURE(t);
        CHECK(std::abs(phi_inv(phi_cdf(t)) - t) <= 1e-9);
    }
}
