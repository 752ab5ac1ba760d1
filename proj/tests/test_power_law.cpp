// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <doctest.h>

#include "bbkit/photon_gas.hpp"
#include "bbkit/power_law.hpp"
#include "bbkit/rng.hpp"

using namespace bbkit;
using namespace bbkit::fit;

namespace {
std::vector<std::pair<double, double>> power_data(double a, double n,
                                                  const std::vector<double>& ts) {
    std::vector<std::pair<double, double>> pts;
    for (double t : ts) pts.emplace_back(t, a * std::pow(t, n));
    return pts;
}
}  // namespace

TEST_CASE("exact power-law data is fit exactly") {
    const auto fit =
        fit_power_law(power_data(2.5e-7, 4.0, {50, 80, 130, 210, 340, 550, 890, 1440}));
    CHECK(std::fabs(fit.exponent - 4.0) < 1e-9);
    CHECK(std::fabs(fit.exponent - 4.0) < 1e-12);
    CHECK(std::fabs(fit.r_squared - 1.0) < 1e-12);
    CHECK(fit.n_points == 8);
    CHECK(fit.exponent_std_err < 1e-12);
    CHECK(std::exp(fit.log_prefactor) == doctest::Approx(2.5e-7).epsilon(1e-9));
}

TEST_CASE("two points pin the exponent") {
    std::vector<std::pair<double, double>> pts{{37.0, 5.0}, {74.0, 80.0}};
    const auto fit = fit_power_law(pts);
    CHECK(fit.exponent == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(fit.exponent_std_err == 0.0);
    CHECK(fit.r_squared == 1.0);
}

TEST_CASE("closed-form internal energy fits to exponent 4") {
    const PhysicalConstants k{};
    std::vector<std::pair<double, double>> pts;
    for (double t : {100.0, 200.0, 400.0, 800.0})
        pts.emplace_back(t, photon::observables(1.0, t, k).internal_energy);
    const auto fit = fit_power_law(pts);
    CHECK(std::fabs(fit.exponent - 4.0) < 1e-9);
}

TEST_CASE("domain and degeneracy errors") {
    std::vector<std::pair<double, double>> one{{2.0, 3.0}};
    CHECK_THROWS_AS(fit_power_law(one), std::domain_error);

    std::vector<std::pair<double, double>> neg{{2.0, 3.0}, {4.0, -1.0}};
    CHECK_THROWS_AS(fit_power_law(neg), std::domain_error);

    std::vector<std::pair<double, double>> zero_t{{0.0, 3.0}, {4.0, 1.0}};
    CHECK_THROWS_AS(fit_power_law(zero_t), std::domain_error);

    std::vector<std::pair<double, double>> dup{{2.0, 3.0}, {2.0, 5.0}};
    CHECK_THROWS_AS(fit_power_law(dup), std::invalid_argument);
}

TEST_CASE("exponent_consistent gate") {
    PowerLawFit fit;
    fit.exponent = 4.001;
    fit.exponent_std_err = 0.01;
    fit.n_points = 8;
    CHECK(exponent_consistent(fit, 4.0, 3.0));
    fit.exponent = 3.5;
    CHECK_FALSE(exponent_consistent(fit, 4.0, 3.0));
    CHECK_THROWS_AS(exponent_consistent(fit, 4.0, 0.0), std::domain_error);
}

TEST_CASE("scale invariance: rescaling y moves only the prefactor") {
    const auto base = power_data(3.0e-4, 2.7, {10, 25, 60, 150, 400});
    auto scaled = base;
    for (auto& [t, y] : scaled) y *= 4096.0;
    const auto f0 = fit_power_law(base);
    const auto f1 = fit_power_law(scaled);
    CHECK(std::fabs(f1.exponent - f0.exponent) <= 1e-13 * std::fabs(f0.exponent));
    CHECK(std::fabs(f1.r_squared - f0.r_squared) <= 1e-13);
    CHECK(f1.log_prefactor - f0.log_prefactor ==
          doctest::Approx(std::log(4096.0)).epsilon(1e-10));
}

TEST_CASE("units invariance: rescaling T leaves the exponent") {
    const auto base = power_data(1.7, 3.2, {4, 9, 21, 55, 140, 390});
    auto scaled = base;
    for (auto& [t, y] : scaled) t *= 3.7;
    const auto f0 = fit_power_law(base);
    const auto f1 = fit_power_law(scaled);
    CHECK(std::fabs(f1.exponent - f0.exponent) <= 1e-12 * std::fabs(f0.exponent));
}

TEST_CASE("noise robustness: 3-sigma coverage under log-normal noise") {
    std::vector<double> ts;
    for (int i = 0; i < 16; ++i) ts.push_back(100.0 * std::pow(1.25, i));
    const auto clean = power_data(1e-10, 4.0, ts);

    int covered = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        rng::Stream st(99, std::uint64_t(trial));
        auto noisy = clean;
        for (auto& [t, y] : noisy) y *= std::exp(0.01 * st.next_normal());
        const auto fit = fit_power_law(noisy);
        if (std::fabs(fit.exponent - 4.0) <= 3.0 * fit.exponent_std_err) ++covered;
    }
    CHECK(covered >= 950);
}
