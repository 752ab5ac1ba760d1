// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>

namespace bbkit::fit {

/// Result of an ordinary least-squares fit of ln y = exponent * ln T + log_prefactor.
struct PowerLawFit {
    double exponent = 0.0;
    double log_prefactor = 0.0;       // natural log of the prefactor
    double exponent_std_err = 0.0;    // 0 for a two-point (exact) fit
    double r_squared = 0.0;           // 1 when the data is exactly a power law
    int n_points = 0;
};

/// Fits a power law y = a T^n to positive (T, y) pairs by least squares in
/// log-log space. Requires >= 2 points with at least two distinct T values;
/// all values must be positive and finite. Duplicate-only abscissas raise
/// std::invalid_argument (degenerate fit), bad values std::domain_error.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points);

/// True iff |fit.exponent - target| <= k_sigma * fit.exponent_std_err.
bool exponent_consistent(const PowerLawFit& fit, double target, double k_sigma);

}  // namespace bbkit::fit
