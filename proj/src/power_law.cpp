// SPDX-License-Identifier: Apache-2.0
#include "bbkit/power_law.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bbkit::fit {

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
    const size_t n = points.size();
    if (n < 2) throw std::domain_error("fit_power_law: need at least 2 points");

    std::vector<double> lx(n), ly(n);
    for (size_t i = 0; i < n; ++i) {
        const auto [t, y] = points[i];
        if (!(t > 0.0) || !(y > 0.0) || !std::isfinite(t) || !std::isfinite(y))
            throw std::domain_error("fit_power_law: values must be positive and finite");
        lx[i] = std::log(t);
        ly[i] = std::log(y);
    }

    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= double(n);
    my /= double(n);

    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_power_law: degenerate fit, all abscissas equal");

    PowerLawFit fit;
    fit.n_points = int(n);
    fit.exponent = sxy / sxx;
    fit.log_prefactor = my - fit.exponent * mx;

    double ss_res = 0.0, ss_tot = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.log_prefactor + fit.exponent * lx[i]);
        ss_res += r * r;
        ss_tot += (ly[i] - my) * (ly[i] - my);
    }
    fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    if (n > 2) fit.exponent_std_err = std::sqrt(ss_res / (double(n) - 2.0) / sxx);
    return fit;
}

bool exponent_consistent(const PowerLawFit& fit, double target, double k_sigma) {
    if (!(k_sigma > 0.0)) throw std::domain_error("exponent_consistent: k_sigma must be > 0");
    return std::fabs(fit.exponent - target) <= k_sigma * fit.exponent_std_err;
}

}  // namespace bbkit::fit
