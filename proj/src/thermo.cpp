// SPDX-License-Identifier: Apache-2.0
#include "bbkit/thermo.hpp"

#include <cmath>
#include <stdexcept>

namespace bbkit::thermo {

ThermoState make_state(double pressure, double volume, double temperature, double alpha) {
    if (!(pressure > 0.0)) throw std::domain_error("make_state: pressure must be > 0");
    if (!(volume > 0.0)) throw std::domain_error("make_state: volume must be > 0");
    if (!(temperature > 0.0)) throw std::domain_error("make_state: temperature must be > 0");
    if (!(alpha > 0.0)) throw std::domain_error("make_state: alpha must be > 0");
    ThermoState s;
    s.pressure = pressure;
    s.volume = volume;
    s.temperature = temperature;
    s.alpha = alpha;
    s.internal_energy = alpha * pressure * volume;
    return s;
}

double pressure_exponent(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("pressure_exponent: alpha must be > 0");
    return alpha + 1.0;
}

double integrate_pressure(double t0, double p0, double t1, double alpha, int steps) {
    if (!(t0 > 0.0) || !(t1 > 0.0)) throw std::domain_error("integrate_pressure: T must be > 0");
    if (!(p0 > 0.0)) throw std::domain_error("integrate_pressure: p0 must be > 0");
    if (!(alpha > 0.0)) throw std::domain_error("integrate_pressure: alpha must be > 0");
    if (steps < 1) throw std::domain_error("integrate_pressure: steps must be >= 1");

    const double lambda = alpha + 1.0;
    const double h = (std::log(t1) - std::log(t0)) / steps;
    double p = p0;
    for (int i = 0; i < steps; ++i) {
        const double k1 = lambda * p;
        const double k2 = lambda * (p + 0.5 * h * k1);
        const double k3 = lambda * (p + 0.5 * h * k2);
        const double k4 = lambda * (p + h * k3);
        p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return p;
}

HeatWork heat_and_work(const ThermoState& state, double volume_change) {
    if (!(state.pressure > 0.0) || !(state.volume > 0.0) || !(state.temperature > 0.0) ||
        !(state.alpha > 0.0))
        throw std::domain_error("heat_and_work: invalid state");

    HeatWork d;
    d.work = state.pressure * volume_change;
    d.heat = (state.alpha + 1.0) * d.work;
    d.energy_change = d.heat - d.work;  // first-law closure is exact by construction
    return d;
}

}  // namespace bbkit::thermo
