// SPDX-License-Identifier: Apache-2.0
#include "bbkit/photon_gas.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bbkit/special_functions.hpp"

namespace bbkit::photon {

using std::numbers::pi;

double stefan_boltzmann_sigma(const PhysicalConstants& k) {
    k.validate();
    const double kb4 = k.k_B * k.k_B * k.k_B * k.k_B;
    const double h3 = k.h * k.h * k.h;
    const double pi5 = pi * pi * pi * pi * pi;
    return 2.0 * pi5 * kb4 / (15.0 * h3 * k.c * k.c);
}

double radiation_constant(const PhysicalConstants& k) {
    return 4.0 * stefan_boltzmann_sigma(k) / k.c;
}

GasObservables observables(double volume, double temperature, const PhysicalConstants& k) {
    k.validate();
    if (!(volume > 0.0)) throw std::domain_error("observables: volume must be > 0");
    if (!(temperature >= 0.0)) throw std::domain_error("observables: temperature must be >= 0");

    GasObservables out;
    out.volume = volume;
    out.temperature = temperature;
    if (temperature == 0.0) return out;

    const double hc3 = (k.h * k.c) * (k.h * k.c) * (k.h * k.c);
    const double kt = k.k_B * temperature;
    const double g3z3 = specfun::gamma_int(3) * specfun::riemann_zeta(3.0);
    const double g4z4 = specfun::gamma_int(4) * specfun::riemann_zeta(4.0);

    out.mean_photon_number = 8.0 * pi * g3z3 / hc3 * volume * kt * kt * kt;
    out.internal_energy = 8.0 * pi * g4z4 / hc3 * volume * kt * kt * kt * kt;
    out.pressure = out.internal_energy / (3.0 * volume);
    out.energy_per_photon = out.internal_energy / out.mean_photon_number;
    return out;
}

double pressure_law(double temperature, const PhysicalConstants& k) {
    if (!(temperature >= 0.0)) throw std::domain_error("pressure_law: temperature must be >= 0");
    const double t2 = temperature * temperature;
    return radiation_constant(k) / 3.0 * t2 * t2;
}

double spectral_density(double frequency, double temperature, SpectralModel model,
                        const PhysicalConstants& k) {
    k.validate();
    if (!(temperature > 0.0))
        throw std::domain_error("spectral_density: temperature must be > 0");
    if (!(frequency >= 0.0)) throw std::domain_error("spectral_density: frequency must be >= 0");
    if (frequency == 0.0) return 0.0;

    const double c3 = k.c * k.c * k.c;
    if (model == SpectralModel::rayleigh_jeans)
        return 8.0 * pi * frequency * frequency * k.k_B * temperature / c3;

    const double x = k.h * frequency / (k.k_B * temperature);
    return 8.0 * pi * k.h * frequency * frequency * frequency / (c3 * std::expm1(x));
}

SpectralPoint spectral_point(double frequency, double temperature, SpectralModel model,
                             const PhysicalConstants& k) {
    return SpectralPoint{frequency, spectral_density(frequency, temperature, model, k), model};
}

double classical_cutoff_energy(double volume, double temperature, double f_cutoff,
                               const PhysicalConstants& k) {
    k.validate();
    if (!(volume > 0.0)) throw std::domain_error("classical_cutoff_energy: volume must be > 0");
    if (!(temperature > 0.0))
        throw std::domain_error("classical_cutoff_energy: temperature must be > 0");
    if (!(f_cutoff > 0.0))
        throw std::domain_error("classical_cutoff_energy: f_cutoff must be > 0");
    const double f3 = f_cutoff * f_cutoff * f_cutoff;
    const double c3 = k.c * k.c * k.c;
    return 8.0 * pi / 3.0 * f3 / c3 * volume * k.k_B * temperature;
}

double quantum_energy(double volume, double temperature, const PhysicalConstants& k,
                      double x_max) {
    k.validate();
    if (!(volume > 0.0)) throw std::domain_error("quantum_energy: volume must be > 0");
    if (!(temperature > 0.0)) throw std::domain_error("quantum_energy: temperature must be > 0");
    if (!(x_max > 0.0)) throw std::domain_error("quantum_energy: x_max must be > 0");

    const double integral =
        x_max >= 10.0
            ? specfun::bose_einstein_integral(4.0, specfun::IntegralMethod::quadrature, x_max)
            : specfun::bose_einstein_partial(4.0, x_max);
    const double hc3 = (k.h * k.c) * (k.h * k.c) * (k.h * k.c);
    const double kt = k.k_B * temperature;
    return 8.0 * pi / hc3 * volume * kt * kt * kt * kt * integral;
}

DimensionalExponents dimensional_exponents(int dimension) {
    if (dimension < 1 || dimension > 3)
        throw std::domain_error("dimensional_exponents: dimension must be 1, 2 or 3");
    return DimensionalExponents{dimension + 1, dimension};
}

}  // namespace bbkit::photon
