// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bbkit/constants.hpp"

namespace bbkit::photon {

/// Photon-gas bulk observables at a given volume and temperature.
/// internal_energy = 3 * pressure * volume holds by construction;
/// energy_per_photon is defined as 0 at T = 0.
struct GasObservables {
    double mean_photon_number = 0.0;  // dimensionless
    double internal_energy = 0.0;     // J
    double pressure = 0.0;            // Pa
    double energy_per_photon = 0.0;   // J
    double temperature = 0.0;         // K
    double volume = 0.0;              // m^3
};

enum class SpectralModel { planck, rayleigh_jeans };

/// One point of a spectral energy density curve, J s / m^3 per unit frequency.
struct SpectralPoint {
    double frequency = 0.0;       // Hz
    double energy_density = 0.0;  // J s / m^3
    SpectralModel model = SpectralModel::planck;
};

/// Normative exponents for the temperature power laws in d dimensions:
/// U ~ T^(d+1), N ~ T^d. Prefactors in d < 3 are not part of the contract.
struct DimensionalExponents {
    int energy_exponent = 0;
    int number_exponent = 0;
};

/// sigma = 2 pi^5 k_B^4 / (15 h^3 c^2), W m^-2 K^-4.
double stefan_boltzmann_sigma(const PhysicalConstants& constants);

/// Radiation constant C = 4 sigma / c, J m^-3 K^-4; the coefficient of V T^4
/// in the total energy. Diverges as h -> 0 (scales 8x per halving of h).
double radiation_constant(const PhysicalConstants& constants);

/// Closed-form observables; V > 0, T >= 0.
GasObservables observables(double volume, double temperature,
                           const PhysicalConstants& constants);

/// P(T) = C/3 * T^4, Pa; T >= 0.
double pressure_law(double temperature, const PhysicalConstants& constants);

/// Spectral energy density at frequency f and temperature T > 0.
///   planck:         (8 pi h f^3 / c^3) / (e^(hf/k_B T) - 1)
///   rayleigh_jeans: 8 pi f^2 k_B T / c^3
/// Both return 0 at f = 0 (limit value).
double spectral_density(double frequency, double temperature, SpectralModel model,
                        const PhysicalConstants& constants);

/// Same evaluation as a curve point.
SpectralPoint spectral_point(double frequency, double temperature, SpectralModel model,
                             const PhysicalConstants& constants);

/// Classical equipartition energy integrated up to f_cutoff:
/// (8 pi / 3) (f_cutoff^3 / c^3) V k_B T. Unbounded as f_cutoff -> infinity.
double classical_cutoff_energy(double volume, double temperature, double f_cutoff,
                               const PhysicalConstants& constants);

/// Total Planck energy evaluated with spectral truncation parameter x_max
/// (x = hf/k_B T). For x_max >= 10 the truncated integral carries the
/// budgeted tail estimate, so the value is stable in x_max to better than
/// 1e-10 relative beyond x_max = 30; below 10 it is the plain energy
/// content under the cutoff.
double quantum_energy(double volume, double temperature, const PhysicalConstants& constants,
                      double x_max = 40.0);

/// d in {1, 2, 3} -> (d+1, d).
DimensionalExponents dimensional_exponents(int dimension);

}  // namespace bbkit::photon
