// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace bbkit {

/// Fundamental constants defining the unit system (SI, CODATA 2018 exact values).
/// All cavity and gas computations take the constants explicitly so that
/// classical-limit experiments (h -> 0) can rescale them.
struct PhysicalConstants {
    double h = 6.62607015e-34;    // Planck constant, J s
    double c = 2.99792458e8;      // speed of light in vacuum, m/s
    double k_B = 1.380649e-23;    // Boltzmann constant, J/K

    /// Throws std::domain_error unless all constants are strictly positive and finite.
    void validate() const;
};

}  // namespace bbkit
