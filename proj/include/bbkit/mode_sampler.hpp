// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbkit/constants.hpp"

namespace bbkit::mc {

/// Boundary condition of the cavity mode grid.
///
/// standing_wave: perfectly reflecting box, positive integer indices,
///   f = (c/2L) ||n||. The mode count below a frequency carries a negative
///   surface term of relative size ~1/(L k_B T / hc), so bulk observables
///   converge to the infinite-volume forms only as O(1/L).
///
/// periodic: wrapped box, integer indices of either sign, f = (c/L) ||n||.
///   Same bulk mode density, no surface term; finite-size deviations from
///   the infinite-volume forms fall off faster than any needed here. Used
///   where sampled totals are compared against closed-form bulk values.
enum class BoundaryCondition { standing_wave, periodic };

struct CavitySpec {
    int dimension = 3;
    double edge_length = 0.01;  // m
    int polarizations = 2;
    double x_max = 30.0;        // mode-energy cutoff, hf/k_B T <= x_max
    BoundaryCondition boundary = BoundaryCondition::standing_wave;
    std::uint64_t mode_limit = 50'000'000;  // materialized-mode safety limit

    void validate() const;
};

/// Cavity with the conventional polarization default: 2 for d = 3, 1 below.
CavitySpec make_cavity(int dimension, double edge_length, double x_max,
                       BoundaryCondition boundary = BoundaryCondition::standing_wave);

/// One cavity normal mode. Quantum energy is occupation * h * f; the momentum
/// modulus is h f / c. Unused index slots stay 0.
struct Mode {
    std::array<int, 3> indices{};
    double frequency = 0.0;  // Hz
    double momentum = 0.0;   // kg m/s
    long long occupation = 0;
    double energy = 0.0;     // J
};

/// Raised when a run would exceed a configured resource limit; the message
/// names the limit.
class mode_limit_error : public std::runtime_error {
public:
    explicit mode_limit_error(const std::string& what) : std::runtime_error(what) {}
};

/// All modes with hf/k_B T <= x_max, each repeated per polarization,
/// in lexicographic index order. Fails with mode_limit_error when the
/// projected count exceeds spec.mode_limit.
std::vector<Mode> enumerate_modes(const CavitySpec& spec, double temperature,
                                  const PhysicalConstants& constants);

struct SampleEstimate {
    double mean_photon_number = 0.0;     // mean over draws of total N
    double mean_energy = 0.0;            // mean over draws of total U, J
    double std_err_photon_number = 0.0;  // from independent-draw variance
    double std_err_energy = 0.0;         // J
    long long draws = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo estimate over an explicit mode list. Each (draw, mode) pair
/// samples an occupation from the geometric distribution P(n) = (1-q) q^n,
/// q = e^(-hf/k_B T), by inverse CDF. Identical (modes, T, draws, seed)
/// yield bit-identical estimates; draws may be processed in parallel because
/// each draw has its own derived random stream.
SampleEstimate sample_occupations(const std::vector<Mode>& modes, double temperature,
                                  long long draws, std::uint64_t seed,
                                  const PhysicalConstants& constants);

/// Classical equipartition total for the listed modes: k_B T per mode.
double classical_mode_energy(const std::vector<Mode>& modes, double temperature,
                             const PhysicalConstants& constants);

struct ScalingPoint {
    double temperature = 0.0;
    double mean_energy = 0.0;
    double std_err_energy = 0.0;
    double mean_photon_number = 0.0;
    double std_err_photon_number = 0.0;
};

/// Runs the occupation sampler at each grid temperature with a seed derived
/// per point (rng::derive_seed(seed, point_index)). Requires >= 4 strictly
/// positive temperatures spanning at least a factor 4.
std::vector<ScalingPoint> scaling_experiment(const CavitySpec& spec,
                                             std::span<const double> temperatures,
                                             long long draws, std::uint64_t seed,
                                             const PhysicalConstants& constants);

/// Exact aggregated estimator: modes sharing one frequency shell are sampled
/// together as a negative binomial (the distribution of a sum of independent
/// geometrics), so the estimate has exactly the same distribution as
/// enumerate_modes + sample_occupations while the cost scales with the number
/// of distinct shells instead of modes. This is what makes centimeter-scale
/// cavities (~10^12 modes) samplable. Shell bins are capped at 2^28; beyond
/// that a mode_limit_error names the limit.
SampleEstimate cavity_estimate(const CavitySpec& spec, double temperature, long long draws,
                               std::uint64_t seed, const PhysicalConstants& constants);

/// Deterministic infinite-draw expectation of the sampled totals for the
/// cavity's mode set, plus the exact mode count.
struct CavityExpectation {
    double photon_number = 0.0;
    double energy = 0.0;  // J
    std::uint64_t modes = 0;
};

CavityExpectation cavity_expectation(const CavitySpec& spec, double temperature,
                                     const PhysicalConstants& constants);

}  // namespace bbkit::mc
