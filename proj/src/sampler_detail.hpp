// SPDX-License-Identifier: Apache-2.0
#pragma once

// Internals shared between the per-mode sampler and the shell-aggregated
// sampler. Not part of the public surface.

#include <cstdint>
#include <span>
#include <vector>

#include "bbkit/constants.hpp"
#include "bbkit/mode_sampler.hpp"

namespace bbkit::mc::detail {

struct DrawTotals {
    double n = 0.0;   // total photon number in the draw
    double ux = 0.0;  // total energy in units of k_B T
};

double index_scale(const CavitySpec& spec, double temperature, const PhysicalConstants& k);

/// Largest integer norm-squared admitted by the cutoff, using the same
/// inclusion predicate the enumerators use.
std::int64_t max_norm_squared(double scale, double x_max);

double continuum_mode_count(const CavitySpec& spec, double radius);

int worker_threads(long long draws);

void check_mode_budget(const CavitySpec& spec, double radius);

std::vector<double> enumerate_x_values(const CavitySpec& spec, double temperature,
                                       const PhysicalConstants& k);

std::vector<DrawTotals> sample_mode_list(std::span<const double> xs, int polarizations,
                                         long long draws, std::uint64_t seed);

SampleEstimate finish_estimate(const std::vector<DrawTotals>& totals, double kt,
                               long long draws, std::uint64_t seed);

}  // namespace bbkit::mc::detail
