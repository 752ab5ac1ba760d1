// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace bbkit::rng {

/// Finalizer from SplitMix64; also used to derive stream seeds.
std::uint64_t mix64(std::uint64_t z);

/// Derived seed for sub-experiment `counter` of a master seed. The scheme is
/// a counter construction: seed_i = mix64(master ^ mix64(counter + 1)), so
/// experiments are reproducible and their streams independent.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

/// Deterministic random stream (SplitMix64 with a per-stream odd increment).
/// Stream (seed, id) always yields the same sequence; distinct ids give
/// statistically independent streams, which is what makes per-draw parallel
/// sampling reproducible regardless of the thread count.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1).
    double next_unit();

    /// Standard exponential, -log(U).
    double next_exponential();

    /// Standard normal (Marsaglia polar method; caches the second deviate).
    double next_normal();

    /// Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang squeeze method).
    double next_gamma(double shape);

    /// Poisson(lambda): product-of-uniforms inversion below lambda = 10,
    /// PTRD transformed rejection (Hoermann) above. Exact in distribution.
    long long next_poisson(double lambda);

    /// Occupation of one mode at x = hf/k_B T: geometric with ratio
    /// q = e^-x via inverse CDF, n = floor(-ln(U)/x). Consumes exactly one
    /// uniform; the log is only taken when the occupation is non-zero.
    long long next_occupation(double x);

    /// Sum of `count` independent occupations at common x: negative binomial
    /// NB(count, e^-x). Sequential CDF inversion when the mean is small,
    /// gamma-Poisson mixture otherwise; both are exact in distribution.
    long long next_occupation_sum(long long count, double x);

private:
    std::uint64_t state_;
    std::uint64_t gamma_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace bbkit::rng
