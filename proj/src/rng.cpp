// SPDX-License-Identifier: Apache-2.0
#include "bbkit/rng.hpp"

#include <cmath>

namespace bbkit::rng {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    return mix64(master ^ mix64(counter + 1));
}

Stream::Stream(std::uint64_t seed, std::uint64_t stream_id) {
    state_ = mix64(seed ^ mix64(stream_id * kGolden + 1));
    gamma_ = mix64(stream_id + kGolden) | 1ULL;
}

std::uint64_t Stream::next_u64() {
    state_ += gamma_;
    return mix64(state_);
}

double Stream::next_unit() {
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::next_exponential() { return -std::log(next_unit()); }

double Stream::next_normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * next_unit() - 1.0;
        v = 2.0 * next_unit() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = v * f;
    has_cached_normal_ = true;
    return u * f;
}

double Stream::next_gamma(double shape) {
    // Marsaglia-Tsang, valid for shape >= 1.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_unit();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

long long Stream::next_poisson(double lambda) {
    if (lambda < 10.0) {
        // Knuth product-of-uniforms inversion.
        const double limit = std::exp(-lambda);
        long long k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_unit();
        } while (p > limit);
        return k - 1;
    }

    // PTRD transformed rejection (Hoermann 1993).
    const double smu = std::sqrt(lambda);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double u = next_unit() - 0.5;
        double v = next_unit();
        const double us = 0.5 - std::fabs(u);
        const long long k = (long long)std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) return k;
        if (k < 0 || (us < 0.013 && v > us)) continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            double(k) * std::log(lambda) - lambda - std::lgamma(double(k) + 1.0))
            return k;
    }
}

long long Stream::next_occupation(double x) {
    const double u = next_unit();
    if (u >= std::exp(-x)) return 0;
    return (long long)std::floor(-std::log(u) / x);
}

long long Stream::next_occupation_sum(long long count, double x) {
    const double q = std::exp(-x);
    const double theta = 1.0 / std::expm1(x);  // q/(1-q)
    const double mean = double(count) * theta;

    if (mean < 8.0) {
        const double u = next_unit();
        double p = std::exp(double(count) * std::log1p(-q));  // P(K = 0)
        double cum = p;
        long long j = 0;
        while (u >= cum && j < 2'000'000) {
            ++j;
            p *= q * (double(count) + double(j) - 1.0) / double(j);
            cum += p;
        }
        return j;
    }
    return next_poisson(next_gamma(double(count)) * theta);
}

}  // namespace bbkit::rng
