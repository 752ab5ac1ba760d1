// SPDX-License-Identifier: Apache-2.0
//
// Shell-aggregated cavity sampling. All modes whose index vectors share one
// norm share one frequency, so the sum of their geometric occupations is a
// negative binomial draw. Sampling per shell instead of per mode leaves the
// joint distribution of the totals (N, U) unchanged while the work scales
// with the number of distinct integer norms, which is what makes cavities
// with ~10^12 modes tractable.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>

#include "bbkit/mode_sampler.hpp"
#include "bbkit/rng.hpp"
#include "sampler_detail.hpp"

namespace bbkit::mc {

namespace {

constexpr std::int64_t kShellBinLimit = std::int64_t(1) << 28;
constexpr std::uint32_t kHeavyFlag = 0x80000000u;
constexpr double kHeavyMean = 8.0;  // gamma-Poisson above, CDF walk below

struct ShellTable {
    std::vector<std::int64_t> norm2;   // integer ||n||^2 per shell
    std::vector<std::uint32_t> modes;  // modes per shell incl. polarization; MSB = heavy
    std::vector<double> aux;           // P(K=0) for light shells, q/(1-q) for heavy ones
    double x_scale = 0.0;              // x = x_scale * sqrt(norm2)
    std::uint64_t total_modes = 0;
};

// Number of distinct permutations times sign choices for an ordered pattern
// a >= b >= c >= 0 (3D) or a >= b >= 0 (2D).
std::uint32_t weight3(std::int64_t a, std::int64_t b, std::int64_t c, bool periodic) {
    int perms;
    if (a == b && b == c) perms = 1;
    else if (a == b || b == c) perms = 3;
    else perms = 6;
    if (!periodic) return std::uint32_t(perms);
    const int nonzero = (a != 0) + (b != 0) + (c != 0);
    return std::uint32_t(perms << nonzero);
}

std::uint32_t weight2(std::int64_t a, std::int64_t b, bool periodic) {
    const int perms = (a == b) ? 1 : 2;
    if (!periodic) return std::uint32_t(perms);
    const int nonzero = (a != 0) + (b != 0);
    return std::uint32_t(perms << nonzero);
}

std::int64_t isqrt_floor(std::int64_t v) {
    if (v < 0) return -1;
    auto r = std::int64_t(std::floor(std::sqrt(double(v))));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// 3D sieve over ordered triples a >= b >= c >= (periodic ? 0 : 1), blocked in
// norm-squared so the bin increments stay cache resident; threads split the
// `a` range and merge additively, so the result does not depend on the
// thread count.
void sieve_d3(std::int64_t max_m, bool periodic, std::vector<std::uint32_t>& bins,
              int nthreads) {
    const std::int64_t cmin = periodic ? 0 : 1;
    const std::int64_t rmax = isqrt_floor(max_m);
    constexpr std::int64_t kBlock = std::int64_t(4) << 20;

    for (std::int64_t lo = 0; lo <= max_m; lo += kBlock) {
        const std::int64_t hi = std::min(max_m, lo + kBlock - 1);

        auto sweep = [&](std::int64_t a0, std::int64_t a1, std::vector<std::uint32_t>& local) {
            for (std::int64_t a = a0; a <= a1; ++a) {
                const std::int64_t a2 = a * a;
                const std::int64_t bmax = std::min(a, isqrt_floor(max_m - a2));
                for (std::int64_t b = cmin; b <= bmax; ++b) {
                    const std::int64_t base = a2 + b * b;
                    if (base + cmin * cmin > hi) break;
                    std::int64_t c1 = std::min({b, isqrt_floor(max_m - base),
                                                isqrt_floor(hi - base)});
                    std::int64_t c0 = cmin;
                    if (base + c0 * c0 < lo) {
                        c0 = isqrt_floor(lo - 1 - base) + 1;  // smallest c with m >= lo
                    }
                    if (c0 > c1) continue;

                    // c == 0 and c == b carry different multiplicities than
                    // the strictly interior run.
                    if (c0 == 0) {
                        local[size_t(base - lo)] += weight3(a, b, 0, periodic);
                        c0 = 1;
                    }
                    const std::int64_t bulk_hi = std::min(c1, b - 1);
                    std::int64_t m = base + c0 * c0;
                    const std::uint32_t w_bulk =
                        (a > b) ? (periodic ? 48u : 6u) : (periodic ? 24u : 3u);
                    for (std::int64_t c = c0; c <= bulk_hi; ++c) {
                        local[size_t(m - lo)] += w_bulk;
                        m += 2 * c + 1;
                    }
                    if (b >= std::max<std::int64_t>(c0, 1) && b <= c1) {
                        local[size_t(base + b * b - lo)] += weight3(a, b, b, periodic);
                    }
                }
            }
        };

        const size_t span = size_t(hi - lo + 1);
        if (nthreads <= 1) {
            std::vector<std::uint32_t> local(span, 0);
            sweep(cmin, rmax, local);
            for (size_t i = 0; i < span; ++i) bins[size_t(lo) + i] += local[i];
        } else {
            std::vector<std::vector<std::uint32_t>> locals(static_cast<size_t>(nthreads));
            std::vector<std::thread> pool;
            const std::int64_t chunk = (rmax - cmin) / nthreads + 1;
            for (int t = 0; t < nthreads; ++t) {
                const std::int64_t a0 = cmin + t * chunk;
                const std::int64_t a1 = std::min(rmax, a0 + chunk - 1);
                if (a0 > a1) continue;
                locals[size_t(t)].assign(span, 0);
                pool.emplace_back([&locals, &sweep, t, a0, a1] { sweep(a0, a1, locals[size_t(t)]); });
            }
            for (auto& th : pool) th.join();
            for (const auto& local : locals) {
                if (local.empty()) continue;
                for (size_t i = 0; i < span; ++i) bins[size_t(lo) + i] += local[i];
            }
        }
    }
}

void sieve_d2(std::int64_t max_m, bool periodic, std::vector<std::uint32_t>& bins) {
    const std::int64_t bmin = periodic ? 0 : 1;
    const std::int64_t rmax = isqrt_floor(max_m);
    for (std::int64_t a = std::max<std::int64_t>(bmin, 1); a <= rmax; ++a) {
        const std::int64_t a2 = a * a;
        const std::int64_t btop = std::min(a, isqrt_floor(max_m - a2));
        for (std::int64_t b = bmin; b <= btop; ++b)
            bins[size_t(a2 + b * b)] += weight2(a, b, periodic);
    }
}

ShellTable build_shells(const CavitySpec& spec, double temperature,
                        const PhysicalConstants& k) {
    spec.validate();
    k.validate();
    if (!(temperature > 0.0)) throw std::domain_error("cavity: temperature must be > 0");

    ShellTable table;
    table.x_scale = detail::index_scale(spec, temperature, k);
    const std::int64_t max_m = detail::max_norm_squared(table.x_scale, spec.x_max);
    if (max_m >= kShellBinLimit)
        throw mode_limit_error("cavity: " + std::to_string(max_m + 1) +
                               " frequency-shell bins exceed the shell limit of " +
                               std::to_string(kShellBinLimit));
    if (max_m < 1) return table;

    const bool periodic = spec.boundary == BoundaryCondition::periodic;
    std::vector<std::uint32_t> bins(size_t(max_m) + 1, 0);
    if (spec.dimension == 3) {
        sieve_d3(max_m, periodic, bins, detail::worker_threads(1 << 30));
    } else if (spec.dimension == 2) {
        sieve_d2(max_m, periodic, bins);
    } else {
        const std::int64_t rmax = isqrt_floor(max_m);
        for (std::int64_t n = 1; n <= rmax; ++n) bins[size_t(n * n)] += periodic ? 2 : 1;
    }

    size_t shells = 0;
    for (std::uint32_t b : bins) shells += b != 0;
    table.norm2.reserve(shells);
    table.modes.reserve(shells);
    table.aux.reserve(shells);

    for (std::int64_t m = 1; m <= max_m; ++m) {
        const std::uint32_t geom = bins[size_t(m)];
        if (geom == 0) continue;
        const std::uint64_t count = std::uint64_t(geom) * std::uint64_t(spec.polarizations);
        if (count >= kHeavyFlag)
            throw mode_limit_error("cavity: shell multiplicity exceeds 2^31");
        table.total_modes += count;

        const double x = table.x_scale * std::sqrt(double(m));
        const double theta = 1.0 / std::expm1(x);  // q/(1-q)
        const double mean = double(count) * theta;

        table.norm2.push_back(m);
        if (mean >= kHeavyMean) {
            table.modes.push_back(std::uint32_t(count) | kHeavyFlag);
            table.aux.push_back(theta);
        } else {
            table.modes.push_back(std::uint32_t(count));
            // P(K = 0) = (1-q)^count
            table.aux.push_back(std::exp(double(count) * std::log1p(-std::exp(-x))));
        }
    }
    return table;
}

std::vector<detail::DrawTotals> sample_shells(const ShellTable& table, long long draws,
                                              std::uint64_t seed) {
    std::vector<detail::DrawTotals> totals(static_cast<size_t>(draws));
    const size_t n_shells = table.norm2.size();

    auto run_range = [&](long long d0, long long d1) {
        for (long long j = d0; j < d1; ++j) {
            rng::Stream st(seed, std::uint64_t(j));
            double tot_n = 0.0, tot_ux = 0.0;
            for (size_t i = 0; i < n_shells; ++i) {
                const std::uint32_t tag = table.modes[i];
                long long occupied = 0;
                double x = 0.0;
                if (tag & kHeavyFlag) {
                    const double shape = double(tag & ~kHeavyFlag);
                    occupied = st.next_poisson(st.next_gamma(shape) * table.aux[i]);
                    if (occupied == 0) continue;
                    x = table.x_scale * std::sqrt(double(table.norm2[i]));
                } else {
                    const double u = st.next_unit();
                    const double p0 = table.aux[i];
                    if (u < p0) continue;
                    x = table.x_scale * std::sqrt(double(table.norm2[i]));
                    const double q = std::exp(-x);
                    const double count = double(tag);
                    double p = p0, cum = p0;
                    while (u >= cum && occupied < 2'000'000) {
                        ++occupied;
                        p *= q * (count + double(occupied) - 1.0) / double(occupied);
                        cum += p;
                    }
                }
                tot_n += double(occupied);
                tot_ux += double(occupied) * x;
            }
            totals[size_t(j)] = detail::DrawTotals{tot_n, tot_ux};
        }
    };

    const int nthreads = detail::worker_threads(draws);
    if (nthreads <= 1) {
        run_range(0, draws);
    } else {
        std::vector<std::thread> pool;
        const long long chunk = (draws + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const long long d0 = t * chunk;
            const long long d1 = std::min(draws, d0 + chunk);
            if (d0 < d1) pool.emplace_back(run_range, d0, d1);
        }
        for (auto& th : pool) th.join();
    }
    return totals;
}

}  // namespace

SampleEstimate cavity_estimate(const CavitySpec& spec, double temperature, long long draws,
                               std::uint64_t seed, const PhysicalConstants& k) {
    if (draws < 1) throw std::domain_error("cavity_estimate: draws must be >= 1");
    const auto table = build_shells(spec, temperature, k);
    const auto totals = sample_shells(table, draws, seed);
    return detail::finish_estimate(totals, k.k_B * temperature, draws, seed);
}

CavityExpectation cavity_expectation(const CavitySpec& spec, double temperature,
                                     const PhysicalConstants& k) {
    const auto table = build_shells(spec, temperature, k);
    CavityExpectation out;
    out.modes = table.total_modes;
    double n = 0.0, ux = 0.0;
    for (size_t i = 0; i < table.norm2.size(); ++i) {
        const double x = table.x_scale * std::sqrt(double(table.norm2[i]));
        const double count = double(table.modes[i] & ~kHeavyFlag);
        const double occ = count / std::expm1(x);
        n += occ;
        ux += occ * x;
    }
    out.photon_number = n;
    out.energy = ux * k.k_B * temperature;
    return out;
}

}  // namespace bbkit::mc
