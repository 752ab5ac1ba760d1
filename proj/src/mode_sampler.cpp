// SPDX-License-Identifier: Apache-2.0
#include "bbkit/mode_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "bbkit/rng.hpp"
#include "sampler_detail.hpp"

namespace bbkit::mc {

using std::numbers::pi;

void CavitySpec::validate() const {
    if (dimension < 1 || dimension > 3)
        throw std::domain_error("cavity: dimension must be 1, 2 or 3");
    if (!(edge_length > 0.0)) throw std::domain_error("cavity: edge length must be > 0");
    if (polarizations < 1) throw std::domain_error("cavity: polarizations must be >= 1");
    if (!(x_max > 0.0)) throw std::domain_error("cavity: x_max must be > 0");
}

CavitySpec make_cavity(int dimension, double edge_length, double x_max,
                       BoundaryCondition boundary) {
    CavitySpec spec;
    spec.dimension = dimension;
    spec.edge_length = edge_length;
    spec.x_max = x_max;
    spec.boundary = boundary;
    spec.polarizations = dimension == 3 ? 2 : 1;
    spec.validate();
    return spec;
}

namespace detail {

double index_scale(const CavitySpec& spec, double temperature, const PhysicalConstants& k) {
    // x = index_scale * ||n||; u = 2 L k_B T / (h c)
    const double u = 2.0 * spec.edge_length * k.k_B * temperature / (k.h * k.c);
    return (spec.boundary == BoundaryCondition::periodic ? 2.0 : 1.0) / u;
}

std::int64_t max_norm_squared(double scale, double x_max) {
    const double r = x_max / scale;
    if (!(r >= 0.0)) return -1;
    if (r > 3.0e9) throw mode_limit_error("cavity: index radius exceeds 3e9, refusing");
    auto included = [&](std::int64_t m) { return scale * std::sqrt(double(m)) <= x_max; };
    std::int64_t m = std::llround(r * r);
    while (m > 0 && !included(m)) --m;
    while (included(m + 1)) ++m;
    return m;
}

double continuum_mode_count(const CavitySpec& spec, double radius) {
    // Leading-order count of lattice points under the cutoff radius.
    double pts = 0.0;
    const bool per = spec.boundary == BoundaryCondition::periodic;
    switch (spec.dimension) {
        case 1: pts = per ? 2.0 * radius : radius; break;
        case 2: pts = (per ? pi : pi / 4.0) * radius * radius; break;
        default: pts = (per ? 4.0 * pi / 3.0 : pi / 6.0) * radius * radius * radius; break;
    }
    return pts * spec.polarizations;
}

int worker_threads(long long draws) {
    unsigned hw = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("BBKIT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) hw = unsigned(v);
    }
    if (hw == 0) hw = 1;
    return int(std::min<long long>(hw, draws));
}

SampleEstimate finish_estimate(const std::vector<DrawTotals>& totals, double kt,
                               long long draws, std::uint64_t seed) {
    double mean_n = 0.0, mean_ux = 0.0;
    for (const auto& t : totals) {
        mean_n += t.n;
        mean_ux += t.ux;
    }
    mean_n /= double(draws);
    mean_ux /= double(draws);

    double var_n = 0.0, var_ux = 0.0;
    for (const auto& t : totals) {
        var_n += (t.n - mean_n) * (t.n - mean_n);
        var_ux += (t.ux - mean_ux) * (t.ux - mean_ux);
    }

    SampleEstimate est;
    est.draws = draws;
    est.seed = seed;
    est.mean_photon_number = mean_n;
    est.mean_energy = kt * mean_ux;
    if (draws > 1) {
        const double norm = double(draws) * double(draws - 1);
        est.std_err_photon_number = std::sqrt(var_n / norm);
        est.std_err_energy = kt * std::sqrt(var_ux / norm);
    }
    return est;
}

// Geometric occupation sampling for every (draw, mode, polarization) cell.
// One uniform per cell; n = floor(-ln(U)/x) whenever U < q.
std::vector<DrawTotals> sample_mode_list(std::span<const double> xs, int polarizations,
                                         long long draws, std::uint64_t seed) {
    std::vector<DrawTotals> totals(static_cast<size_t>(draws));
    const size_t n_modes = xs.size();
    std::vector<double> qs(n_modes);
    for (size_t i = 0; i < n_modes; ++i) qs[i] = std::exp(-xs[i]);

    auto run_range = [&](long long d0, long long d1) {
        for (long long j = d0; j < d1; ++j) {
            rng::Stream st(seed, std::uint64_t(j));
            double tot_n = 0.0, tot_ux = 0.0;
            for (size_t i = 0; i < n_modes; ++i) {
                const double x = xs[i];
                const double q = qs[i];
                for (int p = 0; p < polarizations; ++p) {
                    const double u = st.next_unit();
                    if (u < q) {
                        const double n = std::floor(-std::log(u) / x);
                        tot_n += n;
                        tot_ux += n * x;
                    }
                }
            }
            totals[size_t(j)] = DrawTotals{tot_n, tot_ux};
        }
    };

    const int nthreads = worker_threads(draws);
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

// Visits every index tuple under the cutoff in lexicographic order.
template <class Visit>
void for_each_tuple(int dim, bool periodic, std::int64_t max_m, Visit&& visit) {
    const auto r_for = [max_m](std::int64_t used) {
        const std::int64_t rem = max_m - used;
        if (rem < 0) return std::int64_t(-1);
        auto r = std::int64_t(std::floor(std::sqrt(double(rem))));
        while (r * r > rem) --r;
        while ((r + 1) * (r + 1) <= rem) ++r;
        return r;
    };

    const std::int64_t r1 = r_for(0);
    const std::int64_t lo1 = periodic ? -r1 : 1;
    for (std::int64_t i = lo1; i <= r1; ++i) {
        if (dim == 1) {
            if (i != 0) visit(int(i), 0, 0, i * i);
            continue;
        }
        const std::int64_t r2 = r_for(i * i);
        const std::int64_t lo2 = periodic ? -r2 : 1;
        for (std::int64_t j = lo2; j <= r2; ++j) {
            if (dim == 2) {
                if (i != 0 || j != 0) visit(int(i), int(j), 0, i * i + j * j);
                continue;
            }
            const std::int64_t used = i * i + j * j;
            const std::int64_t r3 = r_for(used);
            const std::int64_t lo3 = periodic ? -r3 : 1;
            for (std::int64_t l = lo3; l <= r3; ++l) {
                if (i == 0 && j == 0 && l == 0) continue;
                visit(int(i), int(j), int(l), used + l * l);
            }
        }
    }
}

void check_mode_budget(const CavitySpec& spec, double radius) {
    const double projected = continuum_mode_count(spec, radius);
    if (projected > 1.05 * double(spec.mode_limit) + 1024.0)
        throw mode_limit_error("cavity: projected mode count " + std::to_string(projected) +
                               " exceeds the mode limit of " +
                               std::to_string(spec.mode_limit));
}

std::vector<double> enumerate_x_values(const CavitySpec& spec, double temperature,
                                       const PhysicalConstants& k) {
    spec.validate();
    k.validate();
    if (!(temperature > 0.0)) throw std::domain_error("cavity: temperature must be > 0");

    const double scale = index_scale(spec, temperature, k);
    const std::int64_t max_m = max_norm_squared(scale, spec.x_max);
    check_mode_budget(spec, spec.x_max / scale);

    std::vector<double> xs;
    xs.reserve(size_t(continuum_mode_count(spec, spec.x_max / scale) /
                      std::max(1, spec.polarizations)) +
               64);
    const bool periodic = spec.boundary == BoundaryCondition::periodic;
    for_each_tuple(spec.dimension, periodic, max_m,
                   [&](int, int, int, std::int64_t m) { xs.push_back(scale * std::sqrt(double(m))); });

    if (std::uint64_t(xs.size()) * std::uint64_t(spec.polarizations) > spec.mode_limit)
        throw mode_limit_error("cavity: enumerated mode count exceeds the mode limit of " +
                               std::to_string(spec.mode_limit));
    return xs;
}

}  // namespace detail

std::vector<Mode> enumerate_modes(const CavitySpec& spec, double temperature,
                                  const PhysicalConstants& k) {
    spec.validate();
    k.validate();
    if (!(temperature > 0.0)) throw std::domain_error("cavity: temperature must be > 0");

    const double scale = detail::index_scale(spec, temperature, k);
    const std::int64_t max_m = detail::max_norm_squared(scale, spec.x_max);
    detail::check_mode_budget(spec, spec.x_max / scale);

    const double kt = k.k_B * temperature;
    std::vector<Mode> modes;
    const bool periodic = spec.boundary == BoundaryCondition::periodic;
    detail::for_each_tuple(spec.dimension, periodic, max_m,
                           [&](int i, int j, int l, std::int64_t m) {
                               const double x = scale * std::sqrt(double(m));
                               Mode mode;
                               mode.indices = {i, j, l};
                               mode.frequency = x * kt / k.h;
                               mode.momentum = k.h * mode.frequency / k.c;
                               for (int p = 0; p < spec.polarizations; ++p)
                                   modes.push_back(mode);
                               if (modes.size() > spec.mode_limit)
                                   throw mode_limit_error(
                                       "cavity: enumerated mode count exceeds the mode limit "
                                       "of " +
                                       std::to_string(spec.mode_limit));
                           });
    return modes;
}

SampleEstimate sample_occupations(const std::vector<Mode>& modes, double temperature,
                                  long long draws, std::uint64_t seed,
                                  const PhysicalConstants& k) {
    k.validate();
    if (!(temperature > 0.0))
        throw std::domain_error("sample_occupations: temperature must be > 0");
    if (draws < 1) throw std::domain_error("sample_occupations: draws must be >= 1");

    const double kt = k.k_B * temperature;
    std::vector<double> xs(modes.size());
    for (size_t i = 0; i < modes.size(); ++i) xs[i] = k.h * modes[i].frequency / kt;

    const auto totals = detail::sample_mode_list(xs, 1, draws, seed);
    return detail::finish_estimate(totals, kt, draws, seed);
}

double classical_mode_energy(const std::vector<Mode>& modes, double temperature,
                             const PhysicalConstants& k) {
    k.validate();
    if (!(temperature > 0.0))
        throw std::domain_error("classical_mode_energy: temperature must be > 0");
    return double(modes.size()) * k.k_B * temperature;
}

std::vector<ScalingPoint> scaling_experiment(const CavitySpec& spec,
                                             std::span<const double> temperatures,
                                             long long draws, std::uint64_t seed,
                                             const PhysicalConstants& k) {
    spec.validate();
    k.validate();
    if (draws < 1) throw std::domain_error("scaling_experiment: draws must be >= 1");
    if (temperatures.size() < 4)
        throw std::domain_error("scaling_experiment: need at least 4 grid temperatures");
    double tmin = temperatures[0], tmax = temperatures[0];
    for (double t : temperatures) {
        if (!(t > 0.0)) throw std::domain_error("scaling_experiment: temperatures must be > 0");
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
    }
    if (tmax < 4.0 * tmin)
        throw std::domain_error("scaling_experiment: grid must span at least a factor 4");

    std::vector<ScalingPoint> points;
    points.reserve(temperatures.size());
    for (size_t i = 0; i < temperatures.size(); ++i) {
        const double t = temperatures[i];
        const double kt = k.k_B * t;
        const auto xs = detail::enumerate_x_values(spec, t, k);
        const std::uint64_t point_seed = rng::derive_seed(seed, i);
        const auto totals = detail::sample_mode_list(xs, spec.polarizations, draws, point_seed);
        const auto est = detail::finish_estimate(totals, kt, draws, point_seed);
        points.push_back(ScalingPoint{t, est.mean_energy, est.std_err_energy,
                                      est.mean_photon_number, est.std_err_photon_number});
    }
    return points;
}

}  // namespace bbkit::mc
