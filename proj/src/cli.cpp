// SPDX-License-Identifier: Apache-2.0
#include "bbkit/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "bbkit/constants.hpp"
#include "bbkit/mode_sampler.hpp"
#include "bbkit/photon_gas.hpp"
#include "bbkit/power_law.hpp"
#include "bbkit/special_functions.hpp"
#include "bbkit/thermo.hpp"

namespace bbkit::cli {

namespace {

struct CsvError : std::runtime_error {
    explicit CsvError(const std::string& what) : std::runtime_error(what) {}
};

// All numeric output goes through here: 9 significant digits, scientific,
// so identical runs produce byte-identical payloads on any platform.
std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

using KV = std::pair<std::string, std::string>;

// Cells are stored JSON-ready; string cells carry their quotes, which the CSV
// writer strips.
std::string csv_cell(const std::string& v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
        return v.substr(1, v.size() - 2);
    return v;
}

struct Provenance {
    std::string command;
    std::string format;
    std::uint64_t seed = 0;
    std::vector<KV> params;
    PhysicalConstants constants;
};

void write_csv_provenance(std::ostream& os, const Provenance& p) {
    os << "# bbkit " << p.command << "\n";
    os << "# format: " << p.format << "\n";
    os << "# seed: " << p.seed << "\n";
    for (const auto& [k, v] : p.params) os << "# " << k << ": " << csv_cell(v) << "\n";
    os << "# h_j_s: " << fmt9(p.constants.h) << "\n";
    os << "# c_m_per_s: " << fmt9(p.constants.c) << "\n";
    os << "# k_b_j_per_k: " << fmt9(p.constants.k_B) << "\n";
}

std::string json_provenance(const Provenance& p) {
    std::ostringstream os;
    os << "\"provenance\":{\"command\":\"" << p.command << "\",\"format\":\"" << p.format
       << "\",\"seed\":" << p.seed;
    for (const auto& [k, v] : p.params) os << ",\"" << k << "\":" << v;
    os << ",\"h_j_s\":" << fmt9(p.constants.h) << ",\"c_m_per_s\":" << fmt9(p.constants.c)
       << ",\"k_b_j_per_k\":" << fmt9(p.constants.k_B) << "}";
    return os.str();
}

std::string json_quote(const std::string& s) { return "\"" + s + "\""; }

PhysicalConstants constants_from_env() {
    PhysicalConstants k;
    const auto read = [](const char* name, double& slot) {
        if (const char* env = std::getenv(name)) {
            char* end = nullptr;
            const double v = std::strtod(env, &end);
            if (end == env || !(v > 0.0))
                throw std::domain_error(std::string("constants: bad ") + name);
            slot = v;
        }
    };
    read("BBKIT_H", k.h);
    read("BBKIT_C", k.c);
    read("BBKIT_KB", k.k_B);
    k.validate();
    return k;
}

struct Sink {
    std::ostream* os;
    std::ofstream file;
};

Sink make_sink(const std::string& path, std::ostream& fallback) {
    Sink s;
    if (path.empty() || path == "-") {
        s.os = &fallback;
        return s;
    }
    s.file.open(path);
    if (!s.file) throw std::domain_error("output: cannot open '" + path + "'");
    s.os = &s.file;
    return s;
}

// ---- csv input ------------------------------------------------------------

std::vector<std::pair<double, double>> read_two_column_csv(std::istream& in, int x_col,
                                                           int y_col) {
    std::vector<std::pair<double, double>> rows;
    std::string line;
    long line_no = 0;
    bool header_seen = false;
    const int need = std::max(x_col, y_col) + 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // one-line header is part of the format
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (int(cells.size()) < need)
            throw CsvError("malformed CSV at line " + std::to_string(line_no) +
                           ": expected at least " + std::to_string(need) + " columns");
        const auto parse = [&](const std::string& c) {
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (end == c.c_str() || *end != '\0')
                throw CsvError("malformed CSV at line " + std::to_string(line_no) +
                               ": bad number '" + c + "'");
            return v;
        };
        rows.emplace_back(parse(cells[size_t(x_col)]), parse(cells[size_t(y_col)]));
    }
    if (!header_seen) throw CsvError("malformed CSV at line 1: missing header");
    return rows;
}

// ---- commands -------------------------------------------------------------

void emit_kv_payload(std::ostream& os, const Provenance& prov,
                     const std::vector<KV>& values) {
    if (prov.format == "json") {
        os << "{" << json_provenance(prov);
        for (const auto& [k, v] : values) os << ",\"" << k << "\":" << v;
        os << "}\n";
        return;
    }
    write_csv_provenance(os, prov);
    for (size_t i = 0; i < values.size(); ++i)
        os << values[i].first << (i + 1 < values.size() ? "," : "\n");
    for (size_t i = 0; i < values.size(); ++i)
        os << csv_cell(values[i].second) << (i + 1 < values.size() ? "," : "\n");
}

void emit_table(std::ostream& os, const Provenance& prov,
                const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows,
                const std::string& json_array_name) {
    if (prov.format == "json") {
        os << "{" << json_provenance(prov) << ",\"" << json_array_name << "\":[";
        for (size_t r = 0; r < rows.size(); ++r) {
            os << (r ? ",{" : "{");
            for (size_t c = 0; c < header.size(); ++c)
                os << (c ? ",\"" : "\"") << header[c] << "\":" << rows[r][c];
            os << "}";
        }
        os << "]}\n";
        return;
    }
    write_csv_provenance(os, prov);
    for (size_t c = 0; c < header.size(); ++c)
        os << header[c] << (c + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows)
        for (size_t c = 0; c < row.size(); ++c)
            os << csv_cell(row[c]) << (c + 1 < row.size() ? "," : "\n");
}

mc::BoundaryCondition boundary_from(const std::string& name) {
    if (name == "standing") return mc::BoundaryCondition::standing_wave;
    if (name == "periodic") return mc::BoundaryCondition::periodic;
    throw std::domain_error("boundary must be 'standing' or 'periodic'");
}

}  // namespace

int run(std::span<const char* const> args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"black-body radiation computation kit"};
    app.set_help_flag("-h,--help", "print usage");
    app.require_subcommand(1);

    app.fallthrough();  // global options may follow the subcommand name

    std::string format = "json";
    std::string output_path;
    std::uint64_t seed = 0;
    app.add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", output_path, "output file path (default: stdout)");
    app.add_option("--seed", seed, "master random seed");

    // constants
    auto* cmd_constants = app.add_subcommand("constants", "Stefan-Boltzmann and radiation constants");

    // observables
    double volume = 1.0, temp = 1.0;
    auto* cmd_obs = app.add_subcommand("observables", "photon-gas observables at (V, T)");
    cmd_obs->add_option("--volume", volume, "cavity volume, m^3")->required();
    cmd_obs->add_option("--temp", temp, "temperature, K")->required();

    // spectrum
    double f_min = 1e11, f_max = 1e15;
    int points = 64;
    std::string model = "both";
    auto* cmd_spec = app.add_subcommand("spectrum", "spectral energy density curve");
    cmd_spec->add_option("--temp", temp, "temperature, K")->required();
    cmd_spec->add_option("--f-min", f_min, "lowest frequency, Hz");
    cmd_spec->add_option("--f-max", f_max, "highest frequency, Hz");
    cmd_spec->add_option("--points", points, "grid points")->check(CLI::PositiveNumber);
    cmd_spec->add_option("--model", model, "planck, rayleigh-jeans or both")
        ->check(CLI::IsMember({"planck", "rayleigh-jeans", "both"}));

    // ode
    double t0 = 100.0, p0 = 1.0, t1 = 200.0, alpha = 3.0;
    int steps = 1024;
    auto* cmd_ode = app.add_subcommand("ode", "integrate dP/P = (alpha+1) dT/T");
    cmd_ode->add_option("--t0", t0, "start temperature, K")->required();
    cmd_ode->add_option("--p0", p0, "start pressure, Pa")->required();
    cmd_ode->add_option("--t1", t1, "end temperature, K")->required();
    cmd_ode->add_option("--alpha", alpha, "equation-of-state coefficient");
    cmd_ode->add_option("--steps", steps, "integration steps");

    // sample
    int dimension = 3;
    double edge = 1e-4, x_max = 30.0;
    long long draws = 100;
    int polarizations = -1;
    std::string boundary = "standing";
    auto* cmd_sample = app.add_subcommand("sample", "Monte Carlo cavity occupation estimate");
    cmd_sample->add_option("--dimension", dimension, "cavity dimension 1..3");
    cmd_sample->add_option("--edge", edge, "edge length, m")->required();
    cmd_sample->add_option("--temp", temp, "temperature, K")->required();
    cmd_sample->add_option("--x-max", x_max, "mode-energy cutoff hf/k_B T");
    cmd_sample->add_option("--draws", draws, "independent draws");
    cmd_sample->add_option("--polarizations", polarizations, "default 2 for d=3, else 1");
    cmd_sample->add_option("--boundary", boundary, "standing or periodic")
        ->check(CLI::IsMember({"standing", "periodic"}));

    // scaling
    std::vector<double> temps;
    auto* cmd_scaling = app.add_subcommand("scaling", "sampled totals across a temperature grid");
    cmd_scaling->add_option("--dimension", dimension, "cavity dimension 1..3");
    cmd_scaling->add_option("--edge", edge, "edge length, m")->required();
    cmd_scaling->add_option("--x-max", x_max, "mode-energy cutoff hf/k_B T");
    cmd_scaling->add_option("--draws", draws, "independent draws per grid point");
    cmd_scaling->add_option("--polarizations", polarizations, "default 2 for d=3, else 1");
    cmd_scaling->add_option("--boundary", boundary, "standing or periodic")
        ->check(CLI::IsMember({"standing", "periodic"}));
    cmd_scaling->add_option("--temps", temps, "comma-separated grid temperatures, K")
        ->required()
        ->delimiter(',');

    // fit
    std::string input_path = "-";
    int x_col = 0, y_col = 1;
    auto* cmd_fit = app.add_subcommand("fit", "power-law fit of a two-column CSV");
    cmd_fit->add_option("--input", input_path, "CSV path or '-' for stdin");
    cmd_fit->add_option("--x-col", x_col, "abscissa column index (0-based)");
    cmd_fit->add_option("--y-col", y_col, "ordinate column index (0-based)");

    // scan-h
    int halvings = 6;
    auto* cmd_scanh = app.add_subcommand("scan-h", "radiation constant under repeated halving of h");
    cmd_scanh->add_option("--halvings", halvings, "number of halvings")->check(CLI::PositiveNumber);

    // catastrophe
    double x_start = 0.5;
    int doublings = 10;
    auto* cmd_cat = app.add_subcommand("catastrophe", "classical vs quantum energy under a cutoff");
    cmd_cat->add_option("--temp", temp, "temperature, K")->required();
    cmd_cat->add_option("--volume", volume, "cavity volume, m^3");
    cmd_cat->add_option("--x-start", x_start, "first cutoff, in units of k_B T/h");
    cmd_cat->add_option("--doublings", doublings, "cutoff doublings")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> argv_vec(args.begin(), args.end());
        std::reverse(argv_vec.begin(), argv_vec.end());
        app.parse(argv_vec);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 64;
    }

    try {
        const PhysicalConstants k = constants_from_env();
        Sink sink = make_sink(output_path, out);
        std::ostream& os = *sink.os;

        Provenance prov;
        prov.format = format;
        prov.seed = seed;
        prov.constants = k;

        if (app.got_subcommand(cmd_constants)) {
            prov.command = "constants";
            emit_kv_payload(os, prov,
                            {{"sigma_w_per_m2_k4", fmt9(photon::stefan_boltzmann_sigma(k))},
                             {"radiation_constant_j_per_m3_k4", fmt9(photon::radiation_constant(k))}});
        } else if (app.got_subcommand(cmd_obs)) {
            prov.command = "observables";
            prov.params = {{"volume_m3", fmt9(volume)}, {"temp_k", fmt9(temp)}};
            const auto g = photon::observables(volume, temp, k);
            const double ratio =
                temp > 0.0 ? g.energy_per_photon / (k.k_B * temp) : 0.0;
            emit_kv_payload(os, prov,
                            {{"mean_photon_number", fmt9(g.mean_photon_number)},
                             {"internal_energy_j", fmt9(g.internal_energy)},
                             {"pressure_pa", fmt9(g.pressure)},
                             {"energy_per_photon_j", fmt9(g.energy_per_photon)},
                             {"energy_per_photon_over_kbt", fmt9(ratio)}});
        } else if (app.got_subcommand(cmd_spec)) {
            prov.command = "spectrum";
            prov.params = {{"temp_k", fmt9(temp)},
                           {"f_min_hz", fmt9(f_min)},
                           {"f_max_hz", fmt9(f_max)},
                           {"points", std::to_string(points)},
                           {"model", json_quote(model)}};
            if (!(f_min >= 0.0) || !(f_max > f_min))
                throw std::domain_error("spectrum: need 0 <= f-min < f-max");
            std::vector<std::vector<std::string>> rows;
            const double step = points > 1 ? (f_max - f_min) / (points - 1) : 0.0;
            const auto emit_point = [&](double f, photon::SpectralModel m) {
                const auto pt = photon::spectral_point(f, temp, m, k);
                rows.push_back({fmt9(pt.frequency), fmt9(pt.energy_density),
                                json_quote(m == photon::SpectralModel::planck
                                               ? "planck"
                                               : "rayleigh_jeans")});
            };
            for (int i = 0; i < points; ++i) {
                const double f = f_min + step * i;
                if (model != "rayleigh-jeans") emit_point(f, photon::SpectralModel::planck);
                if (model != "planck") emit_point(f, photon::SpectralModel::rayleigh_jeans);
            }
            emit_table(os, prov, {"frequency_hz", "energy_density_j_s_per_m3", "model"}, rows,
                       "points");
        } else if (app.got_subcommand(cmd_ode)) {
            prov.command = "ode";
            prov.params = {{"t0_k", fmt9(t0)},
                           {"p0_pa", fmt9(p0)},
                           {"t1_k", fmt9(t1)},
                           {"alpha", fmt9(alpha)},
                           {"steps", std::to_string(steps)}};
            const double p = thermo::integrate_pressure(t0, p0, t1, alpha, steps);
            const double exact = p0 * std::pow(t1 / t0, alpha + 1.0);
            emit_kv_payload(os, prov,
                            {{"pressure_pa", fmt9(p)},
                             {"exact_pressure_pa", fmt9(exact)},
                             {"relative_error", fmt9(std::fabs(p / exact - 1.0))},
                             {"pressure_exponent", fmt9(thermo::pressure_exponent(alpha))}});
        } else if (app.got_subcommand(cmd_sample)) {
            prov.command = "sample";
            mc::CavitySpec spec = mc::make_cavity(dimension, edge, x_max, boundary_from(boundary));
            if (polarizations > 0) spec.polarizations = polarizations;
            prov.params = {{"dimension", std::to_string(spec.dimension)},
                           {"edge_m", fmt9(spec.edge_length)},
                           {"temp_k", fmt9(temp)},
                           {"x_max", fmt9(spec.x_max)},
                           {"polarizations", std::to_string(spec.polarizations)},
                           {"boundary", json_quote(boundary)},
                           {"draws", std::to_string(draws)}};
            const auto est = mc::cavity_estimate(spec, temp, draws, seed, k);
            std::vector<KV> values = {
                {"mean_photon_number", fmt9(est.mean_photon_number)},
                {"std_err_photon_number", fmt9(est.std_err_photon_number)},
                {"mean_energy_j", fmt9(est.mean_energy)},
                {"std_err_energy_j", fmt9(est.std_err_energy)},
                {"draws", std::to_string(est.draws)}};
            if (spec.dimension == 3) {
                const double v = std::pow(spec.edge_length, 3);
                const auto g = photon::observables(v, temp, k);
                values.push_back({"closed_form_photon_number", fmt9(g.mean_photon_number)});
                values.push_back({"closed_form_energy_j", fmt9(g.internal_energy)});
            }
            emit_kv_payload(os, prov, values);
        } else if (app.got_subcommand(cmd_scaling)) {
            prov.command = "scaling";
            mc::CavitySpec spec = mc::make_cavity(dimension, edge, x_max, boundary_from(boundary));
            if (polarizations > 0) spec.polarizations = polarizations;
            std::string temps_str;
            for (size_t i = 0; i < temps.size(); ++i)
                temps_str += (i ? "," : "") + fmt9(temps[i]);
            prov.params = {{"dimension", std::to_string(spec.dimension)},
                           {"edge_m", fmt9(spec.edge_length)},
                           {"x_max", fmt9(spec.x_max)},
                           {"polarizations", std::to_string(spec.polarizations)},
                           {"boundary", json_quote(boundary)},
                           {"draws", std::to_string(draws)},
                           {"temps_k", json_quote(temps_str)}};
            const auto pts = mc::scaling_experiment(spec, temps, draws, seed, k);
            std::vector<std::vector<std::string>> rows;
            for (const auto& p : pts)
                rows.push_back({fmt9(p.temperature), fmt9(p.mean_energy),
                                fmt9(p.std_err_energy), fmt9(p.mean_photon_number),
                                fmt9(p.std_err_photon_number)});
            emit_table(os, prov, {"temperature_k", "mean_u_j", "stderr_u_j", "mean_n", "stderr_n"},
                       rows, "points");
        } else if (app.got_subcommand(cmd_fit)) {
            prov.command = "fit";
            prov.params = {{"input", json_quote(input_path)},
                           {"x_col", std::to_string(x_col)},
                           {"y_col", std::to_string(y_col)}};
            if (x_col < 0 || y_col < 0) throw std::domain_error("fit: column indices must be >= 0");
            std::vector<std::pair<double, double>> pts;
            if (input_path == "-") {
                pts = read_two_column_csv(in, x_col, y_col);
            } else {
                std::ifstream f(input_path);
                if (!f) throw std::domain_error("fit: cannot open '" + input_path + "'");
                pts = read_two_column_csv(f, x_col, y_col);
            }
            const auto fit = fit::fit_power_law(pts);
            emit_kv_payload(os, prov,
                            {{"exponent", fmt9(fit.exponent)},
                             {"log_prefactor", fmt9(fit.log_prefactor)},
                             {"exponent_std_err", fmt9(fit.exponent_std_err)},
                             {"r_squared", fmt9(fit.r_squared)},
                             {"n_points", std::to_string(fit.n_points)}});
        } else if (app.got_subcommand(cmd_scanh)) {
            prov.command = "scan-h";
            prov.params = {{"halvings", std::to_string(halvings)}};
            const double c0 = photon::radiation_constant(k);
            std::vector<std::vector<std::string>> rows;
            PhysicalConstants kh = k;
            for (int i = 0; i <= halvings; ++i) {
                rows.push_back({std::to_string(i), fmt9(kh.h),
                                fmt9(photon::stefan_boltzmann_sigma(kh)),
                                fmt9(photon::radiation_constant(kh)),
                                fmt9(photon::radiation_constant(kh) / c0)});
                kh.h *= 0.5;
            }
            emit_table(os, prov,
                       {"halvings", "h_j_s", "sigma_w_per_m2_k4",
                        "radiation_constant_j_per_m3_k4", "ratio_to_default"},
                       rows, "points");
        } else if (app.got_subcommand(cmd_cat)) {
            prov.command = "catastrophe";
            prov.params = {{"temp_k", fmt9(temp)},
                           {"volume_m3", fmt9(volume)},
                           {"x_start", fmt9(x_start)},
                           {"doublings", std::to_string(doublings)}};
            if (!(x_start > 0.0)) throw std::domain_error("catastrophe: x-start must be > 0");
            std::vector<std::vector<std::string>> rows;
            double x = x_start;
            for (int i = 0; i <= doublings; ++i) {
                const double f = x * k.k_B * temp / k.h;
                rows.push_back({fmt9(x), fmt9(f),
                                fmt9(photon::classical_cutoff_energy(volume, temp, f, k)),
                                fmt9(photon::quantum_energy(volume, temp, k, x))});
                x *= 2.0;
            }
            emit_table(os, prov,
                       {"x_cutoff", "f_cutoff_hz", "classical_energy_j", "quantum_energy_j"},
                       rows, "points");
        }
        return 0;
    } catch (const CsvError& e) {
        err << "error: " << e.what() << "\n";
        return 65;
    } catch (const mc::mode_limit_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 70;
    }
}

}  // namespace bbkit::cli
