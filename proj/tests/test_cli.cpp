// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <doctest.h>

#include "bbkit/cli.hpp"
#include "bbkit/mode_sampler.hpp"
#include "bbkit/power_law.hpp"

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args, const std::string& input = "") {
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    RunResult r;
    r.code = bbkit::cli::run(argv, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

// pulls "key":value out of the flat JSON payloads
double json_number(const std::string& payload, const std::string& key) {
    const std::string needle = "\"" + key + "\":";
    const auto pos = payload.find(needle);
    REQUIRE(pos != std::string::npos);
    return std::strtod(payload.c_str() + pos + needle.size(), nullptr);
}

std::string json_token(const std::string& payload, const std::string& key) {
    const std::string needle = "\"" + key + "\":";
    const auto pos = payload.find(needle);
    REQUIRE(pos != std::string::npos);
    const auto start = pos + needle.size();
    auto end = payload.find_first_of(",}", start);
    return payload.substr(start, end - start);
}

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

}  // namespace

TEST_CASE("constants command reports sigma and the radiation constant") {
    const auto r = run_cli({"constants"});
    CHECK(r.code == 0);
    CHECK(std::fabs(json_number(r.out, "sigma_w_per_m2_k4") / 5.67e-8 - 1.0) < 1e-3);
    CHECK(std::fabs(json_number(r.out, "radiation_constant_j_per_m3_k4") / 7.57e-16 - 1.0) <
          5e-3);
    CHECK(r.out.find("\"provenance\"") != std::string::npos);
    CHECK(r.out.find("\"seed\":0") != std::string::npos);
}

TEST_CASE("observables command reproduces the coefficient of T^3") {
    const auto r = run_cli({"observables", "--volume", "1", "--temp", "1"});
    CHECK(r.code == 0);
    CHECK(std::fabs(json_number(r.out, "mean_photon_number") / 2.02e7 - 1.0) < 5e-3);
    CHECK(std::fabs(json_number(r.out, "energy_per_photon_over_kbt") - 2.7012) < 1e-3);
}

TEST_CASE("ode command integrates a factor-2 span to 16x") {
    const auto r = run_cli({"ode", "--t0", "100", "--p0", "1", "--t1", "200", "--alpha", "3",
                            "--steps", "1024"});
    CHECK(r.code == 0);
    CHECK(std::fabs(json_number(r.out, "pressure_pa") / 16.0 - 1.0) < 1e-8);
    CHECK(json_token(r.out, "pressure_pa") == "1.60000000e+01");
}

TEST_CASE("identical invocations produce byte-identical payloads") {
    const std::vector<std::string> args{"sample",  "--dimension", "3",    "--edge", "5e-5",
                                        "--temp",  "300",         "--x-max", "10", "--draws",
                                        "50",      "--seed",      "9",    "--boundary",
                                        "periodic"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    auto args2 = args;
    args2[12] = "10";  // different seed
    const auto c = run_cli(args2);
    CHECK(c.code == 0);
    CHECK(a.out != c.out);
}

TEST_CASE("unknown command exits 64 with a one-line diagnostic") {
    const auto r = run_cli({"frobnicate"});
    CHECK(r.code == 64);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

    const auto empty = run_cli({});
    CHECK(empty.code == 64);
}

TEST_CASE("domain errors exit 2 with a one-line diagnostic") {
    const auto r = run_cli({"observables", "--volume", "-1", "--temp", "10"});
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    CHECK(r.out.empty());

    // resource refusal is a diagnosable run failure too
    const auto big = run_cli({"sample", "--dimension", "3", "--edge", "0.01", "--temp",
                              "300", "--x-max", "300", "--draws", "10"});
    CHECK(big.code == 2);
    CHECK(big.err.find("limit") != std::string::npos);
}

TEST_CASE("malformed CSV exits 65 and names the line") {
    const auto r = run_cli({"fit", "--input", "-"}, "t,y\n1.0,2.0\n3.0,oops\n");
    CHECK(r.code == 65);
    CHECK(r.err.find("line 3") != std::string::npos);

    const auto empty = run_cli({"fit", "--input", "-"}, "");
    CHECK(empty.code == 65);

    const auto short_row = run_cli({"fit", "--input", "-"}, "t,y\n1.0,2.0\n3.0\n");
    CHECK(short_row.code == 65);
    CHECK(short_row.err.find("line 3") != std::string::npos);
}

TEST_CASE("fit reads a plain two-column CSV") {
    const auto r = run_cli({"fit", "--input", "-"},
                           "t,y\n100,1e-8\n200,1.6e-7\n400,2.56e-6\n800,4.096e-5\n");
    CHECK(r.code == 0);
    CHECK(std::fabs(json_number(r.out, "exponent") - 4.0) < 1e-9);
    CHECK(std::fabs(json_number(r.out, "r_squared") - 1.0) < 1e-12);
}

TEST_CASE("spectrum emits the documented CSV schema") {
    const auto r = run_cli({"spectrum", "--temp", "300", "--f-min", "1e12", "--f-max",
                            "2e13", "--points", "5", "--format", "csv"});
    CHECK(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(is, line)) lines.push_back(line);

    size_t header_at = 0;
    while (header_at < lines.size() && lines[header_at].rfind("#", 0) == 0) ++header_at;
    REQUIRE(header_at < lines.size());
    CHECK(lines[header_at] == "frequency_hz,energy_density_j_s_per_m3,model");
    CHECK(lines.size() - header_at - 1 == 10);  // both models per grid point
    CHECK(lines[header_at + 1].find("planck") != std::string::npos);
    CHECK(lines[header_at + 2].find("rayleigh_jeans") != std::string::npos);

    // provenance names the command, the seed and the constants
    CHECK(lines[0] == "# bbkit spectrum");
    bool has_seed = false, has_h = false;
    for (size_t i = 0; i < header_at; ++i) {
        has_seed |= lines[i].rfind("# seed:", 0) == 0;
        has_h |= lines[i].rfind("# h_j_s:", 0) == 0;
    }
    CHECK(has_seed);
    CHECK(has_h);
}

TEST_CASE("scaling piped into fit reproduces the in-process exponent") {
    const std::vector<std::string> args{
        "scaling", "--dimension", "1",   "--edge",  "4.6e-3", "--x-max", "12",
        "--draws", "50",          "--seed", "21",  "--temps", "200,400,800,1600",
        "--boundary", "periodic", "--format", "csv"};
    const auto scaled = run_cli(args);
    REQUIRE(scaled.code == 0);

    const auto fitted = run_cli({"fit", "--input", "-"}, scaled.out);
    REQUIRE(fitted.code == 0);

    // parse the printed rows back and fit them in-process: the CLI pipe must
    // agree to the last printed digit
    std::istringstream is(scaled.out);
    std::string line;
    std::vector<std::pair<double, double>> pts;
    bool header_skipped = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_skipped) {
            header_skipped = true;
            continue;
        }
        double t, u;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &t, &u) == 2);
        pts.emplace_back(t, u);
    }
    REQUIRE(pts.size() == 4);
    const auto direct = bbkit::fit::fit_power_law(pts);
    CHECK(json_token(fitted.out, "exponent") == fmt9(direct.exponent));

    // and against the full-precision pipeline: printing costs at most ~1e-8
    bbkit::PhysicalConstants k;
    auto spec = bbkit::mc::make_cavity(1, 4.6e-3, 12.0, bbkit::mc::BoundaryCondition::periodic);
    const std::vector<double> grid{200.0, 400.0, 800.0, 1600.0};
    const auto points = bbkit::mc::scaling_experiment(spec, grid, 50, 21, k);
    std::vector<std::pair<double, double>> full;
    for (const auto& p : points) full.emplace_back(p.temperature, p.mean_energy);
    const auto full_fit = bbkit::fit::fit_power_law(full);
    CHECK(std::fabs(direct.exponent / full_fit.exponent - 1.0) < 5e-8);
}

TEST_CASE("fit column selection reaches the photon-number exponent") {
    const auto scaled = run_cli({"scaling", "--dimension", "1", "--edge", "4.6e-3",
                                 "--x-max", "12", "--draws", "50", "--seed", "21", "--temps",
                                 "200,400,800,1600", "--boundary", "periodic", "--format",
                                 "csv"});
    REQUIRE(scaled.code == 0);
    const auto fit_n = run_cli({"fit", "--input", "-", "--y-col", "3"}, scaled.out);
    CHECK(fit_n.code == 0);
    const double n_exp = json_number(fit_n.out, "exponent");
    CHECK(n_exp > 1.0);  // infrared-weighted, above the naive linear law
    CHECK(n_exp < 1.6);
}

TEST_CASE("scan-h shows the 8x growth per halving") {
    const auto r = run_cli({"scan-h", "--halvings", "3", "--format", "csv"});
    CHECK(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    REQUIRE(rows.size() == 5);  // header + 4 rows
    CHECK(rows[1].find(",1.00000000e+00") != std::string::npos);
    CHECK(rows[2].find(",8.00000000e+00") != std::string::npos);
    CHECK(rows[3].find(",6.40000000e+01") != std::string::npos);
    CHECK(rows[4].find(",5.12000000e+02") != std::string::npos);
}

TEST_CASE("catastrophe table: classical cubing, quantum stability") {
    const auto r = run_cli({"catastrophe", "--temp", "300", "--volume", "1", "--x-start",
                            "30", "--doublings", "2", "--format", "csv"});
    CHECK(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("x_cutoff", 0) == 0) continue;
        std::vector<double> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(cells);
    }
    REQUIRE(rows.size() == 3);
    CHECK(std::fabs(rows[1][2] / rows[0][2] - 8.0) < 1e-3);  // classical energy column
    CHECK(std::fabs(rows[2][2] / rows[1][2] - 8.0) < 1e-3);
    CHECK(std::fabs(rows[1][3] / rows[0][3] - 1.0) < 1e-10);  // quantum column stable
    CHECK(std::fabs(rows[2][3] / rows[1][3] - 1.0) < 1e-10);
}

TEST_CASE("environment overrides rescale the constants") {
    const auto base = run_cli({"constants"});
    const double sigma0 = json_number(base.out, "sigma_w_per_m2_k4");

    setenv("BBKIT_H", "1.325214030e-33", 1);  // 2h
    const auto scaled = run_cli({"constants"});
    unsetenv("BBKIT_H");
    CHECK(std::fabs(json_number(scaled.out, "sigma_w_per_m2_k4") / (sigma0 / 8.0) - 1.0) <
          1e-6);

    setenv("BBKIT_KB", "junk", 1);
    const auto bad = run_cli({"constants"});
    unsetenv("BBKIT_KB");
    CHECK(bad.code == 2);
}

TEST_CASE("--output writes the payload to the named file only") {
    const std::string path = "/tmp/bbkit_test_constants.json";
    std::remove(path.c_str());
    const auto r = run_cli({"constants", "--output", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    REQUIRE(f.good());
    std::stringstream content;
    content << f.rdbuf();
    const auto direct = run_cli({"constants"});
    CHECK(content.str() == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("help exits cleanly") {
    const auto r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("black-body") != std::string::npos);
}
