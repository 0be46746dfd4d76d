#include "srnoise/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "srnoise/checks.hpp"
#include "srnoise/json_io.hpp"
#include "srnoise/langevin.hpp"
#include "srnoise/presets.hpp"
#include "srnoise/spectra.hpp"
#include "srnoise/steady_state.hpp"

namespace srnoise::cli {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_legend(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::filesystem::path default_out_dir() {
    if (const char* env = std::getenv("SRNOISE_OUT_DIR")) return env;
    return ".";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("FileError", "cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw InputError("FileError", "write failed for '" + path.string() + "'");
}

std::string spectrum_csv(const Spectrum& spec) {
    std::string csv = "omega_over_gamma_par,value\n";
    for (std::size_t i = 0; i < spec.grid.size(); ++i)
        csv += format_double(spec.grid.points[i]) + "," + format_double(spec.values[i]) + "\n";
    return csv;
}

struct SweepSpec {
    std::string variable;  // pump | gamma_perp | omega_rabi | kappa
    double start = 0.0, stop = 0.0, step = 0.0;

    std::vector<double> grid() const {
        if (!(step > 0.0)) throw InputError("BadSweep", "step must be > 0");
        if (!(start <= stop)) throw InputError("BadSweep", "start must be <= stop");
        std::vector<double> out;
        const double span = stop - start;
        // endpoints inclusive within 1e-12, in both relative and absolute terms
        const double ratio = (span / step) * (1.0 + 1e-12) + 1e-12;
        const auto count = static_cast<std::size_t>(std::floor(ratio)) + 1;
        for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
        return out;
    }
};

LaserParams with_variable(LaserParams base, const std::string& variable, double value) {
    if (variable == "pump")
        base.pump = value;
    else if (variable == "gamma_perp")
        base.gamma_perp = value;
    else if (variable == "omega_rabi")
        base.omega_rabi = value;
    else if (variable == "kappa")
        base.kappa = value;
    else
        throw InputError("BadSweep", "unknown sweep variable '" + variable + "'");
    return base;
}

double sweep_quantity(const std::string& quantity, const ValidatedParams& p) {
    const auto s = solve_operating_point(p);
    if (quantity == "n") return s.n;
    if (quantity == "n_e") return s.n_e;
    const auto d = population_variance_decomposition(s, p);
    if (quantity == "delta2_ne") return d.total;
    if (quantity == "pump_decay") return d.pump_decay_part;
    if (quantity == "field_polarization") return d.field_polarization_part;
    throw InputError("BadSweep", "unknown sweep quantity '" + quantity + "'");
}

struct SweepRow {
    double value = std::numeric_limits<double>::quiet_NaN();
    double result = std::numeric_limits<double>::quiet_NaN();
    std::string reason;  // empty on success
};

std::vector<SweepRow> run_sweep(const LaserParams& base, const SweepSpec& spec,
                                const std::string& quantity, unsigned jobs) {
    const auto values = spec.grid();
    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < values.size(); i = next.fetch_add(1)) {
            rows[i].value = values[i];
            try {
                const auto p = validate(with_variable(base, spec.variable, values[i]));
                rows[i].result = sweep_quantity(quantity, p);
            } catch (const Error& e) {
                rows[i].reason = e.name();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, values.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return rows;
}

FrequencyGrid spectrum_grid(const SteadyState& s, const ValidatedParams& p,
                            std::optional<double> omega_max, std::size_t points) {
    if (omega_max) return FrequencyGrid::symmetric_uniform(*omega_max, points);
    return default_grid(s, p, points);
}

Spectrum make_spectrum(const std::string& kind, const SteadyState& s, const ValidatedParams& p,
                       const FrequencyGrid& grid) {
    if (kind == "field") return field_spectrum(s, p, grid);
    if (kind == "photon") return photon_fluctuation_spectrum(s, p, grid);
    if (kind == "sigma") return sigma_fluctuation_spectrum(s, p, grid);
    if (kind == "population") return population_fluctuation_spectrum(s, p, grid);
    if (kind == "population-simple") return simplified_population_spectrum(s, p, grid);
    if (kind == "conv")
        return field_population_convolution(field_spectrum(s, p, grid),
                                            population_fluctuation_spectrum(s, p, grid));
    throw InputError("BadKind", "unknown spectrum kind '" + kind + "'");
}

void emit(const std::string& text, const std::optional<std::string>& out_file) {
    if (out_file)
        write_text(*out_file, text);
    else
        std::cout << text;
}

// ---- figure jobs ------------------------------------------------------------

struct Curve {
    std::string legend;
    std::string csv;
};

std::vector<Curve> figure_field_or_photon(bool photon, std::size_t points) {
    // shared grid wide enough for every preset's sidebands
    double omega_max = 0.0;
    std::vector<std::pair<ValidatedParams, SteadyState>> states;
    for (double r : presets::spectra_ratios()) {
        const auto p = validate(presets::with_ratio_and_pump(r, presets::spectra_pump));
        const auto s = solve_operating_point(p);
        // odd point count puts the grid endpoints exactly at the window edge
        omega_max = std::max(omega_max, default_grid(s, p, 3).points.back());
        states.emplace_back(p, s);
    }
    const auto grid = FrequencyGrid::symmetric_uniform(omega_max, points);
    std::vector<Curve> curves;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& [p, s] = states[i];
        Spectrum spec = photon ? photon_fluctuation_spectrum(s, p, grid)
                               : field_spectrum(s, p, grid);
        if (photon) {
            // plotted as sqrt(d2n(w) / n(n+1)), the normalized intensity noise
            const double norm = s.n * (s.n + 1.0);
            for (auto& v : spec.values) v = std::sqrt(v / norm);
        }
        std::ostringstream legend;
        legend << "curve" << (i + 1) << ": 2kappa/gamma_perp = "
               << format_legend(presets::spectra_ratios()[i])
               << ", P = " << format_legend(presets::spectra_pump);
        curves.push_back({legend.str(), spectrum_csv(spec)});
    }
    return curves;
}

std::vector<Curve> figure_population_spectra(std::size_t points) {
    double omega_max = 0.0;
    for (double pump : presets::population_pumps())
        omega_max = std::max(omega_max, 10.0 * (pump + 1.0));
    const auto grid = FrequencyGrid::symmetric_uniform(omega_max, points);
    std::vector<Curve> curves;
    std::size_t idx = 1;
    for (double r : presets::population_ratios())
        for (double pump : presets::population_pumps()) {
            const auto p = validate(presets::with_ratio_and_pump(r, pump));
            const auto s = solve_operating_point(p);
            std::ostringstream legend;
            legend << "curve" << idx++ << ": 2kappa/gamma_perp = " << format_legend(r)
                   << ", P = " << format_legend(pump);
            curves.push_back({legend.str(),
                              spectrum_csv(population_fluctuation_spectrum(s, p, grid))});
        }
    return curves;
}

std::vector<Curve> figure_population_dispersion() {
    std::vector<Curve> curves;
    std::size_t idx = 1;
    for (double r : presets::population_ratios()) {
        std::vector<double> pumps;
        for (double pump = presets::dispersion_pump_start;
             pump <= presets::dispersion_pump_stop + 1e-12;
             pump += presets::dispersion_pump_step)
            pumps.push_back(pump);
        std::vector<PopulationVarianceDecomposition> decs;
        decs.reserve(pumps.size());
        for (double pump : pumps) {
            const auto p = validate(presets::with_ratio_and_pump(r, pump));
            decs.push_back(population_variance_decomposition(solve_operating_point(p), p));
        }
        const auto column = [&](const char* what, auto getter) {
            std::string csv = "pump,value\n";
            for (std::size_t i = 0; i < pumps.size(); ++i)
                csv += format_double(pumps[i]) + "," + format_double(getter(decs[i])) + "\n";
            std::ostringstream legend;
            legend << "curve" << idx++ << ": 2kappa/gamma_perp = " << format_legend(r) << ", "
                   << what;
            curves.push_back({legend.str(), csv});
        };
        column("total", [](const auto& d) { return d.total; });
        column("pump_decay", [](const auto& d) { return d.pump_decay_part; });
        column("field_polarization", [](const auto& d) { return d.field_polarization_part; });
    }
    return curves;
}

void run_figure(const std::string& id, const std::filesystem::path& out_dir, std::size_t points) {
    std::vector<Curve> curves;
    std::string prefix;
    if (id == "FieldSpectra") {
        curves = figure_field_or_photon(false, points);
        prefix = "field_spectra";
    } else if (id == "PhotonFluctSpectra") {
        curves = figure_field_or_photon(true, points);
        prefix = "photon_fluct_spectra";
    } else if (id == "PopulationSpectra") {
        curves = figure_population_spectra(points);
        prefix = "population_spectra";
    } else if (id == "PopulationDispersion") {
        curves = figure_population_dispersion();
        prefix = "population_dispersion";
    } else {
        throw InputError("BadFigureId", "unknown figure id '" + id + "'");
    }
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto path = out_dir / (prefix + "_curve" + std::to_string(i + 1) + ".csv");
        write_text(path, curves[i].csv);
        std::cout << path.string() << "  # " << curves[i].legend << "\n";
    }
}

// ---- subcommand wiring -------------------------------------------------------

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"below-threshold superradiant laser noise spectra"};
    app.require_subcommand(1);

    std::string params_file;
    std::string format = "json";

    auto* steady = app.add_subcommand("steady", "solve the stationary operating point");
    steady->add_option("--params", params_file, "parameter JSON file")->required();
    steady->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string kind = "field";
    std::optional<double> omega_max;
    std::size_t points = 2048;
    std::optional<std::string> out_file;
    auto* spectrum = app.add_subcommand("spectrum", "evaluate a spectrum on a frequency grid");
    spectrum->add_option("--params", params_file, "parameter JSON file")->required();
    spectrum->add_option("--kind", kind, "spectrum kind")
        ->check(CLI::IsMember({"field", "photon", "sigma", "population", "population-simple",
                               "conv"}));
    spectrum->add_option("--omega-max", omega_max, "half-width of the symmetric grid");
    spectrum->add_option("--points", points, "number of grid points");
    spectrum->add_option("--out", out_file, "output CSV path (default stdout)");

    auto* variance = app.add_subcommand("variance", "population variance decomposition");
    variance->add_option("--params", params_file, "parameter JSON file")->required();
    variance->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    SweepSpec sweep_spec;
    std::string quantity = "n";
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* sweep = app.add_subcommand("sweep", "scan one parameter, one scalar per row");
    sweep->add_option("--params", params_file, "parameter JSON file")->required();
    sweep->add_option("--variable", sweep_spec.variable, "swept variable")
        ->required()
        ->check(CLI::IsMember({"pump", "gamma_perp", "omega_rabi", "kappa"}));
    sweep->add_option("--start", sweep_spec.start, "first value")->required();
    sweep->add_option("--stop", sweep_spec.stop, "last value")->required();
    sweep->add_option("--step", sweep_spec.step, "increment")->required();
    sweep->add_option("--quantity", quantity, "reported scalar")
        ->check(CLI::IsMember({"n", "n_e", "delta2_ne", "pump_decay", "field_polarization"}));
    sweep->add_option("--jobs", jobs, "worker threads");
    sweep->add_option("--out", out_file, "output path (default stdout)");
    sweep->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string figure_id;
    std::string out_dir = default_out_dir().string();
    auto* figure = app.add_subcommand("figure", "write the preset multi-curve CSV families");
    figure->add_option("--id", figure_id, "figure id")
        ->required()
        ->check(CLI::IsMember({"FieldSpectra", "PhotonFluctSpectra", "PopulationSpectra",
                               "PopulationDispersion"}));
    figure->add_option("--out-dir", out_dir, "output directory (default $SRNOISE_OUT_DIR or .)");
    figure->add_option("--points", points, "grid points per curve");

    std::uint64_t seed = 20240817;
    auto* verify = app.add_subcommand("verify", "run the oracle cross-check suite");
    verify->add_option("--seed", seed, "seed for randomized draws");

    double dt = 0.0;
    std::size_t steps = 8192, trajectories = 200, segment = 1024;
    double overlap = 0.5;
    std::string channel = "n";
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo Welch spectrum of one channel");
    simulate->add_option("--params", params_file, "parameter JSON file")->required();
    simulate->add_option("--channel", channel, "binary-system channel")
        ->check(CLI::IsMember({"n", "sigma", "d"}));
    simulate->add_option("--dt", dt, "time step (default 0.05 / max |eigenvalue|)");
    simulate->add_option("--steps", steps, "retained steps per trajectory");
    simulate->add_option("--trajectories", trajectories, "trajectory count");
    simulate->add_option("--seed", seed, "RNG seed");
    simulate->add_option("--segment", segment, "Welch segment length (power of two)");
    simulate->add_option("--overlap", overlap, "segment overlap fraction");
    simulate->add_option("--out", out_file, "output CSV path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the parse diagnostic
        return code == 0 ? 0 : 1;
    }

    if (steady->parsed()) {
        const auto p = validate(params_from_json_file(params_file));
        const auto s = solve_operating_point(p);
        if (format == "csv") {
            std::cout << "n,n_e,n_g,inversion,sigma,dipole_d,residual_max\n"
                      << format_double(s.n) << "," << format_double(s.n_e) << ","
                      << format_double(s.n_g) << "," << format_double(s.inversion) << ","
                      << format_double(s.sigma) << "," << format_double(s.dipole_d) << ","
                      << format_double(s.residual_max) << "\n";
        } else {
            std::cout << steady_state_to_json(s) << "\n";
        }
        return 0;
    }
    if (spectrum->parsed()) {
        const auto p = validate(params_from_json_file(params_file));
        const auto s = solve_operating_point(p);
        const auto grid = spectrum_grid(s, p, omega_max, points);
        emit(spectrum_csv(make_spectrum(kind, s, p, grid)), out_file);
        return 0;
    }
    if (variance->parsed()) {
        const auto p = validate(params_from_json_file(params_file));
        const auto s = solve_operating_point(p);
        const auto d = population_variance_decomposition(s, p);
        if (format == "csv") {
            std::cout << "total,pump_decay,field_polarization\n"
                      << format_double(d.total) << "," << format_double(d.pump_decay_part) << ","
                      << format_double(d.field_polarization_part) << "\n";
        } else {
            std::cout << decomposition_to_json(d) << "\n";
        }
        return 0;
    }
    if (sweep->parsed()) {
        if (sweep->count("--format") == 0) format = "csv";  // tables default to CSV
        const auto base = params_from_json_file(params_file);
        const auto rows = run_sweep(base, sweep_spec, quantity, jobs);
        if (format == "csv") {
            std::string csv = sweep_spec.variable + "," + quantity + ",reason\n";
            for (const auto& r : rows)
                csv += format_double(r.value) + "," + format_double(r.result) + "," + r.reason +
                       "\n";
            emit(csv, out_file);
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : rows) {
                nlohmann::json row;
                row[sweep_spec.variable] = r.value;
                if (std::isnan(r.result))
                    row[quantity] = nullptr;
                else
                    row[quantity] = r.result;
                row["reason"] = r.reason;
                arr.push_back(row);
            }
            emit(arr.dump(2) + "\n", out_file);
        }
        return 0;
    }
    if (figure->parsed()) {
        run_figure(figure_id, out_dir, points);
        return 0;
    }
    if (verify->parsed()) {
        const auto results = checks::run_verification(seed);
        std::cout << checks_to_json(results) << "\n";
        for (const auto& r : results)
            if (!r.pass) return 2;
        return 0;
    }
    if (simulate->parsed()) {
        const auto p = validate(params_from_json_file(params_file));
        const auto s = solve_operating_point(p);
        const auto sys = build_binary_system(s, p, BinaryDiffusion::Olm);
        if (dt <= 0.0) dt = 0.05 / sys.max_eigenvalue_magnitude();
        const std::size_t ch = (channel == "n") ? 0 : (channel == "sigma" ? 1 : 2);
        const auto ens = simulate_time_domain(sys, dt, steps, trajectories, seed);
        const auto welch = welch_spectrum(ens, ch, segment, overlap);
        std::string csv = "omega_over_gamma_par,value,stderr\n";
        for (std::size_t i = 0; i < welch.omega.size(); ++i)
            csv += format_double(welch.omega[i]) + "," + format_double(welch.values[i]) + "," +
                   format_double(welch.stderrs[i]) + "\n";
        emit(csv, out_file);
        return 0;
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return (e.kind() == ErrorKind::Validation) ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace srnoise::cli
