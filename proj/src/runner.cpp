#include "runner.hpp"

#include "field.hpp"
#include "illposed.hpp"
#include "semigroup.hpp"
#include "wellposed.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace kdvlab {

namespace fs = std::filesystem;
using json = nlohmann::json;

const char* version_string() { return "0.1.0"; }

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_trajectory(const fs::path& dir, const Trajectory& traj, const std::string& prefix) {
    json index;
    index["t_values"] = traj.times;
    index["grid"] = {{"xi_max", traj.grid.xi_max}, {"n", traj.grid.n}};
    std::vector<std::string> files;
    for (size_t j = 0; j < traj.size(); ++j) {
        char name[64];
        std::snprintf(name, sizeof name, "%s_%04zu.csv", prefix.c_str(), j);
        std::ofstream f(dir / name);
        write_field_csv(f, traj.fields[j]);
        files.emplace_back(name);
    }
    index["files"] = files;
    write_json(dir / (prefix + "_index.json"), index);
}

Nonlinearity parse_which(const std::string& which) {
    if (which == "derivative" || which == "derivative_of_square") return Nonlinearity::DerivativeOfSquare;
    if (which == "gradient" || which == "square_of_gradient") return Nonlinearity::SquareOfGradient;
    throw std::runtime_error("config: key 'which' must be 'derivative' or 'gradient': " + which);
}

struct CommandOutcome {
    json results;
    bool checks_pass = true;
};

CommandOutcome cmd_threshold(const Config& cfg, const fs::path&) {
    const SymbolSpec spec = cfg.symbol_spec();
    CommandOutcome out;
    out.results["M"] = compute_threshold_M(spec);
    out.results["sup_phi"] = sup_phi(spec);
    return out;
}

CommandOutcome cmd_norms(const Config& cfg, const fs::path& dir) {
    const SymbolSpec spec = cfg.symbol_spec();
    const std::string sec = "norms";
    SpectralField f;
    const std::string source = cfg.get_or(sec, "source", "counterexample");
    if (source == "counterexample") {
        CounterexampleParams params{cfg.get_double(sec, "N"), cfg.get_double_or(sec, "gamma", 1.0),
                                    cfg.get_double(sec, "s"), cfg.get_double_or(sec, "t_eval", 0.1)};
        params.validate(spec);
        const double xi_max = params.band_hi() + 1.0;
        const int n = 2 * static_cast<int>(std::ceil(xi_max * 16.0 / params.gamma / 2.0) * 2);
        f = counterexample_data(params, FrequencyGrid(xi_max, n));
    } else if (source == "csv") {
        std::ifstream in(cfg.get(sec, "path"));
        if (!in) throw std::runtime_error("norms: cannot open field csv");
        f = read_field_csv(in);
    } else {
        throw std::runtime_error("config: norms.source must be 'counterexample' or 'csv'");
    }
    CommandOutcome out;
    json norms = json::array();
    for (double s : cfg.get_double_list(sec, "s_values")) {
        norms.push_back({{"s", s}, {"hs_norm", hs_norm(f, s)}});
    }
    out.results["norms"] = norms;
    out.results["l2_norm"] = l2_norm(f);
    out.results["hermitian_error"] = f.hermitian_error();
    std::ofstream fcsv(dir / "field.csv");
    write_field_csv(fcsv, f);
    return out;
}

CommandOutcome cmd_verify_lemmas(const Config& cfg, const fs::path& dir) {
    const SymbolSpec spec = cfg.symbol_spec();
    const std::string sec = "verify-lemmas";
    const double s = cfg.get_double(sec, "s");
    const double tau_min = cfg.get_double_or(sec, "tau_min", 1e-5);
    const double tau_max = cfg.get_double_or(sec, "tau_max", 1.0);
    const int tau_points = static_cast<int>(cfg.get_long_or(sec, "tau_points", 50));
    const double eps = cfg.get_double_or(sec, "eps", 0.01);

    std::vector<double> tau_grid;
    for (int i = 0; i < tau_points; ++i)
        tau_grid.push_back(tau_min * std::pow(tau_max / tau_min,
                                              tau_points == 1 ? 0.0 : static_cast<double>(i) / (tau_points - 1)));

    CommandOutcome out;
    json summary = json::array();
    struct Entry { KernelWeight w; const char* name; bool admissible; };
    const Entry entries[] = {
        {KernelWeight::XiBracketS, "xi_bracket_s", s > -spec.p / 2.0},
        {KernelWeight::BracketSOnly, "bracket_s_only", s > 1.0 - spec.p / 2.0},
        {KernelWeight::XiOnly, "xi_only", true},
    };
    for (const auto& e : entries) {
        if (!e.admissible) {
            summary.push_back({{"weight", e.name}, {"skipped", "inadmissible (s, p)"}});
            continue;
        }
        const SmoothingReport rep = kernel_weighted_l2(spec, s, e.w, tau_grid, -1.0, eps);
        std::ofstream csv(dir / (std::string("smoothing_") + e.name + ".csv"));
        csv << "tau,kernel_norm,weighted_value\n";
        for (size_t i = 0; i < rep.tau_values.size(); ++i)
            csv << fmt17(rep.tau_values[i]) << ',' << fmt17(rep.kernel_norms[i]) << ','
                << fmt17(rep.weighted_values[i]) << '\n';
        summary.push_back({{"weight", e.name},
                           {"a", rep.a},
                           {"sup_constant", rep.sup_constant},
                           {"stable", rep.monotone_tail_ok}});
        out.checks_pass = out.checks_pass && rep.monotone_tail_ok;
    }

    // Linear weighted-norm constant on a Gaussian datum.
    const FrequencyGrid grid(16.0, 256);
    const SpectralField f = gaussian_spectrum_field(grid, 4.0, s, 1.0);
    const LinearNormReport lin = verify_linear_xnorm(spec, f, s, 1.0);
    out.results["linear_xnorm"] = {{"constant", lin.constant},
                                   {"constant_refined", lin.constant_refined},
                                   {"stable", lin.stable}};
    out.checks_pass = out.checks_pass && lin.stable;
    out.results["smoothing"] = summary;
    out.results["threshold_M"] = compute_threshold_M(spec);
    out.results["sup_phi"] = sup_phi(spec);
    return out;
}

CommandOutcome cmd_solve(const Config& cfg, const fs::path& dir, unsigned seed) {
    const SymbolSpec spec = cfg.symbol_spec();
    const std::string sec = "solve";
    WeightedNormParams params;
    params.s = cfg.get_double(sec, "s");
    params.p = spec.p;
    const std::string variant = cfg.get_or(sec, "variant", "X");
    params.variant = variant == "Y" ? NormVariant::Y : NormVariant::X;

    const double xi_max = cfg.get_double_or(sec, "xi_max", 8.0);
    const int n = static_cast<int>(cfg.get_long_or(sec, "n", 128));
    const FrequencyGrid grid(xi_max, n);
    const double sigma = cfg.get_double_or(sec, "sigma", xi_max / 4.0);
    const double data_norm = cfg.get_double_or(sec, "data_norm", 0.1);
    const SpectralField v0 = gaussian_spectrum_field(grid, sigma, params.s, data_norm);

    PicardOptions opts;
    opts.tol = cfg.get_double_or(sec, "tol", 1e-9);
    opts.max_iter = static_cast<int>(cfg.get_long_or(sec, "max_iter", 40));
    opts.snapshots = static_cast<int>(cfg.get_long_or(sec, "m", 64));
    opts.seed = seed;
    auto [traj, rep] = picard_solve(spec, v0, params, opts);

    write_trajectory(dir, traj, "snapshot");
    CommandOutcome out;
    json iters = json::array();
    for (const auto& [it, d] : rep.iterates) iters.push_back({{"iter", it}, {"distance", d}});
    out.results["contraction_report"] = {{"r", rep.r},
                                         {"T", rep.T},
                                         {"c_hat", rep.c_hat},
                                         {"alpha_or_theta", rep.alpha_or_theta},
                                         {"converged", rep.converged},
                                         {"ratio_max", rep.ratio_max},
                                         {"residual", rep.residual},
                                         {"iterates", iters}};
    write_json(dir / "contraction_report.json", out.results["contraction_report"]);
    out.checks_pass = rep.converged && rep.ratio_max <= 0.6;
    return out;
}

CommandOutcome cmd_evolve(const Config& cfg, const fs::path& dir) {
    const SymbolSpec spec = cfg.symbol_spec();
    const std::string sec = "evolve";
    const double xi_max = cfg.get_double_or(sec, "xi_max", 8.0);
    const int n = static_cast<int>(cfg.get_long_or(sec, "n", 128));
    const FrequencyGrid grid(xi_max, n);
    const double s = cfg.get_double_or(sec, "s", -1.0);
    const SpectralField v0 = gaussian_spectrum_field(grid, cfg.get_double_or(sec, "sigma", xi_max / 4.0),
                                                     s, cfg.get_double_or(sec, "data_norm", 0.1));
    const double T = cfg.get_double(sec, "T");
    const double dt = cfg.get_double(sec, "dt");
    const Nonlinearity nl = parse_which(cfg.get_or(sec, "which", "derivative"));
    const int store_every = static_cast<int>(cfg.get_long_or(sec, "store_every", 16));
    const Trajectory traj = evolve(spec, v0, T, dt, nl, true, store_every);
    write_trajectory(dir, traj, "snapshot");
    CommandOutcome out;
    out.results["steps"] = traj.size();
    out.results["final_l2_norm"] = l2_norm(traj.fields.back());
    return out;
}

CommandOutcome cmd_inflate(const Config& cfg, const fs::path& dir, int jobs) {
    const SymbolSpec spec = cfg.symbol_spec();
    const std::string sec = "inflate";
    const double s = cfg.get_double(sec, "s");
    const double gamma = cfg.get_double_or(sec, "gamma", 1.0);
    const double t_eval = cfg.get_double_or(sec, "t_eval", 0.1);
    const std::vector<double> N_list = cfg.get_double_list(sec, "N");
    const Nonlinearity which = parse_which(cfg.get_or(sec, "which", "derivative"));
    SecondIterateConfig icfg;
    icfg.nodes_per_gamma = static_cast<int>(cfg.get_long_or(sec, "nodes_per_gamma", 64));

    const SweepResult res = inflation_sweep(spec, s, gamma, t_eval, N_list, which, icfg, jobs);

    std::ofstream csv(dir / "sweep.csv");
    csv << "N,norm,window_norm\n";
    for (size_t i = 0; i < res.N_values.size(); ++i)
        csv << fmt17(res.N_values[i]) << ',' << fmt17(res.full_norm_values[i]) << ','
            << fmt17(res.norm_values[i]) << '\n';

    CommandOutcome out;
    out.results["sweep"] = {{"fitted_slope", res.fitted_slope},
                            {"predicted_slope", res.predicted_slope},
                            {"residual", res.fit_residual},
                            {"denominator_band_ok", res.denominator_band_ok},
                            {"inconclusive", res.inconclusive}};
    write_json(dir / "sweep.json", out.results["sweep"]);
    out.checks_pass = !res.inconclusive && res.denominator_band_ok;
    return out;
}

} // namespace

RunStatus run_command(const Config& cfg, const std::string& output_dir, long seed, int jobs,
                      std::string* error_message) {
    const auto start = std::chrono::steady_clock::now();
    try {
        const fs::path dir(output_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir)) {
            if (error_message) *error_message = "output directory not writable: " + output_dir;
            return RunStatus::IoError;
        }

        const std::string command = cfg.get("", "command");
        const unsigned eff_seed =
            seed >= 0 ? static_cast<unsigned>(seed)
                      : static_cast<unsigned>(cfg.get_long_or("", "seed", 42));
        const int eff_jobs = jobs > 0 ? jobs : 1;

        CommandOutcome outcome;
        if (command == "threshold") outcome = cmd_threshold(cfg, dir);
        else if (command == "norms") outcome = cmd_norms(cfg, dir);
        else if (command == "verify-lemmas") outcome = cmd_verify_lemmas(cfg, dir);
        else if (command == "solve") outcome = cmd_solve(cfg, dir, eff_seed);
        else if (command == "evolve") outcome = cmd_evolve(cfg, dir);
        else if (command == "inflate") outcome = cmd_inflate(cfg, dir, eff_jobs);
        else throw std::runtime_error("config: unknown command '" + command + "'");

        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json manifest;
        manifest["command"] = command;
        manifest["version"] = version_string();
        manifest["seed"] = eff_seed;
        manifest["jobs"] = eff_jobs;
        manifest["wall_time_s"] = wall;
        manifest["config_echo"] = cfg.echo();
        manifest["results"] = outcome.results;
        manifest["checks_pass"] = outcome.checks_pass;
        write_json(dir / "manifest.json", manifest);

        if (!outcome.checks_pass) {
            if (error_message) *error_message = "numerical checks failed (see manifest.json)";
            return RunStatus::CheckFailed;
        }
        return RunStatus::Ok;
    } catch (const std::invalid_argument& e) {
        if (error_message) *error_message = e.what();
        return RunStatus::ConfigError;
    } catch (const std::runtime_error& e) {
        if (error_message) *error_message = e.what();
        const std::string what = e.what();
        return what.rfind("config", 0) == 0 ? RunStatus::ConfigError : RunStatus::NumericalError;
    }
}

} // namespace kdvlab
