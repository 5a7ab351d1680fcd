#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardyq/evolution.hpp"
#include "hardyq/hardy.hpp"
#include "hardyq/io.hpp"
#include "hardyq/offaxis.hpp"
#include "hardyq/resonance.hpp"

namespace hardyq {

namespace {

using nlohmann::json;

// Relative output paths land in HARDYQ_OUTPUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
    if (path.empty()) return path;
    const char* dir = std::getenv("HARDYQ_OUTPUT_DIR");
    if (!dir || *dir == '\0') return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(dir) / p).string();
}

void emit_report(const json& report, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << report.dump(2) << "\n";
    } else {
        std::ofstream file(resolve_out(path));
        if (!file) throw ValidationError("cannot open report path: " + path);
        file << report.dump(2) << "\n";
    }
}

HalfPlane parse_half_plane(const std::string& s) {
    if (s == "lower") return HalfPlane::Lower;
    if (s == "upper") return HalfPlane::Upper;
    throw ValidationError("half-plane must be 'lower' or 'upper'");
}

Direction parse_direction(const std::string& s) {
    if (s == "state") return Direction::State;
    if (s == "observable") return Direction::Observable;
    throw ValidationError("direction must be 'state' or 'observable'");
}

json grid_json(const EnergyGrid& grid) {
    return json{{"e_min", grid.e_min}, {"e_max", grid.e_max}, {"n", grid.n}};
}

json residual_json(const ResidualReport& report, const EnergyGrid& grid) {
    return json{{"forbidden_mass", report.forbidden_mass},
                {"passes", report.passes},
                {"tolerance", report.tolerance_used},
                {"half_plane", report.half_plane == HalfPlane::Lower ? "lower" : "upper"},
                {"forbidden_region",
                 json{{"sign", report.forbidden_sign}, {"excluded_bins", report.excluded_bins}}},
                {"grid", grid_json(grid)}};
}

struct PipelineOutput {
    json report;
    FluorescenceTrace trace;
};

PipelineOutput run_pipeline(const SimConfig& cfg) {
    const LevelSystem sys = cfg.system();

    double duration = cfg.duration;
    if (cfg.target_dark_periods > 0) {
        const double per_period = 1.0 / cfg.preset.shelving_rate + 1.0 / cfg.preset.gamma;
        duration = std::max(duration, 1.2 * per_period * cfg.target_dark_periods);
    }

    FluorescenceTrace trace;
    std::vector<DarkPeriod> periods;
    for (;;) {
        trace.bin_width = cfg.bin_width;
        trace.t_start = 0.0;
        trace.counts.assign(static_cast<std::size_t>(std::ceil(duration / cfg.bin_width)), 0);
        const double w = cfg.bin_width;
        simulate_stream(sys, duration, cfg.seed, [&trace, w](const Event* ev, std::size_t m) {
            for (std::size_t i = 0; i < m; ++i) {
                if (!ev[i].photon) continue;
                std::size_t k = static_cast<std::size_t>(ev[i].t / w);
                if (k >= trace.counts.size()) k = trace.counts.size() - 1;
                ++trace.counts[k];
            }
        });
        periods = detect_dark_periods(trace, cfg.low_threshold, cfg.high_threshold,
                                      cfg.min_bins)
                      .periods;
        if (cfg.target_dark_periods <= 0 ||
            periods.size() >= static_cast<std::size_t>(cfg.target_dark_periods) ||
            duration >= cfg.max_duration)
            break;
        duration = std::min(cfg.max_duration, duration * 1.5);
    }

    const std::vector<double> durations = align_onsets(periods);
    const LifetimeEstimate est = estimate_lifetime(durations);
    const double tau_theor = lifetime(ResonancePole(0.0, cfg.preset.gamma));

    json report{{"schema_version", "1"},
                {"tau_exp", est.tau_hat},
                {"tau_exp_stderr", est.stderr_},
                {"tau_theor", tau_theor},
                {"ratio", est.tau_hat / tau_theor},
                {"n_dark_periods", est.n},
                {"duration", duration},
                {"seed", cfg.seed},
                {"bin_width", cfg.bin_width},
                {"gamma", cfg.preset.gamma}};
    return PipelineOutput{std::move(report), std::move(trace)};
}

struct CliError {
    int code;
    std::string type;
    std::string message;
};

int fail(std::ostream& err, const CliError& e) {
    err << json{{"error", {{"type", e.type}, {"message", e.message}, {"exit_code", e.code}}}}
               .dump()
        << "\n";
    return e.code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"hardyq: Hardy-space resonance and decay toolkit"};
    app.require_subcommand(1);

    // hardy check | hardy evolve
    auto* hardy = app.add_subcommand("hardy", "Hardy-class membership and semigroup evolution");
    hardy->require_subcommand(1);
    std::string in_path, half_plane = "lower", report_path, signal_path, out_path,
                direction = "state";
    double tol = kDefaultHardyTolerance, t = 0.0;

    auto* check = hardy->add_subcommand("check", "Paley-Wiener membership test");
    check->add_option("--input", in_path, "wave-function CSV")->required();
    check->add_option("--half-plane", half_plane, "lower|upper");
    check->add_option("--tol", tol, "forbidden-mass tolerance");
    check->add_option("--report", report_path, "report JSON path (default: stdout)");
    check->add_option("--time-signal", signal_path, "optional unitary-transform CSV export");

    auto* evolve = hardy->add_subcommand("evolve", "time-translate a wave function");
    evolve->add_option("--input", in_path, "wave-function CSV")->required();
    evolve->add_option("--t", t, "translation time")->required();
    evolve->add_option("--direction", direction, "state|observable");
    evolve->add_option("--output", out_path, "translated wave-function CSV")->required();
    evolve->add_option("--half-plane", half_plane,
                       "also run semigroup_check against this class");
    evolve->add_option("--tol", tol, "tolerance for the optional check");
    evolve->add_option("--report", report_path, "report JSON path");

    // titchmarsh eval
    auto* titchmarsh = app.add_subcommand("titchmarsh", "off-axis Hardy evaluation");
    titchmarsh->require_subcommand(1);
    double z_re = 0.0, z_im = 0.0;
    auto* teval = titchmarsh->add_subcommand("eval", "evaluate at a complex energy");
    teval->add_option("--input", in_path, "wave-function CSV")->required();
    teval->add_option("--re", z_re, "Re z")->required();
    teval->add_option("--im", z_im, "Im z")->required();
    teval->add_option("--half-plane", half_plane, "lower|upper");
    teval->add_option("--report", report_path, "report JSON path");

    // resonance fit | resonance evolve
    auto* resonance = app.add_subcommand("resonance", "Breit-Wigner amplitudes and decay");
    resonance->require_subcommand(1);
    double e_r = 0.0, gamma = 1.0, res_re = 1.0, res_im = 0.0;
    bool with_background = false;
    auto* rfit = resonance->add_subcommand("fit", "weighted lineshape fit");
    rfit->add_option("--input", in_path, "lineshape CSV (E,y[,sigma])")->required();
    rfit->add_flag("--background", with_background, "fit an additive constant pedestal");
    rfit->add_option("--report", report_path, "report JSON path");

    auto* revolve = resonance->add_subcommand("evolve", "Gamow evolution factor and survival");
    std::string energy_unit;
    revolve->add_option("--e-r", e_r, "resonance energy")->required();
    revolve->add_option("--gamma", gamma, "width")->required();
    revolve->add_option("--residue-re", res_re, "Re r");
    revolve->add_option("--residue-im", res_im, "Im r");
    revolve->add_option("--t", t, "time (t >= 0 only)")->required();
    revolve->add_option("--energy-unit", energy_unit,
                        "eV|keV|MeV|GeV: also report the lifetime in SI seconds");
    revolve->add_option("--report", report_path, "report JSON path");

    // gamow pair
    auto* gamow = app.add_subcommand("gamow", "Gamow-state constructions");
    gamow->require_subcommand(1);
    auto* gpair = gamow->add_subcommand("pair", "<psi-|z_R-> via Titchmarsh continuation");
    gpair->add_option("--input", in_path, "observable wave-function CSV")->required();
    gpair->add_option("--e-r", e_r, "resonance energy")->required();
    gpair->add_option("--gamma", gamma, "width")->required();
    gpair->add_option("--residue-re", res_re, "Re r");
    gpair->add_option("--residue-im", res_im, "Im r");
    gpair->add_option("--tol", tol, "Hardy precondition tolerance");
    gpair->add_option("--report", report_path, "report JSON path");

    // sim run | sim detect | sim lifetime
    auto* sim = app.add_subcommand("sim", "single-ion shelving simulation");
    sim->require_subcommand(1);
    std::string config_path, trace_path, events_path, periods_path;
    double low = 400.0, high = 800.0;
    int min_bins = 2;
    auto* srun = sim->add_subcommand("run", "simulate and bin fluorescence");
    srun->add_option("--config", config_path, "config JSON")->required();
    srun->add_option("--events", events_path, "event-log CSV export");
    srun->add_option("--trace", trace_path, "trace CSV export");
    srun->add_option("--report", report_path, "report JSON path");

    auto* sdetect = sim->add_subcommand("detect", "detect dark periods in a trace");
    sdetect->add_option("--trace", in_path, "trace CSV")->required();
    sdetect->add_option("--low", low, "low threshold (counts/bin)");
    sdetect->add_option("--high", high, "high threshold (counts/bin)");
    sdetect->add_option("--min-bins", min_bins, "minimum dark length in bins");
    sdetect->add_option("--output", periods_path, "dark-period CSV export");
    sdetect->add_option("--report", report_path, "report JSON path");

    auto* slifetime = sim->add_subcommand("lifetime", "estimate lifetime from dark periods");
    slifetime->add_option("--input", in_path, "dark-period CSV")->required();
    slifetime->add_option("--report", report_path, "report JSON path");

    // pipeline full
    auto* pipeline = app.add_subcommand("pipeline", "end-to-end closures");
    pipeline->require_subcommand(1);
    auto* pfull = pipeline->add_subcommand(
        "full", "simulate -> bin -> detect -> align -> estimate vs 1/Gamma");
    pfull->add_option("--config", config_path, "config JSON")->required();
    pfull->add_option("--trace", trace_path, "trace CSV export");
    pfull->add_option("--report", report_path, "report JSON path");

    std::vector<const char*> argv;
    argv.push_back("hardyq");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        return fail(err, {2, "cli", e.what()});
    }

    try {
        if (check->parsed()) {
            const SampledWaveFunction wf = load_wavefunction(in_path);
            const HalfPlane hp = parse_half_plane(half_plane);
            const ResidualReport report = hardy_residual(wf, hp, tol);
            if (!signal_path.empty())
                save_time_signal(resolve_out(signal_path), fourier_to_time(wf));
            emit_report(residual_json(report, wf.grid), report_path, out);
            return 0;
        }
        if (evolve->parsed()) {
            const SampledWaveFunction wf = load_wavefunction(in_path);
            const SampledWaveFunction moved = time_translate(wf, t, parse_direction(direction));
            save_wavefunction(resolve_out(out_path), moved);
            json report{{"t", t}, {"direction", direction}, {"output", out_path}};
            if (evolve->count("--half-plane") > 0) {
                const HalfPlane hp = parse_half_plane(half_plane);
                report["semigroup_check"] = residual_json(semigroup_check(wf, hp, t, tol),
                                                          wf.grid);
            }
            emit_report(report, report_path, out);
            return 0;
        }
        if (teval->parsed()) {
            const SampledWaveFunction wf = load_wavefunction(in_path);
            const cplx value = evaluate_offaxis(wf, cplx(z_re, z_im), parse_half_plane(half_plane));
            emit_report(json{{"z", {{"re", z_re}, {"im", z_im}}},
                             {"value", {{"re", value.real()}, {"im", value.imag()}}},
                             {"half_plane", half_plane},
                             {"grid", grid_json(wf.grid)}},
                        report_path, out);
            return 0;
        }
        if (rfit->parsed()) {
            const std::vector<LineshapeSample> samples = load_lineshape(in_path);
            FitOptions options;
            options.fit_background = with_background;
            const FitResult result = fit_breit_wigner(samples, options);
            json cov = json::array();
            for (int r = 0; r < result.dim; ++r) {
                json row = json::array();
                for (int c = 0; c < result.dim; ++c)
                    row.push_back(result.covariance[r * result.dim + c]);
                cov.push_back(row);
            }
            emit_report(json{{"pole",
                              {{"e_r", result.pole.e_r},
                               {"gamma", result.pole.gamma},
                               {"residue",
                                {{"re", result.pole.residue.real()},
                                 {"im", result.pole.residue.imag()}}}}},
                             {"background", result.background},
                             {"covariance", cov},
                             {"parameter_order",
                              result.dim == 4
                                  ? json::array({"e_r", "gamma", "r_squared", "background"})
                                  : json::array({"e_r", "gamma", "r_squared"})},
                             {"residual_norm", result.residual_norm},
                             {"iterations", result.iterations}},
                        report_path, out);
            return 0;
        }
        if (revolve->parsed()) {
            const ResonancePole pole(e_r, gamma, cplx(res_re, res_im));
            const cplx factor = gamow_evolution_factor(pole, t);
            json report{{"t", t},
                        {"evolution_factor", {{"re", factor.real()}, {"im", factor.imag()}}},
                        {"survival_probability", survival_probability(pole, t)},
                        {"lifetime", lifetime(pole)}};
            if (!energy_unit.empty()) {
                // hbar = 1 internally; tau[s] = hbar[eV s] / Gamma[eV]
                constexpr double hbar_ev_s = 6.582119569e-16;
                double to_ev = 0.0;
                if (energy_unit == "eV") to_ev = 1.0;
                else if (energy_unit == "keV") to_ev = 1e3;
                else if (energy_unit == "MeV") to_ev = 1e6;
                else if (energy_unit == "GeV") to_ev = 1e9;
                else throw ValidationError("unknown --energy-unit '" + energy_unit + "'");
                report["energy_unit"] = energy_unit;
                report["lifetime_seconds"] = hbar_ev_s / (pole.gamma * to_ev);
            }
            emit_report(report, report_path, out);
            return 0;
        }
        if (gpair->parsed()) {
            const SampledWaveFunction psi = load_wavefunction(in_path);
            const ResonancePole pole(e_r, gamma, cplx(res_re, res_im));
            const cplx value = gamow_pairing(psi, pole, tol);
            emit_report(
                json{{"pairing", {{"re", value.real()}, {"im", value.imag()}}},
                     {"pole", {{"e_r", pole.e_r}, {"gamma", pole.gamma}}},
                     {"normalization_convention",
                      "plain Titchmarsh continuation of conj(psi); Gamow states are "
                      "unit-L2-normalized on their grid"}},
                report_path, out);
            return 0;
        }
        if (srun->parsed()) {
            const SimConfig cfg = load_sim_config(config_path);
            const LevelSystem sys = cfg.system();
            const EventLog log = simulate(sys, cfg.duration, cfg.seed);
            const FluorescenceTrace trace = bin_counts(log, cfg.bin_width);
            if (!events_path.empty()) save_events(resolve_out(events_path), log, sys);
            if (!trace_path.empty()) save_trace(resolve_out(trace_path), trace);
            std::uint64_t photons = 0;
            for (const Event& ev : log.events) photons += ev.photon ? 1 : 0;
            json report{{"events", log.events.size()},
                        {"photons", photons},
                        {"duration", cfg.duration},
                        {"seed", cfg.seed},
                        {"completed_early", log.completed_early}};
            if (log.completed_early) report["diagnostic"] = log.diagnostic;
            emit_report(report, report_path, out);
            return 0;
        }
        if (sdetect->parsed()) {
            const FluorescenceTrace trace = load_trace(in_path);
            const DetectionResult detection =
                detect_dark_periods(trace, low, high, min_bins);
            if (!periods_path.empty())
                save_dark_periods(resolve_out(periods_path), detection.periods);
            json list = json::array();
            for (const DarkPeriod& p : detection.periods)
                list.push_back(json{{"t0", p.t0}, {"t1", p.t1}});
            json report{{"dark_periods", list}, {"count", detection.periods.size()}};
            if (!detection.warning.empty()) report["warning"] = detection.warning;
            emit_report(report, report_path, out);
            return 0;
        }
        if (slifetime->parsed()) {
            const std::vector<DarkPeriod> periods = load_dark_periods(in_path);
            const LifetimeEstimate est = estimate_lifetime(align_onsets(periods));
            emit_report(json{{"tau_hat", est.tau_hat}, {"stderr", est.stderr_}, {"n", est.n}},
                        report_path, out);
            return 0;
        }
        if (pfull->parsed()) {
            const SimConfig cfg = load_sim_config(config_path);
            PipelineOutput result = run_pipeline(cfg);
            if (!trace_path.empty()) save_trace(resolve_out(trace_path), result.trace);
            emit_report(result.report, report_path, out);
            return 0;
        }
        return fail(err, {2, "cli", "no subcommand executed"});
    } catch (const ValidationError& e) {
        return fail(err, {2, "validation", e.what()});
    } catch (const DomainViolation& e) {
        return fail(err, {3, "domain", e.what()});
    } catch (const NumericFailure& e) {
        return fail(err, {4, "numeric", e.what()});
    } catch (const std::exception& e) {
        return fail(err, {4, "internal", e.what()});
    }
}

}  // namespace hardyq
