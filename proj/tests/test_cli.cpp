#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <sstream>

#include <json.hpp>

#include "hardyq/io.hpp"
#include "oracles.hpp"

using namespace hardyq;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("hardyq_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CliRun {
    int code;
    json report;
    json error;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    CliRun r{code, {}, {}};
    if (!out.str().empty()) r.report = json::parse(out.str(), nullptr, false);
    if (!err.str().empty()) r.error = json::parse(err.str(), nullptr, false);
    return r;
}

}  // namespace

TEST_CASE("hardy check on the reference fixtures") {
    TempDir dir;
    const EnergyGrid grid = oracles::default_grid();
    save_wavefunction(dir.file("bw_lower.csv"),
                      oracles::single_pole_wf(grid, cplx(2.0, 0.5)));
    save_wavefunction(dir.file("bw_mirror.csv"),
                      oracles::single_pole_wf(grid, cplx(2.0, -0.5)));

    CliRun r = run({"hardy", "check", "--input", dir.file("bw_lower.csv"), "--half-plane",
                    "lower", "--tol", "1e-6"});
    CHECK(r.code == 0);
    CHECK(r.report["passes"] == true);
    CHECK(r.report["forbidden_mass"].get<double>() < 1e-6);
    CHECK(r.report["grid"]["n"] == grid.n);

    r = run({"hardy", "check", "--input", dir.file("bw_mirror.csv"), "--half-plane", "lower"});
    CHECK(r.code == 0);
    CHECK(r.report["passes"] == false);
    CHECK(r.report["forbidden_mass"].get<double>() > 0.9);
}

TEST_CASE("hardy evolve writes the translated function and optional check") {
    TempDir dir;
    const EnergyGrid grid = oracles::default_grid();
    save_wavefunction(dir.file("wf.csv"), oracles::single_pole_wf(grid, cplx(2.0, 0.5)));

    const CliRun r = run({"hardy", "evolve", "--input", dir.file("wf.csv"), "--t", "-0.5",
                          "--direction", "state", "--output", dir.file("moved.csv"),
                          "--half-plane", "lower"});
    CHECK(r.code == 0);
    CHECK(fs::exists(dir.file("moved.csv")));
    CHECK(r.report["semigroup_check"]["passes"] == false);  // t < 0 breaks membership
}

TEST_CASE("titchmarsh eval reproduces the closed form") {
    TempDir dir;
    save_wavefunction(dir.file("g.csv"),
                      oracles::single_pole_wf(oracles::default_grid(), cplx(0.0, 1.0)));
    const CliRun r = run({"titchmarsh", "eval", "--input", dir.file("g.csv"), "--re", "1",
                          "--im", "-0.5", "--half-plane", "lower"});
    CHECK(r.code == 0);
    const cplx want = 1.0 / cplx(1.0, -1.5);
    CHECK(r.report["value"]["re"].get<double>() == doctest::Approx(want.real()).epsilon(1e-6));
    CHECK(r.report["value"]["im"].get<double>() == doctest::Approx(want.imag()).epsilon(1e-6));
}

TEST_CASE("resonance evolve rejects negative time with exit code 3") {
    const CliRun r = run({"resonance", "evolve", "--e-r", "2", "--gamma", "1", "--t", "-1"});
    CHECK(r.code == 3);
    CHECK(r.error["error"]["type"] == "domain");

    const CliRun ok = run({"resonance", "evolve", "--e-r", "2", "--gamma", "1", "--t", "2"});
    CHECK(ok.code == 0);
    CHECK(ok.report["survival_probability"].get<double>() ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("SI lifetime conversion on request") {
    // Gamma = 0.5 MeV: tau = hbar/Gamma = 6.582119569e-16 eV s / 5e5 eV
    const CliRun r = run({"resonance", "evolve", "--e-r", "100", "--gamma", "0.5", "--t", "0",
                          "--energy-unit", "MeV"});
    CHECK(r.code == 0);
    CHECK(r.report["lifetime_seconds"].get<double>() ==
          doctest::Approx(6.582119569e-16 / 5e5).epsilon(1e-12));
    CHECK(run({"resonance", "evolve", "--e-r", "1", "--gamma", "1", "--t", "0",
               "--energy-unit", "furlongs"})
              .code == 2);
}

TEST_CASE("resonance fit from CSV") {
    TempDir dir;
    const ResonancePole truth(5.0, 0.8);
    std::vector<LineshapeSample> samples;
    for (int i = 0; i < 201; ++i) {
        const double e = 1.0 + 8.0 * i / 200.0;
        samples.push_back({e, lineshape(truth, e), std::nullopt});
    }
    save_lineshape(dir.file("line.csv"), samples);
    const CliRun r = run({"resonance", "fit", "--input", dir.file("line.csv")});
    CHECK(r.code == 0);
    CHECK(r.report["pole"]["e_r"].get<double>() == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(r.report["pole"]["gamma"].get<double>() == doctest::Approx(0.8).epsilon(1e-6));
    CHECK(r.report["iterations"].get<int>() >= 0);  // FWHM init can land converged
    CHECK(r.report["residual_norm"].get<double>() <= 1e-8);
}

TEST_CASE("gamow pair against the continuation value") {
    TempDir dir;
    const SampledWaveFunction psi =
        conjugate(oracles::single_pole_wf(oracles::default_grid(), cplx(0.0, 1.0)));
    save_wavefunction(dir.file("psi.csv"), psi);
    const CliRun r = run({"gamow", "pair", "--input", dir.file("psi.csv"), "--e-r", "2",
                          "--gamma", "1"});
    CHECK(r.code == 0);
    CHECK(r.report["pairing"]["re"].get<double>() == doctest::Approx(0.32).epsilon(1e-6));
    CHECK(r.report["pairing"]["im"].get<double>() == doctest::Approx(0.24).epsilon(1e-6));
}

TEST_CASE("sim lifetime from a dark-period file") {
    TempDir dir;
    save_dark_periods(dir.file("dark.csv"), {{0.0, 2.0}, {10.0, 14.0}, {20.0, 26.0}});
    const CliRun r = run({"sim", "lifetime", "--input", dir.file("dark.csv")});
    CHECK(r.code == 0);
    CHECK(r.report["tau_hat"].get<double>() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r.report["n"] == 3);
}

TEST_CASE("sim run, detect and pipeline on a scaled config") {
    TempDir dir;
    std::ofstream cfg(dir.file("cfg.json"));
    cfg << R"({"schema_version":"1","gamma":0.2,"bright_rate":2000,"shelving_rate":0.5,)"
        << R"("background_rate":20,"bin_width":0.05,"duration":400,"seed":3,)"
        << R"("low_threshold":25,"high_threshold":60,"min_bins":2,)"
        << R"("target_dark_periods":40,"max_duration":3000})";
    cfg.close();

    CliRun r = run({"sim", "run", "--config", dir.file("cfg.json"), "--trace",
                    dir.file("trace.csv")});
    CHECK(r.code == 0);
    CHECK(r.report["photons"].get<std::uint64_t>() > 100000);

    r = run({"sim", "detect", "--trace", dir.file("trace.csv"), "--low", "25", "--high", "60",
             "--min-bins", "2", "--output", dir.file("dark.csv")});
    CHECK(r.code == 0);
    CHECK(r.report["count"].get<int>() >= 20);

    r = run({"pipeline", "full", "--config", dir.file("cfg.json")});
    CHECK(r.code == 0);
    CHECK(r.report["n_dark_periods"].get<int>() >= 40);
    CHECK(r.report["tau_theor"].get<double>() == doctest::Approx(5.0).epsilon(1e-12));
    const double ratio = r.report["ratio"].get<double>();
    CHECK(ratio > 0.5);
    CHECK(ratio < 1.5);
}

TEST_CASE("cli validation failures use exit code 2") {
    CHECK(run({"hardy", "check", "--input", "/nonexistent/file.csv"}).code == 2);
    CHECK(run({"hardy", "check"}).code == 2);           // missing required option
    CHECK(run({"frobnicate"}).code == 2);               // unknown subcommand
    CHECK(run({"sim", "lifetime", "--input", "/nonexistent.csv"}).code == 2);
}

TEST_CASE("relative outputs honor HARDYQ_OUTPUT_DIR") {
    TempDir dir;
    save_dark_periods(dir.file("dark.csv"), {{0.0, 2.0}, {3.0, 7.0}});
    ::setenv("HARDYQ_OUTPUT_DIR", dir.path.string().c_str(), 1);
    const CliRun r = run({"sim", "lifetime", "--input", dir.file("dark.csv"), "--report",
                          "report.json"});
    ::unsetenv("HARDYQ_OUTPUT_DIR");
    CHECK(r.code == 0);
    CHECK(fs::exists(dir.file("report.json")));
}
