#pragma once

#include <string>
#include <vector>

#include "hardyq/fit.hpp"
#include "hardyq/fourier.hpp"
#include "hardyq/grid.hpp"
#include "hardyq/jumpsim.hpp"

namespace hardyq {

// CSV schemas (numbers written with 17 significant digits):
//   wave function   E,re,im          strictly increasing E, uniform spacing
//                                    verified on load (1e-9 relative)
//   lineshape       E,y[,sigma]
//   trace           t_bin_start,counts
//   dark periods    t0,t1
//   event log       t,from,to,photon (level names; from==to is background)
//   time signal     tau,re,im

void save_wavefunction(const std::string& path, const SampledWaveFunction& wf);
SampledWaveFunction load_wavefunction(const std::string& path);

void save_time_signal(const std::string& path, const TimeSignal& ts);

std::vector<LineshapeSample> load_lineshape(const std::string& path);
void save_lineshape(const std::string& path, const std::vector<LineshapeSample>& samples);

void save_trace(const std::string& path, const FluorescenceTrace& trace);
FluorescenceTrace load_trace(const std::string& path);

void save_dark_periods(const std::string& path, const std::vector<DarkPeriod>& periods);
std::vector<DarkPeriod> load_dark_periods(const std::string& path);

void save_events(const std::string& path, const EventLog& log, const LevelSystem& sys);

// Simulator / pipeline configuration (JSON, schema_version "1", unknown fields
// rejected). Defaults are the Ba+ preset; a custom level system may be given
// explicitly with levels/rates/fluorescent.
struct SimConfig {
    BaPresetParams preset;
    double bin_width = 0.1;
    double duration = 500.0;
    std::uint64_t seed = 42;
    double low_threshold = 400.0;
    double high_threshold = 800.0;
    int min_bins = 2;
    int target_dark_periods = 0;  // pipeline: extend the run until reached (0 = fixed duration)
    double max_duration = 20000.0;
    bool has_custom_system = false;
    LevelSystem custom_system;

    LevelSystem system() const { return has_custom_system ? custom_system : ba_preset(preset); }
};

SimConfig load_sim_config(const std::string& path);
SimConfig parse_sim_config(const std::string& json_text);

// CLI entry point (exit code 0 ok / 2 validation / 3 domain / 4 numerical);
// errors are also emitted as structured JSON on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardyq
