#include "hardyq/jumpsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardyq/rng.hpp"

namespace hardyq {

int LevelSystem::index_of(const std::string& name) const {
    for (int i = 0; i < level_count(); ++i)
        if (levels[i] == name) return i;
    throw ValidationError("LevelSystem: unknown level '" + name + "'");
}

void LevelSystem::set_rate(int from, int to, double r) {
    rates[from * level_count() + to] = r;
}

void LevelSystem::set_rate(const std::string& from, const std::string& to, double r) {
    set_rate(index_of(from), index_of(to), r);
}

void LevelSystem::validate() const {
    const int n = level_count();
    if (n < 1 || n > 255) throw ValidationError("LevelSystem: need 1..255 levels");
    if (static_cast<int>(rates.size()) != n * n)
        throw ValidationError("LevelSystem: rate matrix size mismatch");
    for (int i = 0; i < n; ++i) {
        if (rate(i, i) != 0.0)
            throw ValidationError("LevelSystem: diagonal (self) rates must be zero");
        for (int j = 0; j < n; ++j)
            if (!(rate(i, j) >= 0.0) || !std::isfinite(rate(i, j)))
                throw ValidationError("LevelSystem: rates must be finite and >= 0");
    }
    for (const auto& [from, to] : fluorescent) {
        if (from < 0 || from >= n || to < 0 || to >= n)
            throw ValidationError("LevelSystem: fluorescent transition out of range");
        if (!(rate(from, to) > 0.0))
            throw ValidationError("LevelSystem: fluorescent transition has zero rate");
    }
    if (!(detection_efficiency > 0.0) || detection_efficiency > 1.0)
        throw ValidationError("LevelSystem: detection efficiency must be in (0, 1]");
    if (!(background_rate >= 0.0))
        throw ValidationError("LevelSystem: background rate must be >= 0");
    if (initial_level < 0 || initial_level >= n)
        throw ValidationError("LevelSystem: initial level out of range");
}

SimulationSummary simulate_stream(const LevelSystem& sys, double duration, std::uint64_t seed,
                                  const std::function<void(const Event*, std::size_t)>& sink,
                                  std::size_t chunk_events) {
    if (!(duration > 0.0)) throw ValidationError("simulate: duration must be positive");
    sys.validate();

    const int n = sys.level_count();
    std::vector<double> total_rate(n, 0.0);
    std::vector<bool> is_fluor(n * n, false);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) total_rate[i] += sys.rate(i, j);
    for (const auto& [from, to] : sys.fluorescent) is_fluor[from * n + to] = true;

    RngStream rng(seed, 0);
    const bool thin = sys.detection_efficiency < 1.0;

    std::vector<Event> buf;
    buf.reserve(std::min<std::size_t>(chunk_events, std::size_t{1} << 20));

    SimulationSummary summary;
    int state = sys.initial_level;
    double t = 0.0;
    for (;;) {
        const double lam = total_rate[state] + sys.background_rate;
        if (lam <= 0.0) {
            summary.completed_early = true;
            summary.diagnostic = "absorbing state '" + sys.levels[state] +
                                 "' with no background stream; completed early at t=" +
                                 std::to_string(t);
            break;
        }
        t += rng.exponential(lam);
        if (t > duration) break;

        const double pick = rng.uniform_unit() * lam;
        if (pick <= sys.background_rate) {
            buf.push_back(Event{t, static_cast<std::uint8_t>(state),
                                static_cast<std::uint8_t>(state), true});
        } else {
            double acc = sys.background_rate;
            int target = -1;
            for (int j = 0; j < n; ++j) {
                acc += sys.rate(state, j);
                if (pick <= acc) {
                    target = j;
                    break;
                }
            }
            if (target < 0) target = n - 1;  // guard against rounding at the top edge
            bool photon = is_fluor[state * n + target];
            if (photon && thin) photon = rng.uniform_unit() <= sys.detection_efficiency;
            buf.push_back(Event{t, static_cast<std::uint8_t>(state),
                                static_cast<std::uint8_t>(target), photon});
            state = target;
        }
        if (buf.size() >= chunk_events) {
            sink(buf.data(), buf.size());
            summary.event_count += buf.size();
            buf.clear();
        }
    }
    if (!buf.empty()) {
        sink(buf.data(), buf.size());
        summary.event_count += buf.size();
    }
    return summary;
}

EventLog simulate(const LevelSystem& sys, double duration, std::uint64_t seed) {
    EventLog log;
    log.duration = duration;
    log.seed = seed;
    const SimulationSummary summary = simulate_stream(
        sys, duration, seed,
        [&log](const Event* ev, std::size_t count) {
            log.events.insert(log.events.end(), ev, ev + count);
        });
    log.completed_early = summary.completed_early;
    log.diagnostic = summary.diagnostic;
    return log;
}

FluorescenceTrace bin_counts(const EventLog& log, double bin_width) {
    if (!(bin_width > 0.0)) throw ValidationError("bin_counts: bin width must be positive");
    FluorescenceTrace trace;
    trace.bin_width = bin_width;
    trace.t_start = 0.0;
    const std::size_t nbins =
        static_cast<std::size_t>(std::ceil(log.duration / bin_width));
    trace.counts.assign(std::max<std::size_t>(nbins, 1), 0);
    for (const Event& ev : log.events) {
        if (!ev.photon) continue;
        std::size_t k = static_cast<std::size_t>(ev.t / bin_width);
        if (k >= trace.counts.size()) k = trace.counts.size() - 1;
        ++trace.counts[k];
    }
    return trace;
}

DetectionResult detect_dark_periods(const FluorescenceTrace& trace, double low_threshold,
                                    double high_threshold, int min_bins) {
    if (!(low_threshold < high_threshold))
        throw ValidationError("detect_dark_periods: need low_threshold < high_threshold");
    if (min_bins < 1) throw ValidationError("detect_dark_periods: min_bins must be >= 1");

    DetectionResult result;
    const double w = trace.bin_width;
    bool dark = false;
    std::size_t open_bin = 0;
    std::uint64_t cmin = std::numeric_limits<std::uint64_t>::max(), cmax = 0;
    for (std::size_t k = 0; k < trace.counts.size(); ++k) {
        const double c = static_cast<double>(trace.counts[k]);
        cmin = std::min<std::uint64_t>(cmin, trace.counts[k]);
        cmax = std::max<std::uint64_t>(cmax, trace.counts[k]);
        if (!dark && c <= low_threshold) {
            dark = true;
            open_bin = k;
        } else if (dark && c >= high_threshold) {
            if (k - open_bin >= static_cast<std::size_t>(min_bins))
                result.periods.push_back(DarkPeriod{trace.t_start + open_bin * w,
                                                    trace.t_start + k * w});
            dark = false;
        }
    }
    // a period still open at trace end is censored, not emitted
    if (result.periods.empty() && !trace.counts.empty()) {
        if (low_threshold < static_cast<double>(cmin))
            result.warning = "low threshold below the data range; nothing can open";
        else if (high_threshold > static_cast<double>(cmax))
            result.warning = "high threshold above the data range; nothing can close";
    }
    return result;
}

std::vector<double> align_onsets(const std::vector<DarkPeriod>& periods) {
    std::vector<double> durations;
    durations.reserve(periods.size());
    for (const DarkPeriod& p : periods) durations.push_back(p.duration());
    return durations;
}

LifetimeEstimate estimate_lifetime(const std::vector<double>& durations) {
    const int n = static_cast<int>(durations.size());
    if (n < 2)
        throw InsufficientDataError("estimate_lifetime: need at least 2 dark periods");
    for (double d : durations)
        if (!(d >= 0.0) || !std::isfinite(d))
            throw ValidationError("estimate_lifetime: durations must be finite and >= 0");

    // tau_hat = int_0^inf S_hat(t) dt with S_hat(t) = #{dt_i > t}/n:
    // the staircase integral, summed survivors-first.
    std::vector<double> sorted = durations;
    std::sort(sorted.begin(), sorted.end());
    double tau = 0.0;
    double prev = 0.0;
    for (int i = 0; i < n; ++i) {
        tau += (sorted[i] - prev) * static_cast<double>(n - i) / static_cast<double>(n);
        prev = sorted[i];
    }
    return LifetimeEstimate{tau, tau / std::sqrt(static_cast<double>(n)), n};
}

LevelSystem ba_preset(const BaPresetParams& params) {
    if (!(params.gamma > 0.0))
        throw ValidationError("ba_preset: gamma must be positive (the default 1/30 s^-1 "
                              "is a placeholder, not a measured value)");
    LevelSystem sys;
    sys.levels = {"6S1/2", "6P1/2", "5D3/2", "6P3/2", "5D5/2"};
    sys.rates.assign(25, 0.0);
    const int s = 0, p12 = 1, d32 = 2, p32 = 3, d52 = 4;
    // bright cycle: pump at the observed fluorescence rate; excited-state decays
    // on the ~8 ns scale of the level scheme (placeholder magnitudes)
    sys.set_rate(s, p12, params.bright_rate);
    sys.set_rate(p12, s, 1.125e8);
    sys.set_rate(p12, d32, 1.25e7);
    sys.set_rate(d32, p12, 5.0e7);
    // shelving path: lamp excitation once per 1/shelving_rate, fast transfer to D5/2
    sys.set_rate(s, p32, params.shelving_rate);
    sys.set_rate(p32, d52, 1.0e7);
    // metastable decay back to the ground state
    sys.set_rate(d52, s, params.gamma);
    sys.fluorescent = {{p12, s}};
    sys.detection_efficiency = params.detection_efficiency;
    sys.background_rate = params.background_rate;
    sys.initial_level = s;
    sys.validate();
    return sys;
}

}  // namespace hardyq
