#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hardyq/io.hpp"

namespace hardyq {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open for writing: " + path);
    return out;
}

struct CsvReader {
    std::ifstream in;
    std::string path;
    long line_no = 0;

    explicit CsvReader(const std::string& p) : in(p), path(p) {
        if (!in) throw ValidationError("cannot open for reading: " + p);
    }

    bool next(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            fields.clear();
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',')) fields.push_back(cell);
            if (!line.empty() && line.back() == ',') fields.push_back("");
            return true;
        }
        return false;
    }

    double num(const std::string& cell) const {
        try {
            std::size_t used = 0;
            const double v = std::stod(cell, &used);
            if (used != cell.size()) throw std::invalid_argument("trailing junk");
            return v;
        } catch (const std::exception&) {
            throw ParseError(path + ": malformed number '" + cell + "'", line_no);
        }
    }

    void expect_header(const std::string& want, const std::vector<std::string>& got) const {
        std::string joined;
        for (std::size_t i = 0; i < got.size(); ++i)
            joined += (i ? "," : "") + got[i];
        if (joined != want)
            throw ParseError(path + ": expected header '" + want + "', found '" + joined + "'",
                             line_no);
    }
};

}  // namespace

void save_wavefunction(const std::string& path, const SampledWaveFunction& wf) {
    std::ofstream out = open_out(path);
    out << "E,re,im\n";
    for (int k = 0; k < wf.grid.n; ++k)
        out << fmt(wf.grid.energy(k)) << ',' << fmt(wf.values[k].real()) << ','
            << fmt(wf.values[k].imag()) << '\n';
}

SampledWaveFunction load_wavefunction(const std::string& path) {
    CsvReader reader(path);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw ParseError(path + ": empty file", 0);
    reader.expect_header("E,re,im", fields);

    std::vector<double> energy;
    std::vector<cplx> values;
    while (reader.next(fields)) {
        if (fields.size() != 3)
            throw ParseError(path + ": expected 3 columns", reader.line_no);
        energy.push_back(reader.num(fields[0]));
        values.emplace_back(reader.num(fields[1]), reader.num(fields[2]));
    }
    if (energy.size() < 8) throw ParseError(path + ": need at least 8 rows", reader.line_no);

    const double spacing0 = energy[1] - energy[0];
    if (!(spacing0 > 0.0))
        throw ValidationError(path + ": energies must be strictly increasing");
    for (std::size_t k = 1; k < energy.size(); ++k) {
        const double d = energy[k] - energy[k - 1];
        if (!(d > 0.0))
            throw ValidationError(path + ": energies must be strictly increasing");
        if (std::abs(d - spacing0) > 1e-9 * std::abs(spacing0))
            throw ValidationError(path + ": non-uniform grid spacing at row " +
                                  std::to_string(k + 2));
    }
    EnergyGrid grid(energy.front(), energy.back(), static_cast<int>(energy.size()));
    return SampledWaveFunction(grid, std::move(values));
}

void save_time_signal(const std::string& path, const TimeSignal& ts) {
    std::ofstream out = open_out(path);
    out << "tau,re,im\n";
    for (std::size_t j = 0; j < ts.values.size(); ++j)
        out << fmt(ts.tau(static_cast<int>(j))) << ',' << fmt(ts.values[j].real()) << ','
            << fmt(ts.values[j].imag()) << '\n';
}

std::vector<LineshapeSample> load_lineshape(const std::string& path) {
    CsvReader reader(path);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw ParseError(path + ": empty file", 0);
    bool with_sigma;
    if (fields.size() == 3) {
        reader.expect_header("E,y,sigma", fields);
        with_sigma = true;
    } else {
        reader.expect_header("E,y", fields);
        with_sigma = false;
    }
    std::vector<LineshapeSample> samples;
    while (reader.next(fields)) {
        if (fields.size() != (with_sigma ? 3u : 2u))
            throw ParseError(path + ": wrong column count", reader.line_no);
        LineshapeSample s{reader.num(fields[0]), reader.num(fields[1]), std::nullopt};
        if (with_sigma) s.sigma = reader.num(fields[2]);
        samples.push_back(s);
    }
    if (samples.empty()) throw ParseError(path + ": no data rows", reader.line_no);
    return samples;
}

void save_lineshape(const std::string& path, const std::vector<LineshapeSample>& samples) {
    std::ofstream out = open_out(path);
    const bool with_sigma = !samples.empty() && samples.front().sigma.has_value();
    out << (with_sigma ? "E,y,sigma\n" : "E,y\n");
    for (const LineshapeSample& s : samples) {
        out << fmt(s.e) << ',' << fmt(s.y);
        if (with_sigma) out << ',' << fmt(s.sigma.value_or(0.0));
        out << '\n';
    }
}

void save_trace(const std::string& path, const FluorescenceTrace& trace) {
    std::ofstream out = open_out(path);
    out << "t_bin_start,counts\n";
    for (std::size_t k = 0; k < trace.counts.size(); ++k)
        out << fmt(trace.t_start + k * trace.bin_width) << ',' << trace.counts[k] << '\n';
}

FluorescenceTrace load_trace(const std::string& path) {
    CsvReader reader(path);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw ParseError(path + ": empty file", 0);
    reader.expect_header("t_bin_start,counts", fields);
    std::vector<double> starts;
    std::vector<std::uint64_t> counts;
    while (reader.next(fields)) {
        if (fields.size() != 2)
            throw ParseError(path + ": expected 2 columns", reader.line_no);
        starts.push_back(reader.num(fields[0]));
        const double c = reader.num(fields[1]);
        if (c < 0.0 || c != std::floor(c))
            throw ParseError(path + ": counts must be nonnegative integers", reader.line_no);
        counts.push_back(static_cast<std::uint64_t>(c));
    }
    if (starts.size() < 2) throw ParseError(path + ": need at least 2 bins", reader.line_no);
    FluorescenceTrace trace;
    trace.t_start = starts.front();
    trace.bin_width = starts[1] - starts[0];
    if (!(trace.bin_width > 0.0))
        throw ValidationError(path + ": bin starts must be increasing");
    trace.counts = std::move(counts);
    return trace;
}

void save_dark_periods(const std::string& path, const std::vector<DarkPeriod>& periods) {
    std::ofstream out = open_out(path);
    out << "t0,t1\n";
    for (const DarkPeriod& p : periods) out << fmt(p.t0) << ',' << fmt(p.t1) << '\n';
}

std::vector<DarkPeriod> load_dark_periods(const std::string& path) {
    CsvReader reader(path);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw ParseError(path + ": empty file", 0);
    reader.expect_header("t0,t1", fields);
    std::vector<DarkPeriod> periods;
    while (reader.next(fields)) {
        if (fields.size() != 2)
            throw ParseError(path + ": expected 2 columns", reader.line_no);
        DarkPeriod p{reader.num(fields[0]), reader.num(fields[1])};
        if (!(p.t1 > p.t0))
            throw ValidationError(path + ": dark period needs t1 > t0 at line " +
                                  std::to_string(reader.line_no));
        periods.push_back(p);
    }
    return periods;
}

void save_events(const std::string& path, const EventLog& log, const LevelSystem& sys) {
    std::ofstream out = open_out(path);
    out << "t,from,to,photon\n";
    for (const Event& ev : log.events)
        out << fmt(ev.t) << ',' << sys.levels[ev.from] << ',' << sys.levels[ev.to] << ','
            << (ev.photon ? 1 : 0) << '\n';
}

}  // namespace hardyq
