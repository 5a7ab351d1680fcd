#include "hardyq/fourier.hpp"

#include <cmath>
#include <numbers>

#include "hardyq/detail/fft.hpp"

namespace hardyq {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(kTwoPi);
}  // namespace

TimeSignal fourier_to_time(const SampledWaveFunction& wf) {
    const int n = wf.grid.n;
    const double de = wf.grid.spacing();
    const double dtau = kTwoPi / (n * de);
    const int n0 = n / 2;

    // Gcheck(tau_j) = (dE/sqrt(2pi)) e^{i e_min tau_j} sum_k e^{2pi i k (j-n0)/n} G_k
    std::vector<cplx> y(n);
    for (int k = 0; k < n; ++k) {
        const double ang = -kTwoPi * static_cast<double>(static_cast<long long>(k) * n0 % n) / n;
        y[k] = wf.values[k] * cplx(std::cos(ang), std::sin(ang));
    }
    std::vector<cplx> Y = detail::dft(std::move(y), /*inverse=*/true);

    TimeSignal ts;
    ts.spacing = dtau;
    ts.tau_min = -n0 * dtau;
    ts.values.resize(n);
    const double amp = de * kInvSqrt2Pi;
    for (int j = 0; j < n; ++j) {
        const double tau = ts.tau_min + j * dtau;
        const double ang = wf.grid.e_min * tau;
        ts.values[j] = amp * cplx(std::cos(ang), std::sin(ang)) * Y[j];
    }
    return ts;
}

SampledWaveFunction time_to_energy(const TimeSignal& ts, const EnergyGrid& grid) {
    const int n = static_cast<int>(ts.values.size());
    if (n != grid.n)
        throw IncompatibleGridsError("time_to_energy: signal length does not match grid");
    const double de = grid.spacing();
    const double dtau = kTwoPi / (n * de);
    if (std::abs(dtau - ts.spacing) > 1e-12 * dtau)
        throw IncompatibleGridsError("time_to_energy: tau grid is not conjugate to the energy grid");
    const int n0 = n / 2;

    std::vector<cplx> z(n);
    for (int j = 0; j < n; ++j) {
        const double tau = ts.tau(j);
        const double ang = -grid.e_min * tau;
        z[j] = ts.values[j] * cplx(std::cos(ang), std::sin(ang));
    }
    std::vector<cplx> Z = detail::dft(std::move(z), /*inverse=*/false);

    std::vector<cplx> values(n);
    const double amp = dtau * kInvSqrt2Pi;
    for (int k = 0; k < n; ++k) {
        const double ang = kTwoPi * static_cast<double>(static_cast<long long>(k) * n0 % n) / n;
        values[k] = amp * cplx(std::cos(ang), std::sin(ang)) * Z[k];
    }
    return SampledWaveFunction(grid, std::move(values));
}

double time_l2_norm(const TimeSignal& ts) {
    double acc = 0.0;
    for (const cplx& v : ts.values) acc += std::norm(v);
    return std::sqrt(acc * ts.spacing);
}

double energy_l2_norm(const SampledWaveFunction& wf) {
    double acc = 0.0;
    for (const cplx& v : wf.values) acc += std::norm(v);
    return std::sqrt(acc * wf.grid.spacing());
}

}  // namespace hardyq
