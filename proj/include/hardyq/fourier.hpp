#pragma once

#include "hardyq/grid.hpp"

namespace hardyq {

// Fourier-conjugate time samples Gcheck(tau_j), tau_j = tau_min + j*spacing.
// The grid is the conjugate of an EnergyGrid: spacing = 2*pi/(n*dE), centered
// so that tau = 0 is a sample (index n/2 for even n).
struct TimeSignal {
    double tau_min;
    double spacing;
    std::vector<cplx> values;

    double tau(int j) const { return tau_min + j * spacing; }
    int zero_index() const { return static_cast<int>(values.size()) / 2; }
};

// Gcheck(tau) = (1/sqrt(2*pi)) * integral dE exp(+i*E*tau) G(E), discretized
// as the exactly unitary phase-corrected DFT on the conjugate tau grid:
// energy- and time-domain L2 norms agree to rounding, and time_to_energy
// inverts it to rounding.
TimeSignal fourier_to_time(const SampledWaveFunction& wf);

// Inverse of fourier_to_time; `grid` must be the energy grid the signal came from.
SampledWaveFunction time_to_energy(const TimeSignal& ts, const EnergyGrid& grid);

double time_l2_norm(const TimeSignal& ts);

// sqrt(sum |G_k|^2 * dE) — the discrete Parseval partner of time_l2_norm.
double energy_l2_norm(const SampledWaveFunction& wf);

}  // namespace hardyq
