#pragma once

#include "hardyq/hardy.hpp"

namespace hardyq {

// S-matrix pole z_R = e_r - i*gamma/2 (strictly in C-) with residue r of the
// partial amplitude a(E) = r/(E - z_R).
struct ResonancePole {
    double e_r;
    double gamma;
    cplx residue;

    ResonancePole(double e_r_, double gamma_, cplx residue_ = cplx(1.0, 0.0));

    cplx z() const { return cplx(e_r, -0.5 * gamma); }
};

// a(e) = r/(e - z_R); e may be complex (second sheet for Re e < 0).
cplx bw_amplitude(const ResonancePole& pole, cplx e);

// |a(E)|^2 = |r|^2 / ((E-E_R)^2 + (Gamma/2)^2): Lorentzian with peak at E_R
// and full width at half-maximum exactly Gamma. (The |r|^2 numerator is the
// dimensional reading of the amplitude-squared form.)
double lineshape(const ResonancePole& pole, double e);

// Sampled Breit-Wigner amplitude, scaled to unit L2 norm on the grid.
// normalization is real positive; wavefunction = normalization * r/(E - z_R).
struct GamowState {
    ResonancePole pole;
    SampledWaveFunction wavefunction;
    cplx normalization;
};

// Requires the grid to extend at least min_width_gammas * gamma beyond e_r on
// both sides; throws CoverageError listing the required width otherwise.
GamowState gamow_wavefunction(const ResonancePole& pole, const EnergyGrid& grid,
                              double min_width_gammas = 20.0);

// e^{-i z_R t} = e^{-i E_R t} e^{-Gamma t/2}, defined for t >= 0 only.
cplx gamow_evolution_factor(const ResonancePole& pole, double t);

// e^{-Gamma t}, t >= 0 only.
double survival_probability(const ResonancePole& pole, double t);

// <psi-|z_R->: analytic continuation of conj(psi) to z_R via the Titchmarsh
// integral. Precondition: conj(psi) is Hardy-lower within hardy_tol (psi is an
// admissible observable); violations raise NotAnObservableError. The value is
// reported in the toolkit convention: plain continuation of conj(psi), no
// extra normalization factor.
cplx gamow_pairing(const SampledWaveFunction& psi, const ResonancePole& pole,
                   double hardy_tol = kDefaultHardyTolerance);

// tau = 1/Gamma (hbar = 1); returned as the exact reciprocal.
double lifetime(const ResonancePole& pole);

// Cross-validation variant: composite-Simpson integral of survival_probability
// on [0, cutoff_gammas/Gamma]; agrees with 1/Gamma to ~1e-10 at the default cutoff.
double lifetime_by_quadrature(const ResonancePole& pole, double cutoff_gammas = 40.0);

}  // namespace hardyq
