#pragma once

#include <array>

#include "hardyq/grid.hpp"

namespace hardyq::detail {

// Asymptotic model of a sampled wave function near the grid edges:
//   h(E) ~ exp(i*theta*E) * sum_{p=1..order} coeff[p-1] / E^p .
// Square-integrable Hardy-class functions admit such an expansion when they
// are analytic at infinity; theta captures a time-translation modulation.
struct TailModel {
    double theta = 0.0;
    int order = 0;
    std::array<cplx, 8> coeff{};
    bool active = false;
};

// Fits the model on the outer `zone_fraction` of samples (half per side).
// Returns an inactive model when the tails are numerically negligible or the
// edges sit too close to E = 0 for a Laurent basis.
TailModel fit_tail_model(const SampledWaveFunction& wf, int order = 4,
                         double zone_fraction = 0.25);

// out[p-1] = int_{E > a_right} e^{iEx} E^{-p} dE + int_{E < -a_left} e^{iEx} E^{-p} dE
// for p = 1..order, real x (the pair is finite for p = 1 as a principal pair).
void tail_pair_integrals(int order, double x, double a_right, double a_left, cplx* out);

// int over both tails of (model without modulation) / (E - w); theta folded in
// analytically via the exponential integral.
cplx tail_offaxis_integral(const TailModel& m, cplx w, double a_right, double a_left);

}  // namespace hardyq::detail
