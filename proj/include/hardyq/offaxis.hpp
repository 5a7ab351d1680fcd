#pragma once

#include "hardyq/hardy.hpp"

namespace hardyq {

// Titchmarsh evaluation of a Hardy-class function at an interior point:
//   g in H^2_- (Lower), w in C-:  g(w) = (+i/2pi) int dE g(E)/(E - w)
//   g in H^2_+ (Upper), w in C+:  g(w) = (-i/2pi) int dE g(E)/(E - w)
// Trapezoidal quadrature over the grid plus analytic Laurent-tail correction.
// Accuracy is documented for poles at least 0.25 away from the real axis on
// the default grid; closer points degrade smoothly (no hard cutoff).
cplx evaluate_offaxis(const SampledWaveFunction& wf, cplx z, HalfPlane hp);

}  // namespace hardyq
