#pragma once

#include "hardyq/grid.hpp"

namespace hardyq {

// Sign convention is explicit, never inferred: prepared states evolve with
// e^{-iEt}, registered observables with e^{+iEt}.
enum class Direction { State, Observable };

// Pointwise unimodular phase; L2-norm preserving for any real t. The t >= 0
// restriction belongs to the semigroup checks and Born probabilities, not here.
SampledWaveFunction time_translate(const SampledWaveFunction& wf, double t, Direction dir);

// |<psi | phi(t)>|^2 for t >= 0 only; t < 0 raises SemigroupDomainError
// (an observable can be measured only after the state is prepared).
double born_probability(const SampledWaveFunction& psi, const SampledWaveFunction& phi,
                        double t);

}  // namespace hardyq
