#include "hardyq/evolution.hpp"

#include <cmath>

namespace hardyq {

SampledWaveFunction time_translate(const SampledWaveFunction& wf, double t, Direction dir) {
    if (!std::isfinite(t)) throw ValidationError("time_translate: t must be finite");
    const double sign = (dir == Direction::State) ? -1.0 : 1.0;
    std::vector<cplx> values(wf.values.size());
    for (int k = 0; k < wf.grid.n; ++k) {
        const double ang = sign * wf.grid.energy(k) * t;
        values[k] = wf.values[k] * cplx(std::cos(ang), std::sin(ang));
    }
    return SampledWaveFunction(wf.grid, std::move(values));
}

double born_probability(const SampledWaveFunction& psi, const SampledWaveFunction& phi,
                        double t) {
    if (t < 0.0)
        throw SemigroupDomainError(
            "born_probability: t < 0 outside the semigroup domain (t >= 0 only)");
    const cplx amp = inner_product(psi, time_translate(phi, t, Direction::State));
    return std::norm(amp);
}

}  // namespace hardyq
