#include "hardyq/grid.hpp"

#include <cmath>

namespace hardyq {

EnergyGrid::EnergyGrid(double e_min_, double e_max_, int n_)
    : e_min(e_min_), e_max(e_max_), n(n_) {
    if (!(e_min < e_max))
        throw ValidationError("EnergyGrid: e_min must be < e_max");
    if (n < 8)
        throw ValidationError("EnergyGrid: need at least 8 samples");
    if (!std::isfinite(e_min) || !std::isfinite(e_max))
        throw ValidationError("EnergyGrid: bounds must be finite");
}

SampledWaveFunction::SampledWaveFunction(EnergyGrid g, std::vector<cplx> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n)
        throw ValidationError("SampledWaveFunction: value count does not match grid");
    for (const cplx& z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ValidationError("SampledWaveFunction: non-finite sample");
    }
}

cplx inner_product(const SampledWaveFunction& psi, const SampledWaveFunction& phi) {
    if (!(psi.grid == phi.grid))
        throw IncompatibleGridsError("inner_product: wave functions live on different grids");
    const int n = psi.grid.n;
    cplx acc = 0.5 * (std::conj(psi.values[0]) * phi.values[0] +
                      std::conj(psi.values[n - 1]) * phi.values[n - 1]);
    for (int k = 1; k < n - 1; ++k)
        acc += std::conj(psi.values[k]) * phi.values[k];
    return acc * psi.grid.spacing();
}

double norm(const SampledWaveFunction& wf) {
    return std::sqrt(std::abs(inner_product(wf, wf)));
}

SampledWaveFunction conjugate(const SampledWaveFunction& wf) {
    std::vector<cplx> v(wf.values.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::conj(wf.values[k]);
    return SampledWaveFunction(wf.grid, std::move(v));
}

}  // namespace hardyq
