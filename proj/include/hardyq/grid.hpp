#pragma once

#include <complex>
#include <vector>

#include "hardyq/errors.hpp"

namespace hardyq {

using cplx = std::complex<double>;

// Uniform real-energy grid E_k = e_min + k*spacing, k = 0..n-1 (both endpoints
// included). Natural units, hbar = 1. Grids may extend to negative E; negative
// energies are read as second-Riemann-sheet values.
struct EnergyGrid {
    double e_min;
    double e_max;
    int n;

    EnergyGrid(double e_min_, double e_max_, int n_);

    double spacing() const { return (e_max - e_min) / (n - 1); }
    double energy(int k) const { return e_min + k * spacing(); }

    bool operator==(const EnergyGrid&) const = default;
};

// Complex energy wave function phi(E) sampled on an EnergyGrid.
// Dimension 1/sqrt(energy), so that the L2 norm over E is dimensionless.
struct SampledWaveFunction {
    EnergyGrid grid;
    std::vector<cplx> values;

    SampledWaveFunction(EnergyGrid g, std::vector<cplx> v);
};

// Trapezoidal quadrature of integral conj(psi)(E) * phi(E) dE.
// Conjugate-symmetric: inner_product(a, b) == conj(inner_product(b, a)).
cplx inner_product(const SampledWaveFunction& psi, const SampledWaveFunction& phi);

double norm(const SampledWaveFunction& wf);

SampledWaveFunction conjugate(const SampledWaveFunction& wf);

}  // namespace hardyq
