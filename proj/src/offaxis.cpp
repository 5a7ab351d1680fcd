#include "hardyq/offaxis.hpp"

#include <cmath>
#include <numbers>

#include "hardyq/detail/tailmodel.hpp"

namespace hardyq {

cplx evaluate_offaxis(const SampledWaveFunction& wf, cplx z, HalfPlane hp) {
    if (z.imag() == 0.0)
        throw DomainViolation("evaluate_offaxis: z must lie strictly off the real axis");
    if (hp == HalfPlane::Lower && z.imag() > 0.0)
        throw DomainViolation("evaluate_offaxis: Lower-class functions are evaluated in C-");
    if (hp == HalfPlane::Upper && z.imag() < 0.0)
        throw DomainViolation("evaluate_offaxis: Upper-class functions are evaluated in C+");

    const int n = wf.grid.n;
    const double de = wf.grid.spacing();

    cplx acc = 0.5 * (wf.values[0] / (wf.grid.e_min - z) +
                      wf.values[n - 1] / (wf.grid.e_max - z));
    for (int k = 1; k < n - 1; ++k)
        acc += wf.values[k] / (wf.grid.energy(k) - z);
    acc *= de;

    const detail::TailModel model = detail::fit_tail_model(wf);
    acc += detail::tail_offaxis_integral(model, z, std::abs(wf.grid.e_max),
                                         std::abs(wf.grid.e_min));

    const cplx prefactor = (hp == HalfPlane::Lower) ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
    return prefactor / (2.0 * std::numbers::pi) * acc;
}

}  // namespace hardyq
