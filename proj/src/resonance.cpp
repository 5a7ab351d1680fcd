#include "hardyq/resonance.hpp"

#include <cmath>
#include <string>

#include "hardyq/offaxis.hpp"

namespace hardyq {

ResonancePole::ResonancePole(double e_r_, double gamma_, cplx residue_)
    : e_r(e_r_), gamma(gamma_), residue(residue_) {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ValidationError("ResonancePole: gamma must be positive and finite");
    if (!std::isfinite(e_r))
        throw ValidationError("ResonancePole: e_r must be finite");
}

cplx bw_amplitude(const ResonancePole& pole, cplx e) {
    const cplx d = e - pole.z();
    if (d == cplx(0.0, 0.0))
        throw PoleEvaluationError("bw_amplitude: evaluation exactly at the pole z_R");
    return pole.residue / d;
}

double lineshape(const ResonancePole& pole, double e) {
    const double half = 0.5 * pole.gamma;
    const double d = e - pole.e_r;
    return std::norm(pole.residue) / (d * d + half * half);
}

GamowState gamow_wavefunction(const ResonancePole& pole, const EnergyGrid& grid,
                              double min_width_gammas) {
    const double need = min_width_gammas * pole.gamma;
    const double left = pole.e_r - grid.e_min;
    const double right = grid.e_max - pole.e_r;
    if (left < need || right < need)
        throw CoverageError("gamow_wavefunction: grid must extend at least " +
                            std::to_string(need) + " beyond e_r=" + std::to_string(pole.e_r) +
                            " on both sides (has " + std::to_string(left) + " / " +
                            std::to_string(right) + ")");

    std::vector<cplx> values(grid.n);
    for (int k = 0; k < grid.n; ++k)
        values[k] = pole.residue / (grid.energy(k) - pole.z());
    SampledWaveFunction raw(grid, std::move(values));

    const double scale = 1.0 / norm(raw);
    for (cplx& v : raw.values) v *= scale;
    return GamowState{pole, std::move(raw), cplx(scale, 0.0)};
}

cplx gamow_evolution_factor(const ResonancePole& pole, double t) {
    if (t < 0.0)
        throw SemigroupDomainError(
            "gamow_evolution_factor: t < 0 outside the semigroup domain (t >= 0 only)");
    const double ang = -pole.e_r * t;
    return std::exp(-0.5 * pole.gamma * t) * cplx(std::cos(ang), std::sin(ang));
}

double survival_probability(const ResonancePole& pole, double t) {
    if (t < 0.0)
        throw SemigroupDomainError(
            "survival_probability: t < 0 outside the semigroup domain (t >= 0 only)");
    return std::exp(-pole.gamma * t);
}

cplx gamow_pairing(const SampledWaveFunction& psi, const ResonancePole& pole,
                   double hardy_tol) {
    const SampledWaveFunction conj_psi = conjugate(psi);
    const ResidualReport report = hardy_residual(conj_psi, HalfPlane::Lower, hardy_tol);
    if (!report.passes)
        throw NotAnObservableError(
            "gamow_pairing: conj(psi) is not Hardy-lower (forbidden mass " +
            std::to_string(report.forbidden_mass) + " > tol " + std::to_string(hardy_tol) +
            "); psi is not an admissible observable");
    return evaluate_offaxis(conj_psi, pole.z(), HalfPlane::Lower);
}

double lifetime(const ResonancePole& pole) { return 1.0 / pole.gamma; }

double lifetime_by_quadrature(const ResonancePole& pole, double cutoff_gammas) {
    const double upper = cutoff_gammas / pole.gamma;
    const int panels = 1 << 13;  // composite Simpson
    const double h = upper / (2 * panels);
    double acc = survival_probability(pole, 0.0) + survival_probability(pole, upper);
    for (int k = 1; k < 2 * panels; ++k)
        acc += survival_probability(pole, k * h) * ((k % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace hardyq
