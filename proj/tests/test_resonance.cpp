#include <doctest.h>

#include <cmath>

#include "hardyq/resonance.hpp"
#include "oracles.hpp"

using namespace hardyq;

namespace {

// FWHM by bisection on each side of the peak (independent of the identity)
double fwhm_by_bisection(const ResonancePole& pole) {
    const double half_level = lineshape(pole, pole.e_r) / 2.0;
    auto solve_side = [&](double lo, double hi) {
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (lineshape(pole, mid) > half_level)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double span = 50.0 * pole.gamma;
    const double right = solve_side(pole.e_r, pole.e_r + span);
    double lo = pole.e_r - span, hi = pole.e_r;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (lineshape(pole, mid) > half_level)
            hi = mid;
        else
            lo = mid;
    }
    const double left = 0.5 * (lo + hi);
    return right - left;
}

}  // namespace

TEST_CASE("breit-wigner amplitude values") {
    const ResonancePole pole(2.0, 1.0);
    CHECK(std::abs(bw_amplitude(pole, cplx(2.0, 0.0)) - cplx(0.0, -2.0)) <= 1e-14);

    const ResonancePole zero_res(2.0, 1.0, cplx(0.0, 0.0));
    for (double e : {-3.0, 0.0, 2.0, 7.5})
        CHECK(bw_amplitude(zero_res, cplx(e, 0.0)) == cplx(0.0, 0.0));

    // at E_R + Gamma/2 the intensity halves
    const double at_peak = lineshape(pole, pole.e_r);
    const double at_half = std::norm(bw_amplitude(pole, cplx(pole.e_r + pole.gamma / 2, 0.0)));
    CHECK(at_half == doctest::Approx(at_peak / 2.0).epsilon(1e-12));

    CHECK_THROWS_AS(bw_amplitude(pole, pole.z()), PoleEvaluationError);
    CHECK_THROWS_AS(ResonancePole(0.0, 0.0), ValidationError);
    CHECK_THROWS_AS(ResonancePole(0.0, -1.0), ValidationError);
}

TEST_CASE("lineshape identities over random poles") {
    oracles::TestRng rng(11);
    for (int i = 0; i < 10; ++i) {
        const ResonancePole pole(rng.uniform(-10.0, 10.0), rng.uniform(0.05, 5.0),
                                 cplx(rng.normal(), rng.normal()));
        const double peak = lineshape(pole, pole.e_r);
        CHECK(peak == doctest::Approx(std::norm(pole.residue) /
                                      (0.25 * pole.gamma * pole.gamma))
                          .epsilon(1e-12));
        CHECK(lineshape(pole, pole.e_r + pole.gamma / 2) ==
              doctest::Approx(peak / 2).epsilon(1e-12));
        CHECK(lineshape(pole, pole.e_r - pole.gamma / 2) ==
              doctest::Approx(peak / 2).epsilon(1e-12));
        CHECK(fwhm_by_bisection(pole) == doctest::Approx(pole.gamma).epsilon(1e-9));

        // |amplitude|^2 consistency on scattered energies
        for (double e : {pole.e_r - 7.1, pole.e_r + 0.3, pole.e_r + 12.0}) {
            const double l = lineshape(pole, e);
            const double a2 = std::norm(bw_amplitude(pole, cplx(e, 0.0)));
            CHECK(l == doctest::Approx(a2).epsilon(1e-12));
        }
        // monotone decay beyond the half-maximum points
        double prev = lineshape(pole, pole.e_r + pole.gamma / 2);
        for (int s = 1; s <= 20; ++s) {
            const double cur = lineshape(pole, pole.e_r + pole.gamma / 2 + s * pole.gamma);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("gamow wavefunction sampling and normalization") {
    const EnergyGrid grid = oracles::default_grid();
    const ResonancePole pole(0.0, 2.0);  // z_R = -i, |BW|^2 = 1/(E^2+1)
    const GamowState state = gamow_wavefunction(pole, grid);

    CHECK(std::abs(norm(state.wavefunction) - 1.0) <= 1e-12);

    // normalization against the truncated closed form int_{-A}^{A} dE/(E^2+1) = 2*atan(A),
    // and against the idealized full-line value 1/sqrt(pi) with a truncation allowance
    const double c = std::abs(state.normalization);
    CHECK(c * std::sqrt(2.0 * std::atan(200.0)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c * std::sqrt(std::numbers::pi) == doctest::Approx(1.0).epsilon(2e-3));

    // invariant: values equal normalization * r/(E - z_R)
    for (int k = 0; k < grid.n; k += 1111) {
        const cplx want = state.normalization * pole.residue / (grid.energy(k) - pole.z());
        CHECK(std::abs(state.wavefunction.values[k] - want) <=
              1e-12 * std::abs(want));
    }

    // pole in C- makes the sampled amplitude Hardy-upper
    CHECK(hardy_residual(state.wavefunction, HalfPlane::Upper, 1e-6).passes);

    // doubling the residue leaves the normalized function unchanged up to phase
    const GamowState doubled =
        gamow_wavefunction(ResonancePole(0.0, 2.0, cplx(2.0, 0.0)), grid);
    for (int k = 0; k < grid.n; k += 2222)
        CHECK(std::abs(doubled.wavefunction.values[k] - state.wavefunction.values[k]) <= 1e-12);

    CHECK_THROWS_AS(gamow_wavefunction(pole, EnergyGrid(-10.0, 10.0, 256)), CoverageError);
}

TEST_CASE("gamow evolution factor and survival probability") {
    const ResonancePole pole(2.0, 1.0);
    CHECK(gamow_evolution_factor(pole, 0.0) == cplx(1.0, 0.0));
    CHECK(std::norm(gamow_evolution_factor(pole, 2.0)) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(gamow_evolution_factor(pole, -1.0), SemigroupDomainError);

    CHECK(survival_probability(pole, 0.0) == 1.0);
    CHECK(survival_probability(pole, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(survival_probability(pole, -0.5), SemigroupDomainError);

    oracles::TestRng rng(13);
    for (int i = 0; i < 8; ++i) {
        const ResonancePole p(rng.uniform(-5.0, 5.0), rng.uniform(0.1, 3.0));
        const double t1 = rng.uniform(0.0, 10.0), t2 = rng.uniform(0.0, 10.0);
        const cplx lhs = gamow_evolution_factor(p, t1) * gamow_evolution_factor(p, t2);
        const cplx rhs = gamow_evolution_factor(p, t1 + t2);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
        CHECK(std::norm(gamow_evolution_factor(p, t1)) ==
              doctest::Approx(survival_probability(p, t1)).epsilon(1e-12));
    }
}

TEST_CASE("gamow pairing through the titchmarsh continuation") {
    const EnergyGrid grid = oracles::default_grid();
    // conj(psi)(E) = 1/(E - i)  =>  psi(E) = 1/(E + i)
    const SampledWaveFunction psi = conjugate(oracles::single_pole_wf(grid, cplx(0.0, 1.0)));
    const ResonancePole pole(2.0, 1.0);  // z_R = 2 - 0.5i
    const cplx got = gamow_pairing(psi, pole);
    const cplx want = 1.0 / cplx(2.0, -1.5);  // = 0.32 + 0.24i
    CHECK(want.real() == doctest::Approx(0.32).epsilon(1e-12));
    CHECK(want.imag() == doctest::Approx(0.24).epsilon(1e-12));
    CHECK(std::abs(got - want) <= 1e-6 * std::abs(want));

    // linearity in psi for real scale
    std::vector<cplx> scaled(psi.values);
    for (cplx& v : scaled) v *= 3.0;
    const cplx got3 = gamow_pairing(SampledWaveFunction(grid, scaled), pole);
    CHECK(std::abs(got3 - 3.0 * got) <= 1e-12 * std::abs(got3));

    // a gaussian is not an admissible observable
    std::vector<cplx> v(grid.n);
    for (int k = 0; k < grid.n; ++k) {
        const double e = grid.energy(k);
        v[k] = std::exp(-e * e);
    }
    CHECK_THROWS_AS(gamow_pairing(SampledWaveFunction(grid, v), pole), NotAnObservableError);
}

TEST_CASE("lifetime-width identity and the quadrature cross-check") {
    CHECK(lifetime(ResonancePole(0.0, 1.0)) == 1.0);
    CHECK(lifetime(ResonancePole(0.0, 2.0)) == 0.5);

    oracles::TestRng rng(17);
    for (int i = 0; i < 10; ++i) {
        const ResonancePole pole(0.0, rng.uniform(0.02, 50.0));
        CHECK(lifetime(pole) == 1.0 / pole.gamma);  // exact reciprocal by construction
        CHECK(std::abs(lifetime(pole) * pole.gamma - 1.0) <= 2e-16);
        const double quad = lifetime_by_quadrature(pole);
        CHECK(std::abs(quad - lifetime(pole)) <= 1e-9 * lifetime(pole));
    }
}
