#include <doctest.h>

#include <cmath>

#include "hardyq/offaxis.hpp"
#include "oracles.hpp"

using namespace hardyq;

TEST_CASE("titchmarsh evaluation of 1/(E - i) in the lower half-plane") {
    const EnergyGrid grid = oracles::default_grid();
    const SampledWaveFunction g = oracles::single_pole_wf(grid, cplx(0.0, 1.0));
    const cplx z(1.0, -0.5);
    const cplx got = evaluate_offaxis(g, z, HalfPlane::Lower);
    const cplx want = 1.0 / cplx(1.0, -1.5);  // = 0.30769... + 0.46154...i
    CHECK(std::abs(got - want) <= 1e-6 * std::abs(want));
    CHECK(want.real() == doctest::Approx(0.30769).epsilon(1e-4));
    CHECK(want.imag() == doctest::Approx(0.46154).epsilon(1e-4));
}

TEST_CASE("linearity in the wave function") {
    const EnergyGrid grid = oracles::default_grid();
    const SampledWaveFunction g = oracles::single_pole_wf(grid, cplx(0.0, 1.0));
    const cplx c(2.5, -1.25);
    std::vector<cplx> scaled(g.values);
    for (cplx& v : scaled) v *= c;
    const cplx z(1.0, -0.5);
    const cplx a = evaluate_offaxis(SampledWaveFunction(grid, scaled), z, HalfPlane::Lower);
    const cplx b = c * evaluate_offaxis(g, z, HalfPlane::Lower);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
}

TEST_CASE("two-pole product function close to the axis point") {
    const EnergyGrid grid = oracles::default_grid();
    // 1/((E-i)(E-2i)) = partial fractions with poles i and 2i
    const cplx p1(0.0, 1.0), p2(0.0, 2.0);
    const cplx a1 = 1.0 / (p1 - p2), a2 = 1.0 / (p2 - p1);
    const SampledWaveFunction g = oracles::rational_wf(grid, {p1, p2}, {a1, a2});
    const cplx z(0.0, -0.3);
    const cplx got = evaluate_offaxis(g, z, HalfPlane::Lower);
    const cplx want = 1.0 / ((z - p1) * (z - p2));  // = 1/(-2.99)
    CHECK(want.real() == doctest::Approx(-0.33445).epsilon(1e-4));
    CHECK(std::abs(want.imag()) < 1e-12);
    CHECK(std::abs(got - want) <= 1e-6 * std::abs(want));
}

TEST_CASE("randomized rational battery, poles at least 0.25 off-axis") {
    const EnergyGrid grid = oracles::default_grid();
    oracles::TestRng rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int npoles = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
        std::vector<cplx> poles, amps;
        for (int i = 0; i < npoles; ++i) {
            poles.emplace_back(rng.uniform(-5.0, 5.0), rng.uniform(0.25, 4.0));
            amps.emplace_back(rng.normal(), rng.normal());
        }
        const SampledWaveFunction g = oracles::rational_wf(grid, poles, amps);
        const cplx z(rng.uniform(-5.0, 5.0), -rng.uniform(0.25, 4.0));
        const cplx got = evaluate_offaxis(g, z, HalfPlane::Lower);
        const cplx want = oracles::rational_value(poles, amps, z);
        worst = std::max(worst, std::abs(got - want) / std::abs(want));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("upper half-plane mirror") {
    const EnergyGrid grid = oracles::default_grid();
    const cplx pole(0.5, -1.0);  // pole in C- => Hardy-upper
    const SampledWaveFunction g = oracles::single_pole_wf(grid, pole);
    const cplx z(1.0, 0.5);
    const cplx got = evaluate_offaxis(g, z, HalfPlane::Upper);
    const cplx want = 1.0 / (z - pole);
    CHECK(std::abs(got - want) <= 1e-6 * std::abs(want));
}

TEST_CASE("domain errors for points on or across the axis") {
    const EnergyGrid grid = oracles::default_grid();
    const SampledWaveFunction g = oracles::single_pole_wf(grid, cplx(0.0, 1.0));
    CHECK_THROWS_AS(evaluate_offaxis(g, cplx(1.0, 0.0), HalfPlane::Lower), DomainViolation);
    CHECK_THROWS_AS(evaluate_offaxis(g, cplx(1.0, 0.5), HalfPlane::Lower), DomainViolation);
    CHECK_THROWS_AS(evaluate_offaxis(g, cplx(1.0, -0.5), HalfPlane::Upper), DomainViolation);
}
