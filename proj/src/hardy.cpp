#include "hardyq/hardy.hpp"

#include <cmath>
#include <numbers>

#include "hardyq/detail/fft.hpp"
#include "hardyq/detail/tailmodel.hpp"
#include "hardyq/evolution.hpp"

namespace hardyq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(kTwoPi);

// Filon-trapezoid cell moments A(th) = int_0^1 (1-s) e^{i s th} ds and
// B(th) = int_0^1 s e^{i s th} ds; W = A + e^{-i th} B is the real weight
// 2(1-cos th)/th^2 applied to the plain oscillatory sum.
void filon_moments(double th, cplx& a, cplx& b) {
    if (std::abs(th) < 1e-3) {
        const double t2 = th * th;
        a = cplx(0.5 - t2 / 24.0, th / 6.0 - t2 * th / 120.0);
        b = cplx(0.5 - t2 / 8.0, th / 3.0 - t2 * th / 30.0);
        return;
    }
    const cplx eith(std::cos(th), std::sin(th));
    b = (eith * cplx(1.0, -th) - 1.0) / (th * th);
    a = (eith - 1.0) / cplx(0.0, th) - b;
}

}  // namespace

namespace detail {

TimeSignal compensated_transform(const SampledWaveFunction& wf) {
    const int n = wf.grid.n;
    const double de = wf.grid.spacing();
    const double dtau = kTwoPi / (n * de);
    const int n0 = n / 2;
    const double e_min = wf.grid.e_min;
    const double e_max = wf.grid.e_max;

    const TailModel model = fit_tail_model(wf);
    const double theta = model.active ? model.theta : 0.0;

    // S(tau_j) = sum_k h_k e^{i E_k tau_j}; identical to the transform of the
    // demodulated samples u_k = h_k e^{-i theta E_k} at frequency tau_j + theta.
    std::vector<cplx> y(n);
    for (int k = 0; k < n; ++k) {
        const double ang = -kTwoPi * static_cast<double>(static_cast<long long>(k) * n0 % n) / n;
        y[k] = wf.values[k] * cplx(std::cos(ang), std::sin(ang));
    }
    std::vector<cplx> S = detail::dft(std::move(y), /*inverse=*/true);

    const cplx u_first = wf.values[0] * cplx(std::cos(-theta * e_min), std::sin(-theta * e_min));
    const cplx u_last = wf.values[n - 1] * cplx(std::cos(-theta * e_max), std::sin(-theta * e_max));

    TimeSignal ts;
    ts.spacing = dtau;
    ts.tau_min = -n0 * dtau;
    ts.values.resize(n);

    std::vector<cplx> tails(model.order);
    for (int j = 0; j < n; ++j) {
        const double tau = ts.tau_min + j * dtau;
        const double nu = tau + theta;  // frequency seen by the demodulated samples
        const double th = nu * de;
        cplx a, b;
        filon_moments(th, a, b);
        const cplx w = a + cplx(std::cos(th), -std::sin(th)) * b;

        const cplx phase_min(std::cos(e_min * tau), std::sin(e_min * tau));
        cplx integral = w * (phase_min * S[j]);
        integral -= a * u_last * cplx(std::cos(e_max * nu), std::sin(e_max * nu));
        integral -= cplx(std::cos(th), -std::sin(th)) * b * u_first *
                    cplx(std::cos(e_min * nu), std::sin(e_min * nu));
        integral *= de;

        if (model.active) {
            tail_pair_integrals(model.order, nu, std::abs(e_max), std::abs(e_min), tails.data());
            for (int p = 0; p < model.order; ++p) integral += model.coeff[p] * tails[p];
        }
        ts.values[j] = kInvSqrt2Pi * integral;
    }
    return ts;
}

}  // namespace detail

namespace {

ResidualReport residual_of_signal(const TimeSignal& ts, HalfPlane hp, double tol) {
    const int n = static_cast<int>(ts.values.size());
    const double dtau = ts.spacing;
    double total = 0.0, forbidden = 0.0;
    for (int j = 0; j < n; ++j) {
        const double tau = ts.tau(j);
        const double m = std::norm(ts.values[j]);
        total += m;
        if (hp == HalfPlane::Lower) {
            if (tau < -1.5 * dtau) forbidden += m;  // excludes the bin at -dtau
        } else {
            if (tau > 1.5 * dtau) forbidden += m;  // excludes the bin at +dtau
        }
    }
    if (total <= 0.0)
        throw ZeroNormError("hardy_residual: zero-norm wave function, forbidden-mass ratio undefined");

    ResidualReport report;
    report.forbidden_mass = std::sqrt(forbidden / total);
    report.tolerance_used = tol;
    report.passes = report.forbidden_mass <= tol;
    report.half_plane = hp;
    report.forbidden_sign = (hp == HalfPlane::Lower) ? -1 : +1;
    report.excluded_bins = 1;
    return report;
}

}  // namespace

ResidualReport hardy_residual(const SampledWaveFunction& wf, HalfPlane hp, double tol) {
    if (!(tol > 0.0)) throw ValidationError("hardy_residual: tolerance must be positive");
    return residual_of_signal(detail::compensated_transform(wf), hp, tol);
}

ResidualReport semigroup_check(const SampledWaveFunction& wf, HalfPlane hp, double t, double tol) {
    const Direction dir = (hp == HalfPlane::Lower) ? Direction::State : Direction::Observable;
    return hardy_residual(time_translate(wf, t, dir), hp, tol);
}

}  // namespace hardyq
