#include "hardyq/detail/tailmodel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hardyq/detail/expint.hpp"

namespace hardyq::detail {

namespace {

// Solve the real SPD system A x = b (Cholesky, n small).
bool solve_spd(std::vector<double>& a, std::vector<double>& b, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double s = a[i * n + j];
            for (int k = 0; k < i; ++k) s -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (s <= 0.0) return false;
                a[i * n + i] = std::sqrt(s);
            } else {
                a[j * n + i] = s / a[i * n + i];
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= a[i * n + k] * b[k];
        b[i] = s / a[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < n; ++k) s -= a[k * n + i] * b[k];
        b[i] = s / a[i * n + i];
    }
    return true;
}

// R_p(x; A) = int_A^inf e^{iEx} E^{-p} dE, p = 1..order, real x != 0.
void right_tail_integrals(int order, double x, double a, cplx* out) {
    const double ax = std::abs(x);
    cplx r1 = expint_e1(cplx(0.0, a * ax));
    if (x > 0.0) r1 = std::conj(r1);
    out[0] = r1;
    const cplx eiax(std::cos(a * x), std::sin(a * x));
    double apow = 1.0;  // A^p
    for (int p = 1; p < order; ++p) {
        apow *= a;
        out[p] = eiax / (p * apow) + (cplx(0.0, x) / static_cast<double>(p)) * out[p - 1];
    }
}

}  // namespace

TailModel fit_tail_model(const SampledWaveFunction& wf, int order, double zone_fraction) {
    TailModel model;
    const int n = wf.grid.n;
    order = std::clamp(order, 1, 8);
    int nz = static_cast<int>(n * zone_fraction / 2.0);
    nz = std::clamp(nz, std::min(16, n / 4), n / 2);

    // zone samples: nz leading + nz trailing
    std::vector<int> idx;
    idx.reserve(2 * nz);
    for (int k = 0; k < nz; ++k) idx.push_back(k);
    for (int k = n - nz; k < n; ++k) idx.push_back(k);

    double zone_ms = 0.0, total_ms = 0.0;
    for (const cplx& v : wf.values) total_ms += std::norm(v);
    for (int k : idx) zone_ms += std::norm(wf.values[k]);
    if (zone_ms <= 1e-26 * total_ms) return model;  // tails negligible

    const double span = wf.grid.e_max - wf.grid.e_min;
    double min_edge = std::min(std::abs(wf.grid.e_min), std::abs(wf.grid.e_max));
    for (int k : idx) min_edge = std::min(min_edge, std::abs(wf.grid.energy(k)));
    if (min_edge < 0.05 * span) return model;  // Laurent basis unusable near E = 0

    // coarse modulation: weighted mean phase step per side
    const double de = wf.grid.spacing();
    cplx step_sum = 0.0;
    for (int k = 0; k + 1 < nz; ++k)
        step_sum += wf.values[k + 1] * std::conj(wf.values[k]);
    cplx step_sum_r = 0.0;
    for (int k = n - nz; k + 1 < n; ++k)
        step_sum_r += wf.values[k + 1] * std::conj(wf.values[k]);
    double theta = std::arg(step_sum + step_sum_r) / de;

    // refine theta and fit Laurent coefficients; basis (Es/E)^p, p = 0..order,
    // with the p = 0 slot acting as the residual-modulation detector.
    const double es = std::max(std::abs(wf.grid.e_min), std::abs(wf.grid.e_max));
    const int m = order + 1;
    const int rows = static_cast<int>(idx.size());
    std::vector<double> X(rows * m);
    for (int r = 0; r < rows; ++r) {
        const double u = es / wf.grid.energy(idx[r]);
        double up = 1.0;
        for (int p = 0; p < m; ++p) {
            X[r * m + p] = up;
            up *= u;
        }
    }
    std::vector<double> ata(m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            for (int r = 0; r < rows; ++r) s += X[r * m + i] * X[r * m + j];
            ata[i * m + j] = s;
        }

    std::vector<cplx> coef(m);
    for (int iter = 0; iter < 4; ++iter) {
        std::vector<double> bre(m, 0.0), bim(m, 0.0);
        for (int r = 0; r < rows; ++r) {
            const double e = wf.grid.energy(idx[r]);
            const cplx u = wf.values[idx[r]] * cplx(std::cos(-theta * e), std::sin(-theta * e));
            for (int p = 0; p < m; ++p) {
                bre[p] += X[r * m + p] * u.real();
                bim[p] += X[r * m + p] * u.imag();
            }
        }
        std::vector<double> a1 = ata, a2 = ata;
        if (!solve_spd(a1, bre, m) || !solve_spd(a2, bim, m)) return model;
        for (int p = 0; p < m; ++p) coef[p] = cplx(bre[p], bim[p]);

        double cmax = 0.0;
        for (int p = 1; p < m; ++p) cmax = std::max(cmax, std::abs(coef[p]));
        if (cmax == 0.0) break;
        if (std::abs(coef[1]) < 0.01 * cmax) break;  // refinement needs a 1/E lead term
        const double delta = (coef[0] / (cplx(0.0, 1.0) * coef[1])).real() / es;
        theta += delta;
        if (std::abs(delta) < 1e-12) break;
    }

    model.theta = theta;
    model.order = order;
    double esp = 1.0;
    for (int p = 1; p <= order; ++p) {
        esp *= es;
        model.coeff[p - 1] = coef[p] * esp;
    }
    model.active = true;
    return model;
}

void tail_pair_integrals(int order, double x, double a_right, double a_left, cplx* out) {
    if (x == 0.0) {
        out[0] = std::log(a_left / a_right);  // principal pair, finite
        double rp = 1.0, lp = 1.0;
        for (int p = 2; p <= order; ++p) {
            rp *= a_right;
            lp *= a_left;
            const double sgn = (p % 2 == 0) ? 1.0 : -1.0;
            out[p - 1] = (1.0 / rp + sgn / lp) / (p - 1);
        }
        return;
    }
    cplx right[8], left[8];
    right_tail_integrals(order, x, a_right, right);
    right_tail_integrals(order, x, a_left, left);
    for (int p = 1; p <= order; ++p) {
        const double sgn = (p % 2 == 0) ? 1.0 : -1.0;
        // int_{E < -a_left} e^{iEx} E^{-p} dE = (-1)^p conj(R_p(x; a_left)) for real x
        out[p - 1] = right[p - 1] + sgn * std::conj(left[p - 1]);
    }
}

namespace {

// int_A^inf e^{i*theta*E} E^{-p} dE / (E - w) summed into closed form:
// (1/w^p) [ e^{i*theta*w} E1(-i*theta*(A-w)) - sum_{q=1..p} w^{q-1} R_q(theta; A) ]
cplx right_offaxis(const TailModel& m, cplx w, double a) {
    const double theta = m.theta;
    cplx acc = 0.0;
    if (std::abs(theta) * (a + std::abs(w)) < 1e-8) {
        // unmodulated branch
        cplx wp = 1.0;
        cplx logterm = -std::log(1.0 - w / a);
        cplx inner = logterm;
        for (int p = 1; p <= m.order; ++p) {
            wp *= w;
            acc += m.coeff[p - 1] / wp * inner;
            // inner for next p gains the -w^{p-1} A^{1-p}/(p-1)... build incrementally
            inner -= std::pow(w, p) * std::pow(a, -p) / static_cast<double>(p);
        }
        return acc;
    }
    // modulated branch via E1 with complex argument
    cplx pole_part;
    if (theta > 0.0) {
        pole_part = std::exp(cplx(0.0, theta) * w) * expint_e1(cplx(0.0, -theta) * (a - w));
    } else {
        const cplx wc = std::conj(w);
        pole_part = std::conj(std::exp(cplx(0.0, -theta) * wc) *
                              expint_e1(cplx(0.0, theta) * (a - wc)));
    }
    cplx rq[8];
    right_tail_integrals(m.order, theta, a, rq);
    cplx wp = 1.0;
    for (int p = 1; p <= m.order; ++p) {
        wp *= w;
        cplx inner = pole_part;
        cplx wq = 1.0;
        for (int q = 1; q <= p; ++q) {
            inner -= wq * rq[q - 1];
            wq *= w;
        }
        acc += m.coeff[p - 1] / wp * inner;
    }
    return acc;
}

}  // namespace

cplx tail_offaxis_integral(const TailModel& m, cplx w, double a_right, double a_left) {
    if (!m.active) return 0.0;
    // left tail via E -> -F: int_{E<-a_left} e^{i th E} E^{-p}/(E-w) dE equals the
    // right-tail form at (-w) with theta -> -theta and coeff_p -> (-1)^{p+1} coeff_p
    cplx right = right_offaxis(m, w, a_right);

    TailModel ml = m;
    ml.theta = -m.theta;
    for (int p = 1; p <= m.order; ++p) {
        const double sgn = (p % 2 == 0) ? -1.0 : 1.0;  // (-1)^{p+1}
        ml.coeff[p - 1] = sgn * m.coeff[p - 1];
    }
    cplx left = right_offaxis(ml, -w, a_left);
    return right + left;
}

}  // namespace hardyq::detail
