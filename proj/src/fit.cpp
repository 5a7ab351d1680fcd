#include "hardyq/fit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace hardyq {

namespace {

struct Workspace {
    std::vector<double> e, y, w;  // w = 1/sigma
    bool weighted = false;
};

// Cholesky solve of the (damped) normal equations; false on non-SPD.
bool solve_normal(std::vector<double> a, std::vector<double>& b, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double s = a[i * n + j];
            for (int k = 0; k < i; ++k) s -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (s <= 0.0 || !std::isfinite(s)) return false;
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

bool invert_spd(const std::vector<double>& a, std::vector<double>& inv, int n) {
    inv.assign(n * n, 0.0);
    for (int col = 0; col < n; ++col) {
        std::vector<double> b(n, 0.0);
        b[col] = 1.0;
        if (!solve_normal(a, b, n)) return false;
        for (int row = 0; row < n; ++row) inv[row * n + col] = b[row];
    }
    return true;
}

double model(double e, const double* p, bool bg) {
    const double d = e - p[0];
    const double half = 0.5 * p[1];
    return p[2] / (d * d + half * half) + (bg ? p[3] : 0.0);
}

void jacobian_row(double e, const double* p, bool bg, double* out) {
    const double d = e - p[0];
    const double half = 0.5 * p[1];
    const double den = d * d + half * half;
    const double den2 = den * den;
    out[0] = p[2] * 2.0 * d / den2;     // d/dE_R
    out[1] = -p[2] * half / den2;       // d/dGamma
    out[2] = 1.0 / den;                 // d/d|r|^2
    if (bg) out[3] = 1.0;
}

double cost_of(const Workspace& ws, const double* p, bool bg) {
    double c = 0.0;
    for (std::size_t i = 0; i < ws.e.size(); ++i) {
        const double r = (ws.y[i] - model(ws.e[i], p, bg)) * ws.w[i];
        c += r * r;
    }
    return c;
}

}  // namespace

FitResult fit_breit_wigner(const std::vector<LineshapeSample>& samples,
                           const FitOptions& options) {
    const std::size_t n = samples.size();
    if (n < 5) throw ValidationError("fit_breit_wigner: need at least 5 samples");

    Workspace ws;
    ws.e.reserve(n);
    ws.y.reserve(n);
    ws.w.reserve(n);
    std::size_t with_sigma = 0;
    std::set<double> distinct;
    for (const LineshapeSample& s : samples) {
        if (!(s.y >= 0.0) || !std::isfinite(s.y) || !std::isfinite(s.e))
            throw ValidationError("fit_breit_wigner: samples must be finite with y >= 0");
        if (s.sigma) {
            if (!(*s.sigma > 0.0))
                throw ValidationError("fit_breit_wigner: sigma must be positive");
            ++with_sigma;
        }
        distinct.insert(s.e);
        ws.e.push_back(s.e);
        ws.y.push_back(s.y);
        ws.w.push_back(s.sigma ? 1.0 / *s.sigma : 1.0);
    }
    if (distinct.size() != n)
        throw ValidationError("fit_breit_wigner: sample energies must be distinct");
    if (with_sigma != 0 && with_sigma != n)
        throw ValidationError("fit_breit_wigner: sigma must be given for all samples or none");
    ws.weighted = (with_sigma == n);

    // initialization: peak position, empirical FWHM, peak amplitude
    const bool bg = options.fit_background;
    const int dim = bg ? 4 : 3;
    std::size_t imax = 0;
    double ymin = ws.y[0];
    for (std::size_t i = 0; i < n; ++i) {
        if (ws.y[i] > ws.y[imax]) imax = i;
        ymin = std::min(ymin, ws.y[i]);
    }
    const double peak = ws.y[imax] - (bg ? ymin : 0.0);
    if (!(peak > 0.0) || ws.y[imax] - ymin <= 1e-14 * std::max(1.0, ws.y[imax]))
        throw RankDeficiencyError("fit_breit_wigner: flat data, no peak to fit");

    const double floor = bg ? ymin : 0.0;
    const double half_level = floor + 0.5 * peak;
    double e_lo = ws.e[imax], e_hi = ws.e[imax];
    for (std::size_t i = imax; i-- > 0;) {
        if (ws.y[i] <= half_level) {
            const double f = (ws.y[i + 1] - half_level) / (ws.y[i + 1] - ws.y[i]);
            e_lo = ws.e[i + 1] + f * (ws.e[i] - ws.e[i + 1]);
            break;
        }
        e_lo = ws.e[i];
    }
    for (std::size_t i = imax + 1; i < n; ++i) {
        if (ws.y[i] <= half_level) {
            const double f = (ws.y[i - 1] - half_level) / (ws.y[i - 1] - ws.y[i]);
            e_hi = ws.e[i - 1] + f * (ws.e[i] - ws.e[i - 1]);
            break;
        }
        e_hi = ws.e[i];
    }
    double gamma0 = std::abs(e_hi - e_lo);
    if (!(gamma0 > 0.0)) gamma0 = 0.25 * std::abs(ws.e.back() - ws.e.front());

    double p[4] = {ws.e[imax], gamma0, peak * 0.25 * gamma0 * gamma0, floor};

    double lambda = 1e-3;
    double cost = cost_of(ws, p, bg);
    std::ostringstream trace;
    int iter = 0;
    bool converged = false;
    std::vector<double> jtj(dim * dim), g(dim), row(dim);

    for (iter = 0; iter < options.max_iterations; ++iter) {
        std::fill(jtj.begin(), jtj.end(), 0.0);
        std::fill(g.begin(), g.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            jacobian_row(ws.e[i], p, bg, row.data());
            const double wi = ws.w[i];
            const double r = (ws.y[i] - model(ws.e[i], p, bg)) * wi;
            for (int a = 0; a < dim; ++a) {
                const double ja = row[a] * wi;
                g[a] += ja * r;
                for (int b = a; b < dim; ++b) jtj[a * dim + b] += ja * row[b] * wi;
            }
        }
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < a; ++b) jtj[a * dim + b] = jtj[b * dim + a];

        // gradient stops: absolute (scaled by cost) per the configured tolerance,
        // plus the MINPACK-style cosine measure |g_a| / (sqrt(H_aa)*||r||),
        // which is the reachable criterion for weighted fits at the chi^2 floor
        double gmax = 0.0, cosine = 0.0;
        for (int a = 0; a < dim; ++a) {
            gmax = std::max(gmax, std::abs(g[a]));
            const double denom = std::sqrt(jtj[a * dim + a] * cost) + 1e-300;
            cosine = std::max(cosine, std::abs(g[a]) / denom);
        }
        if (gmax <= options.gradient_tol * std::max(1.0, cost) || cosine <= 1e-8) {
            converged = true;
            break;
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 16 && !stepped; ++attempt) {
            std::vector<double> damped = jtj;
            for (int a = 0; a < dim; ++a) damped[a * dim + a] *= (1.0 + lambda);
            std::vector<double> step = g;
            if (!solve_normal(damped, step, dim)) {
                lambda *= 10.0;
                continue;
            }
            double q[4] = {p[0] + step[0], p[1] + step[1], p[2] + step[2],
                           bg ? p[3] + step[3] : 0.0};
            if (!(q[1] > 0.0) || !(q[2] > 0.0)) {
                lambda *= 10.0;
                continue;
            }
            const double new_cost = cost_of(ws, q, bg);
            if (new_cost < cost) {
                std::copy(q, q + 4, p);
                cost = new_cost;
                lambda = std::max(lambda / 3.0, 1e-12);
                stepped = true;
            } else {
                lambda *= 10.0;
            }
        }
        trace << "iter " << iter << ": cost " << cost << " lambda " << lambda
              << " cosine " << cosine << "\n";
        if (!stepped) {
            // no descent direction left; the fit is at the floating-point floor
            // of the cost surface when the scaled gradient is already tiny
            if (cosine <= 1e-4) {
                converged = true;
                break;
            }
            throw FitFailureError("fit_breit_wigner: damping schedule failed to descend",
                                  trace.str());
        }
    }
    if (!converged && iter >= options.max_iterations)
        throw FitFailureError("fit_breit_wigner: no convergence within iteration cap",
                              trace.str());

    // covariance from the Jacobian at the optimum
    std::fill(jtj.begin(), jtj.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        jacobian_row(ws.e[i], p, bg, row.data());
        const double wi = ws.w[i];
        for (int a = 0; a < dim; ++a)
            for (int b = a; b < dim; ++b) jtj[a * dim + b] += row[a] * row[b] * wi * wi;
    }
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < a; ++b) jtj[a * dim + b] = jtj[b * dim + a];

    FitResult result{ResonancePole(p[0], p[1], cplx(std::sqrt(p[2]), 0.0)),
                     bg ? p[3] : 0.0,
                     dim,
                     {},
                     std::sqrt(cost),
                     iter};
    if (!invert_spd(jtj, result.covariance, dim))
        throw RankDeficiencyError("fit_breit_wigner: singular normal equations at optimum");
    if (!ws.weighted && n > static_cast<std::size_t>(dim)) {
        const double s2 = cost / static_cast<double>(n - dim);
        for (double& c : result.covariance) c *= s2;
    }
    return result;
}

}  // namespace hardyq
