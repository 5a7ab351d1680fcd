#pragma once

#include <optional>
#include <vector>

#include "hardyq/resonance.hpp"

namespace hardyq {

struct LineshapeSample {
    double e;
    double y;
    std::optional<double> sigma;  // 1-sigma uncertainty; all-or-none across a dataset
};

struct FitOptions {
    bool fit_background = false;  // optional additive constant pedestal
    int max_iterations = 200;
    double gradient_tol = 1e-10;
};

struct FitResult {
    ResonancePole pole;            // residue = sqrt(|r|^2) taken real >= 0
    double background = 0.0;
    int dim = 3;                   // 3, or 4 with background
    std::vector<double> covariance;  // dim x dim, row-major; order (E_R, Gamma, |r|^2[, bg])
    double residual_norm = 0.0;    // sqrt(sum of squared weighted residuals)
    int iterations = 0;
};

// Weighted nonlinear least squares for y ~ |r|^2/((E-E_R)^2 + (Gamma/2)^2) [+ bg],
// damped Gauss-Newton (Levenberg schedule), analytic Jacobian. Initialization:
// E_R <- argmax y, Gamma <- empirical FWHM, |r|^2 <- peak * (Gamma/2)^2.
// Throws RankDeficiencyError for flat data, FitFailureError (with iteration
// trace) when the iteration cap is hit.
FitResult fit_breit_wigner(const std::vector<LineshapeSample>& samples,
                           const FitOptions& options = {});

}  // namespace hardyq
