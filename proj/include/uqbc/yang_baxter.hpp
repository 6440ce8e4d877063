// Trigonometric R-matrices in both gradations, gauge matrix V and crossing matrix M.
#pragma once

#include "uqbc/params.hpp"
#include "uqbc/report.hpp"

namespace uqbc {

// Rcheck(l) = sinh(l + i mu) I + sinh(l) U.
Operator build_rcheck(const ModelParams& p, cplx lambda);
Operator build_r(const ModelParams& p, cplx lambda, Gauge gauge);
// d/dlambda of build_r.
Operator build_r_derivative(const ModelParams& p, cplx lambda, Gauge gauge);
// Rhat = P R P.
Operator build_r_hat(const ModelParams& p, cplx lambda, Gauge gauge);
// V(l) = diag(1, e^{2l/n}, ..., e^{2(n-1)l/n}).
Operator build_gauge_V(const ModelParams& p, cplx lambda);
Operator build_gauge_V_derivative(const ModelParams& p, cplx lambda);
Operator build_M(const ModelParams& p, Gauge gauge);

// R^{t1}(l) M_1 R^{t2}(-l - 2i rho) M_1^{-1}; proportional to I at the crossing point.
Operator crossing_operator(const ModelParams& p, cplx lambda, cplx rho, Gauge gauge);
double crossing_residual(const ModelParams& p, cplx lambda, cplx rho, Gauge gauge);

struct CrossingFit {
  cplx rho;         // fitted crossing parameter, rho = s * mu with real s
  double residual;  // crossing residual at the fit
};
// One-dimensional scan of rho along mu followed by golden-section refinement.
CrossingFit fit_crossing_rho(const ModelParams& p, cplx lambda, Gauge gauge);

VerificationReport verify_ybe_suite(const ModelParams& p, int samples, double tol, Sampler& sampler);

}  // namespace uqbc
