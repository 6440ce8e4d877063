// Bulk and boundary Hecke generators and their N-site representation.
#pragma once

#include "uqbc/params.hpp"
#include "uqbc/report.hpp"

namespace uqbc {

struct HeckeConstants {
  cplx delta;   // -(q + 1/q)
  cplx delta0;  // -(Q + 1/Q)
  cplx kappa;   // q/Q + Q/q
};

HeckeConstants hecke_constants(const ModelParams& p);

// Constants seen by the rescaled boundary generator U0 / (2i sinh i mu):
// delta0 = -sinh(i mu m)/sinh(i mu), kappa = sinh(i mu (m-1))/sinh(i mu).
struct BoundaryConstants {
  cplx delta0;
  cplx kappa;
};

BoundaryConstants boundary_constants(const ModelParams& p);

// U = sum_{i != j} (e_ij (x) e_ji - q^{-sgn(i-j)} e_ii (x) e_jj), on C^n (x) C^n.
Operator build_bulk_generator(const ModelParams& p);
// rho(U_l), l = 1..N-1, on (C^n)^{(x)N}.
Operator rep_bulk(const ModelParams& p, int l);
// U0 = -Q^{-1} e_11 - Q e_nn + e_1n + e_n1.
Operator build_boundary_generator(const ModelParams& p);
// rho(U_0) = U0 / (2i sinh i mu) on site 1.
Operator rep_boundary(const ModelParams& p);

// Numerically fitted rescaled constants: rho(U0)^2 = d0 rho(U0), U1U0U1U0 = k U1U0 (needs N >= 2).
struct FittedBoundaryConstants {
  ProportionalityResult delta0;
  ProportionalityResult kappa;
};
FittedBoundaryConstants fit_boundary_constants(const ModelParams& p);

VerificationReport verify_hecke_suite(const ModelParams& p, double tol);

}  // namespace uqbc
