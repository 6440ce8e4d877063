// Boundary K-matrices: Hecke ansatz, explicit entries, diagonal family,
// left-boundary variants and the four-parameter theta form.
#pragma once

#include <functional>
#include <optional>

#include "uqbc/params.hpp"
#include "uqbc/report.hpp"

namespace uqbc {

enum class LeftBoundaryKind { identity, transpose_shift, affine_limit };
std::string to_string(LeftBoundaryKind k);
LeftBoundaryKind left_boundary_from_string(const std::string& s);

enum class RightBoundaryKind { explicit_k, ansatz, diagonal, trivial };
std::string to_string(RightBoundaryKind k);
RightBoundaryKind right_boundary_from_string(const std::string& s);

struct RightBoundary {
  RightBoundaryKind kind = RightBoundaryKind::explicit_k;
  int block = 1;           // diagonal family: number of alpha entries
  cplx xi{0.37, 0.1};      // diagonal family parameter
};

using KFamily = std::function<Operator(cplx)>;

// Ansatz coefficients K = x I + y rho(U0).
cplx k_ansatz_x(const ModelParams& p, cplx lambda);
cplx k_ansatz_y(const ModelParams& p, cplx lambda);

Operator build_k_ansatz(const ModelParams& p, cplx lambda);
Operator build_k_explicit(const ModelParams& p, cplx lambda, Gauge gauge);
Operator build_k_explicit_derivative(const ModelParams& p, cplx lambda, Gauge gauge);
Operator build_k_diagonal(const ModelParams& p, cplx lambda, int l, cplx xi);
Operator build_k_diagonal_derivative(const ModelParams& p, cplx lambda, int l, cplx xi);

// Right boundary in the requested gauge (the ansatz and diagonal families are homogeneous
// objects and are gauge-transformed with V(l) K V(l) in the principal gradation).
Operator build_k_right(const ModelParams& p, cplx lambda, Gauge gauge, const RightBoundary& rb);
Operator build_k_right_derivative(const ModelParams& p, cplx lambda, Gauge gauge, const RightBoundary& rb);

// Left boundary. identity -> I; transpose_shift -> source(-l - i mu n/2)^t;
// affine_limit -> diag(e^{-2l-i mu n}, ..., e^{2l+i mu n}).
Operator build_k_left(const ModelParams& p, cplx lambda, LeftBoundaryKind kind,
                      const std::optional<KFamily>& source = std::nullopt);

// Matrix placed in front of the double-row operator inside the auxiliary trace.
// Homogeneous: M K^(l). Principal: transpose_shift uses K^(p) directly (M = I); identity and
// affine_limit use the gauge image V(-l) M_h K^(l) V(-l) of their homogeneous counterparts.
Operator left_trace_weight(const ModelParams& p, cplx lambda, Gauge gauge, LeftBoundaryKind kind);
Operator left_trace_weight_derivative(const ModelParams& p, cplx lambda, Gauge gauge, LeftBoundaryKind kind);

struct ThetaKParams {
  cplx rho_a, rho_b, rho_c, rho_d;
  cplx eps_plus;
};

ThetaKParams map_theta_params(const ModelParams& p);
// Four-parameter K in the principal gradation at theta = 2 lambda / n, multiplied by e^{n theta/2}/rho_c.
Operator build_k_theta(const ModelParams& p, const ThetaKParams& ar, cplx lambda);
// rho_c rho_d - rho_b (rho_b + rho_a e^{-eps}), relative.
double theta_constraint_defect(const ThetaKParams& ar);

// R12(a-b) K1(a) R21(a+b) K2(b) = K2(b) R12(a+b) K1(a) R21(a-b), R21 = P R12 P.
double reflection_residual(const ModelParams& p, const KFamily& K, Gauge gauge, cplx a, cplx b);
// Same equation written with Rcheck = P R.
double reflection_residual_rcheck(const ModelParams& p, const KFamily& K, Gauge gauge, cplx a, cplx b);

VerificationReport verify_reflection_suite(const ModelParams& p, int samples, double tol, Sampler& sampler);

}  // namespace uqbc
