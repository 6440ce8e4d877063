// Closed and open chains in the fundamental representation: monodromy, double-row operator,
// transfer matrices and the open-chain Hamiltonian.
#pragma once

#include "uqbc/params.hpp"
#include "uqbc/reflection.hpp"
#include "uqbc/report.hpp"

namespace uqbc {

struct ChainSpec {
  ModelParams params;
  Gauge gauge = Gauge::homogeneous;
  RightBoundary right;
  LeftBoundaryKind left = LeftBoundaryKind::identity;
};

void validate(const ChainSpec& spec);

// Auxiliary space is slot 0, quantum sites are slots 1..N.
Dims chain_dims(const ChainSpec& spec);

// T_0(l) = R_0N(l) ... R_01(l).
Operator build_monodromy(const ChainSpec& spec, cplx lambda);

// inverse: T(-l)^{-1}. r_hat_product: Rhat_01(l) ... Rhat_0N(l), equal to the inverse up to
// the scalar [sinh(l + i mu) sinh(i mu - l)]^N.
enum class HatConvention { inverse, r_hat_product };
Operator build_monodromy_hat(const ChainSpec& spec, cplx lambda, HatConvention conv = HatConvention::inverse);
// T(-l)^{-1} assembled as R_01(-l)^{-1} ... R_0N(-l)^{-1}.
Operator build_monodromy_hat_sitewise(const ChainSpec& spec, cplx lambda);

// T(l) K^(r)_0(l) That(l).
Operator build_double_row(const ChainSpec& spec, cplx lambda, HatConvention conv = HatConvention::inverse);

// closed: tr_0 T. open: tr_0 { W(l) double_row } with W = left_trace_weight.
Operator build_transfer(const ChainSpec& spec, cplx lambda, bool closed,
                        HatConvention conv = HatConvention::inverse);
// d/dl of the open transfer matrix in the r_hat_product convention, by the product rule.
Operator build_transfer_derivative(const ChainSpec& spec, cplx lambda);

// tr_0 { W D }, the auxiliary trace with a weight.
Operator weighted_aux_trace(const Operator& weight, const Operator& D);

enum class HamiltonianRoute { hecke_form, transfer_derivative };
// Requires homogeneous gauge, identity left boundary, explicit or ansatz right boundary, |x(0)| > 1e-8.
Operator build_hamiltonian(const ChainSpec& spec, HamiltonianRoute route);
cplx hamiltonian_c0(const ModelParams& p);

// Least-squares a, b with A ~ a B + b I.
struct AffineFit {
  cplx alpha, beta;
  double residual;
};
AffineFit fit_affine(const Operator& A, const Operator& B);

VerificationReport verify_chain_suite(const ChainSpec& spec, int samples, double tol, Sampler& sampler);

}  // namespace uqbc
