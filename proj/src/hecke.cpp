#include "uqbc/hecke.hpp"

#include <algorithm>

namespace uqbc {

namespace {

Dims chain_space(const ModelParams& p) { return Dims(p.sites, p.n); }

std::string num(int k) { return std::to_string(k); }

}  // namespace

HeckeConstants hecke_constants(const ModelParams& p) {
  const cplx q = p.q(), Q = p.Q();
  return {-(q + 1.0 / q), -(Q + 1.0 / Q), q / Q + Q / q};
}

BoundaryConstants boundary_constants(const ModelParams& p) {
  const cplx s = std::sinh(I_unit * p.mu);
  return {-std::sinh(I_unit * p.mu * p.m) / s, std::sinh(I_unit * p.mu * (p.m - 1.0)) / s};
}

Operator build_bulk_generator(const ModelParams& p) {
  const int n = p.n;
  const cplx q = p.q();
  Mat U = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      U(i * n + j, j * n + i) += 1.0;
      U(i * n + j, i * n + j) -= (i > j) ? 1.0 / q : q;
    }
  return {U, Dims{n, n}};
}

Operator rep_bulk(const ModelParams& p, int l) {
  if (l < 1 || l > p.sites - 1) throw std::out_of_range("rep_bulk: l must lie in 1..N-1");
  return embed_at(build_bulk_generator(p), {l - 1, l}, chain_space(p));
}

Operator build_boundary_generator(const ModelParams& p) {
  const int n = p.n;
  const cplx Q = p.Q();
  Mat U0 = Mat::Zero(n, n);
  U0(0, 0) += -1.0 / Q;
  U0(n - 1, n - 1) += -Q;
  U0(0, n - 1) += 1.0;
  U0(n - 1, 0) += 1.0;
  return Operator(U0);
}

Operator rep_boundary(const ModelParams& p) {
  const cplx norm = 2.0 * I_unit * std::sinh(I_unit * p.mu);
  return embed_at(build_boundary_generator(p), {0}, chain_space(p)) / norm;
}

FittedBoundaryConstants fit_boundary_constants(const ModelParams& p) {
  ModelParams p2 = p;
  p2.sites = std::max(2, p.sites);
  const Operator U0 = rep_boundary(p2);
  const Operator U1 = rep_bulk(p2, 1);
  const Operator U1U0 = U1 * U0;
  return {prop_check(U0 * U0, U0, 1e-10), prop_check(U1U0 * U1U0, U1U0, 1e-10)};
}

VerificationReport verify_hecke_suite(const ModelParams& p, double tol) {
  validate(p);
  if (p.sites < 2) throw std::invalid_argument("hecke suite needs N >= 2");
  VerificationReport rep;
  rep.suite = "hecke";
  rep.params = p;

  const int N = p.sites;
  const HeckeConstants hc = hecke_constants(p);
  const BoundaryConstants bc = boundary_constants(p);
  std::vector<Operator> U;
  for (int l = 1; l < N; ++l) U.push_back(rep_bulk(p, l));
  const Operator U0 = rep_boundary(p);

  for (int l = 1; l < N; ++l) {
    const Operator& Ul = U[l - 1];
    rep.timed("hecke.quadratic.l" + num(l), tol, [&] { return rel_residual(Ul * Ul, hc.delta * Ul); });
    if (l + 1 < N) {
      const Operator& Um = U[l];
      rep.timed("hecke.braid.l" + num(l), tol, [&] {
        return rel_residual(Ul * Um * Ul - Ul, Um * Ul * Um - Um, Ul.norm());
      });
    }
    for (int m = l + 2; m < N; ++m)
      rep.timed("hecke.distant.l" + num(l) + "_" + num(m), tol,
                [&] { return commutator_defect(Ul, U[m - 1]); });
  }

  // Boundary generator relations in the rescaled normalization.
  rep.timed("hecke.boundary_quadratic", tol, [&] { return rel_residual(U0 * U0, bc.delta0 * U0); });
  for (int l = 2; l < N; ++l)
    rep.timed("hecke.boundary_distant.l" + num(l), tol, [&] { return commutator_defect(U0, U[l - 1]); });

  const Operator& U1 = U[0];
  const Operator U1U0 = U1 * U0, U0U1 = U0 * U1;
  const Operator A = U1U0 * U1U0, B = U0U1 * U0U1;
  rep.timed("hecke.mixed", tol, [&] {
    return rel_residual(A - bc.kappa * U1U0, B - bc.kappa * U0U1, std::max(A.norm(), B.norm()));
  });
  rep.timed("hecke.quotient.u1u0", tol, [&] { return rel_residual(A, bc.kappa * U1U0); });
  rep.timed("hecke.quotient.u0u1", tol, [&] { return rel_residual(B, bc.kappa * U0U1); });

  // Fitted constants against the closed forms, and the scale-free ratio.
  const auto fit = fit_boundary_constants(p);
  rep.add("hecke.fit.delta0", std::abs(fit.delta0.scalar - bc.delta0) / std::abs(bc.delta0) + fit.delta0.residual,
          tol, fit.delta0.scalar);
  rep.add("hecke.fit.kappa", std::abs(fit.kappa.scalar - bc.kappa) / std::abs(bc.kappa) + fit.kappa.residual, tol,
          fit.kappa.scalar);
  const cplx ratio_raw = hc.delta0 / hc.kappa;
  const cplx ratio_fit = fit.delta0.scalar / fit.kappa.scalar;
  rep.add("hecke.fit.ratio", std::abs(ratio_fit - ratio_raw) / std::abs(ratio_raw), tol, ratio_fit);
  return rep;
}

}  // namespace uqbc
