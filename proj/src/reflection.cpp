#include "uqbc/reflection.hpp"

#include <cmath>

#include "uqbc/hecke.hpp"
#include "uqbc/yang_baxter.hpp"

namespace uqbc {

std::string to_string(LeftBoundaryKind k) {
  switch (k) {
    case LeftBoundaryKind::identity: return "identity";
    case LeftBoundaryKind::transpose_shift: return "transpose-shift";
    case LeftBoundaryKind::affine_limit: return "affine-limit";
  }
  return "?";
}

LeftBoundaryKind left_boundary_from_string(const std::string& s) {
  if (s == "identity") return LeftBoundaryKind::identity;
  if (s == "transpose-shift") return LeftBoundaryKind::transpose_shift;
  if (s == "affine-limit") return LeftBoundaryKind::affine_limit;
  throw std::invalid_argument("unknown left boundary '" + s + "'");
}

std::string to_string(RightBoundaryKind k) {
  switch (k) {
    case RightBoundaryKind::explicit_k: return "explicit";
    case RightBoundaryKind::ansatz: return "ansatz";
    case RightBoundaryKind::diagonal: return "diagonal";
    case RightBoundaryKind::trivial: return "trivial";
  }
  return "?";
}

RightBoundaryKind right_boundary_from_string(const std::string& s) {
  if (s == "explicit") return RightBoundaryKind::explicit_k;
  if (s == "ansatz") return RightBoundaryKind::ansatz;
  if (s == "diagonal") return RightBoundaryKind::diagonal;
  if (s == "trivial") return RightBoundaryKind::trivial;
  throw std::invalid_argument("unknown right boundary '" + s + "'");
}

namespace {

cplx cosh_2imuzeta(const ModelParams& p) { return std::cosh(2.0 * I_unit * p.mu * p.zeta); }

// Principal image V(l) K V(l) and its derivative.
Operator to_principal(const ModelParams& p, cplx l, const Operator& K) {
  const Operator V = build_gauge_V(p, l);
  return V * K * V;
}

Operator to_principal_derivative(const ModelParams& p, cplx l, const Operator& K, const Operator& dK) {
  const Operator V = build_gauge_V(p, l), dV = build_gauge_V_derivative(p, l);
  return dV * K * V + V * dK * V + V * K * dV;
}

Operator affine_left(const ModelParams& p, cplx l) {
  const cplx lo = std::exp(-2.0 * l - I_unit * p.mu * double(p.n));
  std::vector<cplx> d(p.n, lo);
  d[p.n - 1] = 1.0 / lo;
  return diag(d);
}

Operator affine_left_derivative(const ModelParams& p, cplx l) {
  const cplx lo = std::exp(-2.0 * l - I_unit * p.mu * double(p.n));
  std::vector<cplx> d(p.n, -2.0 * lo);
  d[p.n - 1] = 2.0 / lo;
  return diag(d);
}

std::string sid(const std::string& base, int s) { return base + "." + std::to_string(s); }

}  // namespace

cplx k_ansatz_x(const ModelParams& p, cplx l) {
  const BoundaryConstants bc = boundary_constants(p);
  return -bc.delta0 * std::cosh(2.0 * l + I_unit * p.mu) - bc.kappa * std::cosh(2.0 * l) - cosh_2imuzeta(p);
}

cplx k_ansatz_y(const ModelParams& p, cplx l) { return 2.0 * std::sinh(2.0 * l) * std::sinh(I_unit * p.mu); }

Operator build_k_ansatz(const ModelParams& p, cplx l) {
  ModelParams one = p;
  one.sites = 1;
  return k_ansatz_x(p, l) * Operator::identity({p.n}) + k_ansatz_y(p, l) * rep_boundary(one);
}

Operator build_k_explicit(const ModelParams& p, cplx l, Gauge gauge) {
  const int n = p.n;
  const cplx chm = std::cosh(I_unit * p.mu * p.m), C = cosh_2imuzeta(p);
  Mat K = Mat::Zero(n, n);
  K(0, 0) = std::exp(2.0 * l) * chm - C;
  K(n - 1, n - 1) = std::exp(-2.0 * l) * chm - C;
  K(0, n - 1) = K(n - 1, 0) = -I_unit * std::sinh(2.0 * l);
  for (int j = 1; j < n - 1; ++j) K(j, j) = std::cosh(2.0 * l + I_unit * p.mu * p.m) - C;
  Operator Kh(K);
  return gauge == Gauge::homogeneous ? Kh : to_principal(p, l, Kh);
}

Operator build_k_explicit_derivative(const ModelParams& p, cplx l, Gauge gauge) {
  const int n = p.n;
  const cplx chm = std::cosh(I_unit * p.mu * p.m);
  Mat K = Mat::Zero(n, n);
  K(0, 0) = 2.0 * std::exp(2.0 * l) * chm;
  K(n - 1, n - 1) = -2.0 * std::exp(-2.0 * l) * chm;
  K(0, n - 1) = K(n - 1, 0) = -2.0 * I_unit * std::cosh(2.0 * l);
  for (int j = 1; j < n - 1; ++j) K(j, j) = 2.0 * std::sinh(2.0 * l + I_unit * p.mu * p.m);
  Operator dK(K);
  if (gauge == Gauge::homogeneous) return dK;
  return to_principal_derivative(p, l, build_k_explicit(p, l, Gauge::homogeneous), dK);
}

Operator build_k_diagonal(const ModelParams& p, cplx l, int block, cplx xi) {
  if (block < 1 || block > p.n - 1) throw std::out_of_range("diagonal K: block size must lie in 1..n-1");
  const cplx a = std::sinh(-l + I_unit * p.mu * xi) * std::exp(l);
  const cplx b = std::sinh(l + I_unit * p.mu * xi) * std::exp(-l);
  std::vector<cplx> d(p.n, b);
  for (int k = 0; k < block; ++k) d[k] = a;
  return diag(d);
}

Operator build_k_diagonal_derivative(const ModelParams& p, cplx l, int block, cplx xi) {
  if (block < 1 || block > p.n - 1) throw std::out_of_range("diagonal K: block size must lie in 1..n-1");
  const cplx a = std::sinh(-l + I_unit * p.mu * xi) * std::exp(l);
  const cplx b = std::sinh(l + I_unit * p.mu * xi) * std::exp(-l);
  const cplx da = -std::cosh(-l + I_unit * p.mu * xi) * std::exp(l) + a;
  const cplx db = std::cosh(l + I_unit * p.mu * xi) * std::exp(-l) - b;
  std::vector<cplx> d(p.n, db);
  for (int k = 0; k < block; ++k) d[k] = da;
  return diag(d);
}

Operator build_k_right(const ModelParams& p, cplx l, Gauge gauge, const RightBoundary& rb) {
  Operator Kh;
  switch (rb.kind) {
    case RightBoundaryKind::explicit_k: return build_k_explicit(p, l, gauge);
    case RightBoundaryKind::ansatz: Kh = build_k_ansatz(p, l); break;
    case RightBoundaryKind::diagonal: Kh = build_k_diagonal(p, l, rb.block, rb.xi); break;
    case RightBoundaryKind::trivial: Kh = Operator::identity({p.n}); break;
  }
  return gauge == Gauge::homogeneous ? Kh : to_principal(p, l, Kh);
}

Operator build_k_right_derivative(const ModelParams& p, cplx l, Gauge gauge, const RightBoundary& rb) {
  Operator Kh, dKh;
  switch (rb.kind) {
    case RightBoundaryKind::explicit_k:
    case RightBoundaryKind::ansatz:
      // The ansatz coincides with the explicit matrix entrywise.
      return build_k_explicit_derivative(p, l, gauge);
    case RightBoundaryKind::diagonal:
      Kh = build_k_diagonal(p, l, rb.block, rb.xi);
      dKh = build_k_diagonal_derivative(p, l, rb.block, rb.xi);
      break;
    case RightBoundaryKind::trivial:
      Kh = Operator::identity({p.n});
      dKh = Operator::zero({p.n});
      break;
  }
  return gauge == Gauge::homogeneous ? dKh : to_principal_derivative(p, l, Kh, dKh);
}

Operator build_k_left(const ModelParams& p, cplx l, LeftBoundaryKind kind, const std::optional<KFamily>& source) {
  switch (kind) {
    case LeftBoundaryKind::identity: return Operator::identity({p.n});
    case LeftBoundaryKind::transpose_shift:
      if (!source) throw std::invalid_argument("transpose-shift left boundary needs a source K family");
      return (*source)(-l - I_unit * p.mu * (p.n / 2.0)).transpose();
    case LeftBoundaryKind::affine_limit: return affine_left(p, l);
  }
  throw std::invalid_argument("unknown left boundary");
}

Operator left_trace_weight(const ModelParams& p, cplx l, Gauge gauge, LeftBoundaryKind kind) {
  const Operator Mh = build_M(p, Gauge::homogeneous);
  const cplx shifted = -l - I_unit * p.mu * (p.n / 2.0);
  if (kind == LeftBoundaryKind::transpose_shift)
    return build_M(p, gauge) * build_k_explicit(p, shifted, gauge).transpose();
  const Operator Kl = kind == LeftBoundaryKind::identity ? Operator::identity({p.n}) : affine_left(p, l);
  if (gauge == Gauge::homogeneous) return Mh * Kl;
  const Operator Vm = build_gauge_V(p, -l);
  return Vm * Mh * Kl * Vm;
}

Operator left_trace_weight_derivative(const ModelParams& p, cplx l, Gauge gauge, LeftBoundaryKind kind) {
  const Operator Mh = build_M(p, Gauge::homogeneous);
  const cplx shifted = -l - I_unit * p.mu * (p.n / 2.0);
  if (kind == LeftBoundaryKind::transpose_shift)
    return -(build_M(p, gauge) * build_k_explicit_derivative(p, shifted, gauge).transpose());
  const Operator Kl = kind == LeftBoundaryKind::identity ? Operator::identity({p.n}) : affine_left(p, l);
  const Operator dKl =
      kind == LeftBoundaryKind::identity ? Operator::zero({p.n}) : affine_left_derivative(p, l);
  if (gauge == Gauge::homogeneous) return Mh * dKl;
  const Operator Vm = build_gauge_V(p, -l);
  const Operator dVm = -build_gauge_V_derivative(p, -l);
  return dVm * Mh * Kl * Vm + Vm * Mh * dKl * Vm + Vm * Mh * Kl * dVm;
}

ThetaKParams map_theta_params(const ModelParams& p) {
  const cplx chm = std::cosh(I_unit * p.mu * p.m), C = cosh_2imuzeta(p);
  if (std::abs(chm) < 1e-12 || std::abs(C) < 1e-12)
    throw ParameterError("cosh", "theta-form map needs cosh(i mu m) != 0 and cosh(2 i mu zeta) != 0");
  ThetaKParams ar;
  ar.eps_plus = 0.5 * std::log(C / chm);  // principal branch
  ar.rho_c = ar.rho_d = 1.0;
  ar.rho_a = -2.0 * I_unit * chm * std::exp(ar.eps_plus);
  ar.rho_b = I_unit * std::exp(I_unit * p.mu * p.m);
  return ar;
}

Operator build_k_theta(const ModelParams& p, const ThetaKParams& ar, cplx l) {
  const int n = p.n;
  const double nd = n;
  const cplx th = 2.0 * l / nd;
  const cplx e = ar.eps_plus;
  Mat K = Mat::Zero(n, n);
  K(0, 0) = ar.rho_a * std::sinh(e - nd * th / 2.0);
  K(n - 1, n - 1) = ar.rho_a * std::exp((nd - 2.0) * th) * std::sinh(e + nd * th / 2.0);
  K(0, n - 1) = ar.rho_d * std::exp((nd / 2.0 - 1.0) * th) * std::sinh(nd * th);
  K(n - 1, 0) = ar.rho_c * std::exp((nd / 2.0 - 1.0) * th) * std::sinh(nd * th);
  for (int j = 2; j <= n - 1; ++j)
    K(j - 1, j - 1) = ar.rho_a * std::exp((2.0 * j - 2.0 - nd) * th) * std::sinh(e + nd * th / 2.0) +
                      ar.rho_b * std::exp((2.0 * j - 2.0 - nd / 2.0) * th) * std::sinh(nd * th);
  return Operator(Mat(K * (std::exp(nd * th / 2.0) / ar.rho_c)));
}

double theta_constraint_defect(const ThetaKParams& ar) {
  const cplx lhs = ar.rho_c * ar.rho_d;
  const cplx rhs = ar.rho_b * (ar.rho_b + ar.rho_a * std::exp(-ar.eps_plus));
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), kNormFloor});
}

double reflection_residual(const ModelParams& p, const KFamily& K, Gauge gauge, cplx a, cplx b) {
  const Operator I = Operator::identity({p.n});
  const Operator R12m = build_r(p, a - b, gauge), R12p = build_r(p, a + b, gauge);
  const Operator R21m = build_r_hat(p, a - b, gauge), R21p = build_r_hat(p, a + b, gauge);
  const Operator K1 = kron(K(a), I), K2 = kron(I, K(b));
  return rel_residual(R12m * K1 * R21p * K2, K2 * R12p * K1 * R21m);
}

double reflection_residual_rcheck(const ModelParams& p, const KFamily& K, Gauge gauge, cplx a, cplx b) {
  const Operator I = Operator::identity({p.n});
  const Operator P = permutation_swap(p.n);
  const Operator Rm = P * build_r(p, a - b, gauge), Rp = P * build_r(p, a + b, gauge);
  const Operator Ka = kron(K(a), I), Kb = kron(K(b), I);
  return rel_residual(Rm * Ka * Rp * Kb, Kb * Rp * Ka * Rm);
}

VerificationReport verify_reflection_suite(const ModelParams& p, int samples, double tol, Sampler& sampler) {
  validate(p);
  if (samples < 1) throw std::invalid_argument("reflection suite needs samples >= 1");
  VerificationReport rep;
  rep.suite = "reflection";
  rep.params = p;
  const double tol_exact = std::min(tol, 1e-11);
  const Operator In = Operator::identity({p.n});

  const KFamily Kh = [&](cplx l) { return build_k_explicit(p, l, Gauge::homogeneous); };
  const KFamily Kp = [&](cplx l) { return build_k_explicit(p, l, Gauge::principal); };
  const KFamily Ka = [&](cplx l) { return build_k_ansatz(p, l); };

  ThetaKParams ar = map_theta_params(p);
  rep.add("reflection.theta_form.constraint", theta_constraint_defect(ar), std::min(tol, 1e-10), ar.eps_plus);
  std::optional<cplx> ar_scalar;

  for (int s = 0; s < samples; ++s) {
    const cplx a = sampler.lambda(p), b = sampler.lambda(p);
    rep.timed(sid("reflection.re.explicit_h", s), tol, [&] { return reflection_residual(p, Kh, Gauge::homogeneous, a, b); });
    rep.timed(sid("reflection.re.explicit_p", s), tol, [&] { return reflection_residual(p, Kp, Gauge::principal, a, b); });
    rep.timed(sid("reflection.re.ansatz", s), tol, [&] { return reflection_residual(p, Ka, Gauge::homogeneous, a, b); });
    for (int blk = 1; blk < p.n; ++blk) {
      const KFamily Kd = [&](cplx l) { return build_k_diagonal(p, l, blk, cplx{0.37, 0.1}); };
      rep.timed(sid("reflection.re.diagonal_l" + std::to_string(blk), s), tol,
                [&] { return reflection_residual(p, Kd, Gauge::homogeneous, a, b); });
    }
    rep.timed(sid("reflection.re2.explicit_h", s), tol,
              [&] { return reflection_residual_rcheck(p, Kh, Gauge::homogeneous, a, b); });
    rep.timed(sid("reflection.re2.explicit_p", s), tol,
              [&] { return reflection_residual_rcheck(p, Kp, Gauge::principal, a, b); });

    rep.timed(sid("reflection.unitarity.explicit_h", s), tol, [&] { return prop_check(Kh(a) * Kh(-a), In, tol).residual; });
    rep.timed(sid("reflection.unitarity.explicit_p", s), tol, [&] { return prop_check(Kp(a) * Kp(-a), In, tol).residual; });
    rep.timed(sid("reflection.unitarity.ansatz", s), tol, [&] { return prop_check(Ka(a) * Ka(-a), In, tol).residual; });

    rep.timed(sid("reflection.ansatz_vs_explicit", s), tol_exact, [&] { return rel_residual(Ka(a), Kh(a)); });
    rep.timed(sid("reflection.gauge_covariance", s), std::min(tol, 1e-12), [&] {
      const Operator V = build_gauge_V(p, a);
      return rel_residual(V * Kh(a) * V, Kp(a));
    });

    const auto pr = prop_check(build_k_theta(p, ar, a), I_unit * Kp(a), tol);
    rep.add(sid("reflection.theta_form.match", s), pr.residual, tol, pr.scalar);
    if (!ar_scalar) ar_scalar = pr.scalar;
    rep.add(sid("reflection.theta_form.scalar_drift", s), std::abs(pr.scalar - *ar_scalar) / std::abs(*ar_scalar), tol,
            pr.scalar);
  }
  return rep;
}

}  // namespace uqbc
