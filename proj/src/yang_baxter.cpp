#include "uqbc/yang_baxter.hpp"

#include <cmath>

#include "uqbc/hecke.hpp"

namespace uqbc {

namespace {

// Exponent multiplying lambda in the (i,j) off-diagonal coefficient, 0-based i != j.
double offdiag_exponent(int i, int j, int n, Gauge g) {
  const double sgn = i > j ? 1.0 : -1.0;
  if (g == Gauge::homogeneous) return -sgn;
  return (i - j) * 2.0 / n - sgn;
}

Operator assemble_r(int n, cplx a, cplx b, const std::function<cplx(int, int)>& off) {
  Mat R = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        R(i * n + i, i * n + i) = a;
      } else {
        R(i * n + j, i * n + j) = b;
        R(i * n + j, j * n + i) = off(i, j);  // e_ij (x) e_ji
      }
    }
  return {R, Dims{n, n}};
}

std::string sample_id(const std::string& base, Gauge g, int s) {
  return base + "." + (g == Gauge::homogeneous ? "h" : "p") + std::to_string(s);
}

}  // namespace

Operator build_rcheck(const ModelParams& p, cplx lambda) {
  const int n = p.n;
  return std::sinh(lambda + I_unit * p.mu) * Operator::identity({n, n}) +
         std::sinh(lambda) * build_bulk_generator(p);
}

Operator build_r(const ModelParams& p, cplx lambda, Gauge gauge) {
  const cplx c = std::sinh(I_unit * p.mu);
  return assemble_r(p.n, std::sinh(lambda + I_unit * p.mu), std::sinh(lambda), [&](int i, int j) {
    return c * std::exp(offdiag_exponent(i, j, p.n, gauge) * lambda);
  });
}

Operator build_r_derivative(const ModelParams& p, cplx lambda, Gauge gauge) {
  const cplx c = std::sinh(I_unit * p.mu);
  return assemble_r(p.n, std::cosh(lambda + I_unit * p.mu), std::cosh(lambda), [&](int i, int j) {
    const double e = offdiag_exponent(i, j, p.n, gauge);
    return c * e * std::exp(e * lambda);
  });
}

Operator build_r_hat(const ModelParams& p, cplx lambda, Gauge gauge) {
  const Operator P = permutation_swap(p.n);
  return P * build_r(p, lambda, gauge) * P;
}

Operator build_gauge_V(const ModelParams& p, cplx lambda) {
  std::vector<cplx> d(p.n);
  for (int k = 0; k < p.n; ++k) d[k] = std::exp(2.0 * k * lambda / double(p.n));
  return diag(d);
}

Operator build_gauge_V_derivative(const ModelParams& p, cplx lambda) {
  std::vector<cplx> d(p.n);
  for (int k = 0; k < p.n; ++k) d[k] = (2.0 * k / p.n) * std::exp(2.0 * k * lambda / double(p.n));
  return diag(d);
}

Operator build_M(const ModelParams& p, Gauge gauge) {
  if (gauge == Gauge::principal) return Operator::identity({p.n});
  std::vector<cplx> d(p.n);
  for (int j = 1; j <= p.n; ++j) d[j - 1] = std::exp(I_unit * p.mu * double(p.n - 2 * j + 1));
  return diag(d);
}

Operator crossing_operator(const ModelParams& p, cplx lambda, cplx rho, Gauge gauge) {
  const Operator M = build_M(p, gauge);
  const Operator M1 = kron(M, Operator::identity({p.n}));
  const Operator M1inv = kron(M.inverse(), Operator::identity({p.n}));
  const Operator a = partial_transpose(build_r(p, lambda, gauge), 0);
  const Operator b = partial_transpose(build_r(p, -lambda - 2.0 * I_unit * rho, gauge), 1);
  return a * M1 * b * M1inv;
}

double crossing_residual(const ModelParams& p, cplx lambda, cplx rho, Gauge gauge) {
  const Operator X = crossing_operator(p, lambda, rho, gauge);
  return prop_check(X, Operator::identity(X.dims()), 0.0).residual;
}

CrossingFit fit_crossing_rho(const ModelParams& p, cplx lambda, Gauge gauge) {
  auto f = [&](double s) { return crossing_residual(p, lambda, s * p.mu, gauge); };
  // Coarse scan over s in [0, 2n].
  const double step = 0.05;
  double best_s = 0.0, best = f(0.0);
  for (double s = step; s <= 2.0 * p.n + 1e-12; s += step) {
    double v = f(s);
    if (v < best) best = v, best_s = s;
  }
  double a = best_s - step, b = best_s + step;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
    if (f1 < f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - g * (b - a), f1 = f(x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + g * (b - a), f2 = f(x2);
    }
  }
  const double s = 0.5 * (a + b);
  return {s * p.mu, f(s)};
}

VerificationReport verify_ybe_suite(const ModelParams& p, int samples, double tol, Sampler& sampler) {
  validate(p);
  if (samples < 1) throw std::invalid_argument("ybe suite needs samples >= 1");
  VerificationReport rep;
  rep.suite = "ybe";
  rep.params = p;
  const int n = p.n;
  const Dims three{n, n, n};
  const Operator P = permutation_swap(n);
  const Operator Iaux = Operator::identity({n, n});

  // P Rcheck = R in the homogeneous gradation; gauge covariance.
  {
    const cplx l = sampler.lambda(p);
    rep.timed("ybe.rcheck_vs_r", tol, [&] {
      return rel_residual(P * build_rcheck(p, l), build_r(p, l, Gauge::homogeneous));
    });
    rep.timed("ybe.gauge_covariance", tol, [&] {
      const Operator V1 = kron(build_gauge_V(p, l), Operator::identity({n}));
      const Operator V1m = kron(build_gauge_V(p, -l), Operator::identity({n}));
      return rel_residual(V1 * build_r(p, l, Gauge::homogeneous) * V1m, build_r(p, l, Gauge::principal));
    });
    rep.timed("ybe.trace_M", tol, [&] {
      const cplx expect = std::sinh(I_unit * p.mu * double(n)) / std::sinh(I_unit * p.mu);
      return std::abs(build_M(p, Gauge::homogeneous).trace() - expect) / std::abs(expect);
    });
  }

  for (Gauge g : {Gauge::homogeneous, Gauge::principal}) {
    const CrossingFit fit = fit_crossing_rho(p, sampler.lambda(p), g);
    const CrossingFit fit2 = fit_crossing_rho(p, sampler.lambda(p), g);
    rep.add(sample_id("ybe.crossing_fit", g, 0), fit.residual, tol, fit.rho);
    rep.add(sample_id("ybe.crossing_fit", g, 1), fit2.residual, tol, fit2.rho);
    rep.add(sample_id("ybe.crossing_drift", g, 0), std::abs(fit.rho - fit2.rho), 1e-8, fit.rho - fit2.rho);
    const Operator M = build_M(p, g);
    const Operator MM = kron(M, M);
    for (int s = 0; s < samples; ++s) {
      const cplx l1 = sampler.lambda(p), l2 = sampler.lambda(p);
      auto R = [&](cplx l) { return build_r(p, l, g); };
      auto Rc = [&](cplx l) { return P * build_r(p, l, g); };
      rep.timed(sample_id("ybe.ybe", g, s), tol, [&] {
        const Operator R12 = embed_at(R(l1 - l2), {0, 1}, three);
        const Operator R13 = embed_at(R(l1), {0, 2}, three);
        const Operator R23 = embed_at(R(l2), {1, 2}, three);
        return rel_residual(R12 * R13 * R23, R23 * R13 * R12);
      });
      rep.timed(sample_id("ybe.braid", g, s), tol, [&] {
        auto A12 = [&](cplx l) { return embed_at(Rc(l), {0, 1}, three); };
        auto A23 = [&](cplx l) { return embed_at(Rc(l), {1, 2}, three); };
        return rel_residual(A12(l1 - l2) * A23(l1) * A12(l2), A23(l2) * A12(l1) * A23(l1 - l2));
      });
      rep.timed(sample_id("ybe.unitarity_rcheck", g, s), tol,
                [&] { return prop_check(Rc(l1) * Rc(-l1), Iaux, tol).residual; });
      rep.timed(sample_id("ybe.unitarity_r", g, s), tol,
                [&] { return prop_check(R(l1) * build_r_hat(p, -l1, g), Iaux, tol).residual; });
      rep.timed(sample_id("ybe.mm_commute", g, s), tol, [&] { return commutator_defect(MM, R(l1)); });
      // Crossing at the fitted rho; a lambda-dependent rho would show up here.
      rep.timed(sample_id("ybe.crossing", g, s), tol, [&] { return crossing_residual(p, l1, fit.rho, g); });
    }
  }
  return rep;
}

}  // namespace uqbc
