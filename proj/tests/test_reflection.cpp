#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uqbc/hecke.hpp"
#include "uqbc/reflection.hpp"
#include "uqbc/yang_baxter.hpp"

using namespace uqbc;

namespace {

ModelParams make(int n) {
  ModelParams p;
  p.n = n;
  p.mu = {0.41, 0.02};
  p.m = {0.9, 0.2};
  p.zeta = {0.6, -0.1};
  return p;
}

// Entries of the explicit homogeneous K, written out directly.
Operator k_entries(const ModelParams& p, cplx l) {
  const int n = p.n;
  const cplx chm = std::cosh(I_unit * p.mu * p.m), c2z = std::cosh(2.0 * I_unit * p.mu * p.zeta);
  Mat K = Mat::Zero(n, n);
  K(0, 0) = std::exp(2.0 * l) * chm - c2z;
  K(n - 1, n - 1) = std::exp(-2.0 * l) * chm - c2z;
  K(0, n - 1) = K(n - 1, 0) = -I_unit * std::sinh(2.0 * l);
  for (int j = 1; j < n - 1; ++j) K(j, j) = std::cosh(2.0 * l + I_unit * p.m * p.mu) - c2z;
  return Operator(K);
}

}  // namespace

TEST_CASE("explicit K entries") {
  for (int n : {2, 3, 4}) {
    const ModelParams p = make(n);
    const cplx l{0.3, -0.2};
    CHECK(rel_residual(build_k_explicit(p, l, Gauge::homogeneous), k_entries(p, l)) < 1e-15);
  }
}

TEST_CASE("K at lambda = 0") {
  for (int n : {2, 3, 4}) {
    const ModelParams p = make(n);
    const cplx x0 = std::cosh(I_unit * p.mu * p.m) - std::cosh(2.0 * I_unit * p.mu * p.zeta);
    const Operator expect = x0 * Operator::identity({n});
    CHECK(rel_residual(build_k_explicit(p, 0.0, Gauge::homogeneous), expect) < 1e-15);
    CHECK(rel_residual(build_k_explicit(p, 0.0, Gauge::principal), expect) < 1e-15);
    CHECK(rel_residual(build_k_ansatz(p, 0.0), expect) < 1e-14);
    CHECK(std::abs(k_ansatz_x(p, 0.0) - x0) < 1e-14);
    CHECK(std::abs(boundary_x0(p) - x0) < 1e-15);
  }
}

TEST_CASE("ansatz coefficients and entrywise agreement") {
  const ModelParams p = make(3);
  const auto bc = boundary_constants(p);
  Sampler s(5);
  for (int k = 0; k < 6; ++k) {
    const cplx l = s.lambda(p);
    const cplx x = -bc.delta0 * std::cosh(2.0 * l + I_unit * p.mu) - bc.kappa * std::cosh(2.0 * l) -
                   std::cosh(2.0 * I_unit * p.mu * p.zeta);
    CHECK(std::abs(k_ansatz_x(p, l) - x) < 1e-13 * std::abs(x));
    CHECK(std::abs(k_ansatz_y(p, l) - 2.0 * std::sinh(2.0 * l) * std::sinh(I_unit * p.mu)) < 1e-14);
    CHECK(rel_residual(build_k_ansatz(p, l), k_entries(p, l)) < 1e-11);
  }
}

TEST_CASE("K unitarity") {
  const ModelParams p = make(4);
  const cplx l{0.6, 0.3};
  CHECK(prop_check(build_k_explicit(p, l, Gauge::homogeneous) * build_k_explicit(p, -l, Gauge::homogeneous),
                   Operator::identity({4}), 1e-12)
            .pass);
  CHECK(prop_check(build_k_ansatz(p, l) * build_k_ansatz(p, -l), Operator::identity({4}), 1e-12).pass);
}

TEST_CASE("principal K is V K V") {
  const ModelParams p = make(3);
  const cplx l{0.2, 0.5};
  const Operator V = build_gauge_V(p, l);
  CHECK(rel_residual(build_k_explicit(p, l, Gauge::principal), V * build_k_explicit(p, l, Gauge::homogeneous) * V) <
        1e-14);
}

TEST_CASE("reflection equation") {
  Sampler s(9);
  for (int n : {2, 3, 4}) {
    const ModelParams p = s.params(n, 1);
    for (Gauge g : {Gauge::homogeneous, Gauge::principal}) {
      const KFamily K = [&](cplx l) { return build_k_explicit(p, l, g); };
      for (int k = 0; k < 3; ++k) {
        const cplx a = s.lambda(p), b = s.lambda(p);
        CHECK(reflection_residual(p, K, g, a, b) < 1e-10);
        CHECK(reflection_residual_rcheck(p, K, g, a, b) < 1e-10);
      }
    }
  }
}

TEST_CASE("a K from the wrong gradation fails the reflection equation") {
  const ModelParams p = make(3);
  const KFamily K = [&](cplx l) { return build_k_explicit(p, l, Gauge::homogeneous); };
  CHECK(reflection_residual(p, K, Gauge::principal, {0.3, 0.1}, {-0.5, 0.2}) > 1e-3);
}

TEST_CASE("large zeta recovers the trivial boundary") {
  ModelParams p = make(3);
  p.zeta = 40.0 * I_unit;  // |cosh 2 i mu zeta| grows only along imaginary zeta
  const cplx l{0.3, 0.2};
  const Operator K = build_k_explicit(p, l, Gauge::homogeneous) / std::cosh(2.0 * I_unit * p.mu * p.zeta);
  CHECK(rel_residual(K, -1.0 * Operator::identity({3})) < 1e-9);
}

TEST_CASE("diagonal family") {
  const ModelParams p = make(3);
  const cplx xi{0.37, 0.1};
  CHECK(rel_residual(build_k_diagonal(p, 0.0, 1, xi), std::sinh(I_unit * p.mu * xi) * Operator::identity({3})) <
        1e-15);
  const cplx l{0.4, -0.1};
  const cplx a = std::sinh(-l + I_unit * p.mu * xi) * std::exp(l), b = std::sinh(l + I_unit * p.mu * xi) * std::exp(-l);
  CHECK(rel_residual(build_k_diagonal(p, l, 1, xi), diag({a, b, b})) < 1e-15);
  CHECK(rel_residual(build_k_diagonal(p, l, 2, xi), diag({a, a, b})) < 1e-15);
  const cplx am = std::sinh(l + I_unit * p.mu * xi) * std::exp(-l), bm = std::sinh(-l + I_unit * p.mu * xi) * std::exp(l);
  CHECK(std::abs(a * am - b * bm) < 1e-14);
  const KFamily K = [&](cplx x) { return build_k_diagonal(p, x, 1, xi); };
  CHECK(reflection_residual(p, K, Gauge::homogeneous, {0.3, 0.1}, {-0.2, 0.4}) < 1e-10);
  CHECK_THROWS(build_k_diagonal(p, l, 3, xi));
  CHECK_THROWS(build_k_diagonal(p, l, 0, xi));
}

TEST_CASE("left boundaries") {
  const ModelParams p = make(3);
  CHECK(rel_residual(build_k_left(p, {0.3, 0.1}, LeftBoundaryKind::identity), Operator::identity({3})) == 0.0);

  const cplx l = 0.2, e = std::exp(-0.4 - 3.0 * I_unit * p.mu);
  CHECK(rel_residual(build_k_left(p, l, LeftBoundaryKind::affine_limit), diag({e, e, 1.0 / e})) < 1e-15);

  const cplx l2{0.35, -0.2};
  const KFamily src = [&](cplx x) { return build_k_explicit(p, x, Gauge::homogeneous); };
  const Operator ts = build_k_left(p, l2, LeftBoundaryKind::transpose_shift, src);
  CHECK(rel_residual(ts, src(-l2 - I_unit * p.mu * 1.5).transpose()) < 1e-15);
}

TEST_CASE("affine-limit left boundary is the large-m limit of the shifted transpose") {
  ModelParams p = make(3);
  p.m = -40.0 * I_unit / p.mu;
  const cplx l{0.3, 0.15};
  const KFamily src = [&](cplx x) { return build_k_explicit(p, x, Gauge::homogeneous); };
  const auto pc = prop_check(build_k_left(p, l, LeftBoundaryKind::transpose_shift, src),
                             build_k_left(p, l, LeftBoundaryKind::affine_limit), 1e-9);
  CHECK(pc.pass);
}

TEST_CASE("theta-form parametrization") {
  const ModelParams p = make(3);
  const ThetaKParams ar = map_theta_params(p);
  CHECK(theta_constraint_defect(ar) < 1e-10);
  CHECK(std::abs(std::exp(-ar.eps_plus) * ar.rho_a / ar.rho_c + 2.0 * I_unit * std::cosh(I_unit * p.mu * p.m)) < 1e-12);
  CHECK(std::abs(ar.rho_b / ar.rho_c - I_unit * std::exp(I_unit * p.mu * p.m)) < 1e-12);
  CHECK(ar.eps_plus.imag() > -M_PI);
  CHECK(ar.eps_plus.imag() <= M_PI);

  ModelParams pe = p;
  pe.zeta = pe.m;
  const ThetaKParams ae = map_theta_params(pe);
  CHECK(std::abs(std::exp(2.0 * ae.eps_plus) - std::cosh(2.0 * I_unit * pe.mu * pe.zeta) / std::cosh(I_unit * pe.mu * pe.m)) <
        1e-12);

  // Proportional to the principal K with a lambda-independent scalar.
  std::optional<cplx> s0;
  for (cplx l : {cplx(0.2, 0.1), cplx(-0.5, 0.3), cplx(0.8, -0.2)}) {
    const auto pc = prop_check(build_k_theta(p, ar, l), build_k_explicit(p, l, Gauge::principal), 1e-9);
    CHECK(pc.pass);
    if (!s0) s0 = pc.scalar;
    CHECK(std::abs(pc.scalar - *s0) < 1e-9 * std::abs(*s0));
  }
}

TEST_CASE("suite passes for n = 2, 3, 4") {
  for (int n : {2, 3, 4}) {
    Sampler s(200 + n);
    CHECK(verify_reflection_suite(s.params(n, 1), 10, 1e-9, s).pass());
  }
}
