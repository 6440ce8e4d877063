#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uqbc/spin_chain.hpp"
#include "uqbc/yang_baxter.hpp"

using namespace uqbc;

namespace {

ChainSpec make(int n, int N, Gauge g = Gauge::homogeneous) {
  ChainSpec s;
  s.params.n = n;
  s.params.sites = N;
  s.params.mu = {0.41, 0.02};
  s.params.m = {0.9, 0.2};
  s.params.zeta = {0.6, 0.0};
  s.gauge = g;
  return s;
}

// Two-site monodromy written with explicit kron products: R_02 R_01 on C^n (x) C^n (x) C^n.
Operator monodromy_two_sites(const ModelParams& p, cplx l, Gauge g) {
  const int n = p.n;
  const Operator In = Operator::identity({n});
  const Operator R01 = kron(build_r(p, l, g), In);
  const Operator R02 = kron(In, permutation_swap(n)) * R01 * kron(In, permutation_swap(n));
  return R02 * R01;
}

}  // namespace

TEST_CASE("one-site monodromy and its hat") {
  for (Gauge g : {Gauge::homogeneous, Gauge::principal}) {
    const ChainSpec s = make(3, 1, g);
    const cplx l{0.3, 0.2};
    CHECK(rel_residual(build_monodromy(s, l), build_r(s.params, l, g)) == 0.0);
    CHECK(rel_residual(build_monodromy_hat(s, l), build_r(s.params, -l, g).inverse()) < 1e-14);
  }
}

TEST_CASE("two-site monodromy against an explicit assembly") {
  for (Gauge g : {Gauge::homogeneous, Gauge::principal}) {
    const ChainSpec s = make(3, 2, g);
    const cplx l{-0.4, 0.25};
    CHECK(rel_residual(build_monodromy(s, l), monodromy_two_sites(s.params, l, g)) < 1e-14);
  }
}

TEST_CASE("hatted monodromy constructions agree") {
  for (int N : {1, 2, 3}) {
    const ChainSpec s = make(2, N);
    const cplx l{0.35, -0.1};
    CHECK(rel_residual(build_monodromy_hat(s, l), build_monodromy_hat_sitewise(s, l)) < 1e-12);
    const cplx mu = s.params.mu;
    const cplx scalar = std::pow(std::sinh(l + I_unit * mu) * std::sinh(I_unit * mu - l), N);
    CHECK(rel_residual(build_monodromy_hat(s, l, HatConvention::r_hat_product),
                       scalar * build_monodromy_hat(s, l, HatConvention::inverse)) < 1e-12);
  }
}

TEST_CASE("double row obeys the reflection equation at N = 1, n = 2") {
  const ChainSpec s = make(2, 1);
  const ModelParams& p = s.params;
  const cplx a{0.3, 0.1}, b{-0.2, 0.45};
  const Dims d{2, 2, 2};  // aux 1, aux 2, quantum
  const Operator P = permutation_swap(2);
  const auto R12 = [&](cplx l) { return embed_at(build_r(p, l, s.gauge), {0, 1}, d); };
  const auto R21 = [&](cplx l) { return embed_at(P * build_r(p, l, s.gauge) * P, {0, 1}, d); };
  const Operator T1 = embed_at(build_double_row(s, a), {0, 2}, d);
  const Operator T2 = embed_at(build_double_row(s, b), {1, 2}, d);
  const Operator lhs = R12(a - b) * T1 * R21(a + b) * T2;
  const Operator rhs = T2 * R12(a + b) * T1 * R21(a - b);
  CHECK(rel_residual(lhs, rhs) < 1e-10);
}

TEST_CASE("open transfer matrix at N = 1 against a direct trace") {
  for (Gauge g : {Gauge::homogeneous, Gauge::principal}) {
    const ChainSpec s = make(3, 1, g);
    const ModelParams& p = s.params;
    const cplx l{0.2, -0.3};
    const Operator I3 = Operator::identity({3});
    const Operator W = left_trace_weight(p, l, g, s.left);
    const Operator K = build_k_right(p, l, g, s.right);
    const Operator D = build_r(p, l, g) * kron(K, I3) * build_r(p, -l, g).inverse();
    const Operator t = partial_trace_first(kron(W, I3) * D);
    CHECK(rel_residual(build_transfer(s, l, false), t) < 1e-13);
  }
}

TEST_CASE("closed transfer matrix at N = 1 is the partial trace of R") {
  const ChainSpec s = make(3, 1);
  const cplx l{0.5, 0.1};
  CHECK(rel_residual(build_transfer(s, l, true), partial_trace_first(build_r(s.params, l, s.gauge))) < 1e-15);
}

TEST_CASE("transfer matrices commute") {
  Sampler sm(21);
  for (int n : {2, 3})
    for (int N : {1, 2, 3})
      for (LeftBoundaryKind left :
           {LeftBoundaryKind::identity, LeftBoundaryKind::transpose_shift, LeftBoundaryKind::affine_limit}) {
        ChainSpec s = make(n, N);
        s.left = left;
        const cplx a = sm.lambda(s.params), b = sm.lambda(s.params);
        CHECK(commutator_defect(build_transfer(s, a, false), build_transfer(s, b, false)) < 1e-10);
        CHECK(commutator_defect(build_transfer(s, a, true), build_transfer(s, b, true)) < 1e-10);
      }
}

TEST_CASE("right-boundary derivative of x at zero") {
  const ModelParams p = make(3, 1).params;
  const double h = 1e-4;
  const cplx fd = (k_ansatz_x(p, h) - k_ansatz_x(p, -h)) / (2.0 * h);
  const cplx exact = 2.0 * std::sinh(I_unit * p.mu * p.m);
  CHECK(std::abs(fd - exact) < 1e-8 * std::abs(exact));
  // x(l) = cosh(2l + i mu m) - cosh 2 i mu zeta
  const cplx l{0.3, 0.2};
  CHECK(std::abs(k_ansatz_x(p, l) - (std::cosh(2.0 * l + I_unit * p.mu * p.m) - std::cosh(2.0 * I_unit * p.mu * p.zeta))) <
        1e-13);
}

TEST_CASE("transfer derivative against finite differences") {
  const ChainSpec s = make(3, 2);
  const cplx l{0.15, 0.1};
  const double h = 1e-4;
  auto t = [&](cplx x) { return build_transfer(s, x, false, HatConvention::r_hat_product); };
  const Operator fd = (t(l + h) - t(l - h)) / cplx(2 * h);
  CHECK(rel_residual(build_transfer_derivative(s, l), fd) < 1e-7);
}

TEST_CASE("Hamiltonian routes and constant") {
  for (int n : {2, 3})
    for (int N : {2, 3}) {
      const ChainSpec s = make(n, N);
      const Operator h1 = build_hamiltonian(s, HamiltonianRoute::hecke_form);
      const Operator h2 = build_hamiltonian(s, HamiltonianRoute::transfer_derivative);
      CHECK(rel_residual(h1, h2) < 1e-9);
      CHECK(commutator_defect(h1, build_transfer(s, {0.3, 0.2}, false)) < 1e-10);
    }
  const ModelParams p = make(3, 2).params;
  CHECK(std::abs(hamiltonian_c0(p) + std::sinh(I_unit * p.mu * 2.0) / std::sinh(I_unit * p.mu * 3.0)) < 1e-14);
}

TEST_CASE("Hamiltonian rejects degenerate boundary parameters") {
  ChainSpec s = make(3, 2);
  s.params.zeta = s.params.m / 2.0;  // x(0) = 0
  CHECK_THROWS_AS(build_hamiltonian(s, HamiltonianRoute::hecke_form), ParameterError);
}

TEST_CASE("affine fit recovers a known relation") {
  const ChainSpec s = make(2, 2);
  const Operator B = build_transfer(s, {0.3, 0.1}, false);
  const Operator A = cplx(2.0, -1.0) * B + cplx(0.5, 0.25) * Operator::identity(B.dims());
  const AffineFit f = fit_affine(A, B);
  CHECK(std::abs(f.alpha - cplx(2.0, -1.0)) < 1e-12);
  CHECK(std::abs(f.beta - cplx(0.5, 0.25)) < 1e-12);
  CHECK(f.residual < 1e-12);
}

TEST_CASE("chain suite over gauges and right boundaries") {
  for (int n : {2, 3})
    for (Gauge g : {Gauge::homogeneous, Gauge::principal})
      for (RightBoundaryKind rk : {RightBoundaryKind::explicit_k, RightBoundaryKind::diagonal}) {
        ChainSpec s = make(n, 2, g);
        s.right.kind = rk;
        Sampler sm(40 + n);
        const VerificationReport r = verify_chain_suite(s, 2, 1e-9, sm);
        CAPTURE(n);
        for (const auto& c : r.checks)
          if (!c.pass) MESSAGE(c.id << " " << c.residual);
        CHECK(r.pass());
      }
}
