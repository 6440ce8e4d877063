#include "uqbc/spin_chain.hpp"

#include <cmath>

#include "uqbc/hecke.hpp"
#include "uqbc/quantum_algebra.hpp"
#include "uqbc/yang_baxter.hpp"

namespace uqbc {

namespace {

std::string gtag(Gauge g) { return g == Gauge::homogeneous ? "h" : "p"; }

std::string left_tag(LeftBoundaryKind k) {
  std::string s = to_string(k);
  for (char& c : s)
    if (c == '-') c = '_';
  return s;
}

// The open-chain factors W, R_0N..R_01, K, Rhat_01..Rhat_0N and their derivatives.
struct OpenFactors {
  std::vector<Operator> f, df;
};

OpenFactors open_factors(const ChainSpec& spec, cplx l, bool with_derivatives) {
  const ModelParams& p = spec.params;
  const int N = p.sites;
  const Dims dims = chain_dims(spec);
  const Operator P = permutation_swap(p.n);
  OpenFactors out;
  auto push = [&](const Operator& a, const std::vector<int>& slots, const Operator& da) {
    out.f.push_back(embed_at(a, slots, dims));
    if (with_derivatives) out.df.push_back(embed_at(da, slots, dims));
  };
  const Operator R = build_r(p, l, spec.gauge);
  const Operator dR = with_derivatives ? build_r_derivative(p, l, spec.gauge) : R;
  push(left_trace_weight(p, l, spec.gauge, spec.left), {0},
       with_derivatives ? left_trace_weight_derivative(p, l, spec.gauge, spec.left) : R);
  for (int k = N; k >= 1; --k) push(R, {0, k}, dR);
  push(build_k_right(p, l, spec.gauge, spec.right), {0},
       with_derivatives ? build_k_right_derivative(p, l, spec.gauge, spec.right) : R);
  for (int k = 1; k <= N; ++k) push(P * R * P, {0, k}, P * dR * P);
  return out;
}

}  // namespace

void validate(const ChainSpec& spec) {
  validate(spec.params);
  if (spec.right.kind == RightBoundaryKind::diagonal &&
      (spec.right.block < 1 || spec.right.block >= spec.params.n))
    throw ParameterError("diag-block", "diagonal block size must lie in 1..n-1");
}

Dims chain_dims(const ChainSpec& spec) { return Dims(spec.params.sites + 1, spec.params.n); }

Operator build_monodromy(const ChainSpec& spec, cplx lambda) {
  validate(spec);
  const Dims dims = chain_dims(spec);
  const Operator R = build_r(spec.params, lambda, spec.gauge);
  Operator T = Operator::identity(dims);
  for (int k = spec.params.sites; k >= 1; --k) T = T * embed_at(R, {0, k}, dims);
  return T;
}

Operator build_monodromy_hat(const ChainSpec& spec, cplx lambda, HatConvention conv) {
  if (conv == HatConvention::inverse) return build_monodromy(spec, -lambda).inverse();
  const Dims dims = chain_dims(spec);
  const Operator Rh = build_r_hat(spec.params, lambda, spec.gauge);
  Operator T = Operator::identity(dims);
  for (int k = 1; k <= spec.params.sites; ++k) T = T * embed_at(Rh, {0, k}, dims);
  return T;
}

Operator build_monodromy_hat_sitewise(const ChainSpec& spec, cplx lambda) {
  const Dims dims = chain_dims(spec);
  const Operator Ri = build_r(spec.params, -lambda, spec.gauge).inverse();
  Operator T = Operator::identity(dims);
  for (int k = 1; k <= spec.params.sites; ++k) T = T * embed_at(Ri, {0, k}, dims);
  return T;
}

Operator build_double_row(const ChainSpec& spec, cplx lambda, HatConvention conv) {
  const Operator K = embed_at(build_k_right(spec.params, lambda, spec.gauge, spec.right), {0}, chain_dims(spec));
  return build_monodromy(spec, lambda) * K * build_monodromy_hat(spec, lambda, conv);
}

Operator weighted_aux_trace(const Operator& weight, const Operator& D) {
  const int n = D.dims().front();
  Dims rest(D.dims().begin() + 1, D.dims().end());
  Operator t = Operator::zero(rest);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      const cplx w = weight(a - 1, b - 1);
      if (w != cplx(0.0)) t += w * first_factor_block(D, b, a);
    }
  return t;
}

Operator build_transfer(const ChainSpec& spec, cplx lambda, bool closed, HatConvention conv) {
  if (closed) return partial_trace_first(build_monodromy(spec, lambda));
  return weighted_aux_trace(left_trace_weight(spec.params, lambda, spec.gauge, spec.left),
                            build_double_row(spec, lambda, conv));
}

Operator build_transfer_derivative(const ChainSpec& spec, cplx lambda) {
  validate(spec);
  const OpenFactors F = open_factors(spec, lambda, true);
  const size_t m = F.f.size();
  // prefix[k] = f_0..f_{k-1}, suffix[k] = f_k..f_{m-1}
  std::vector<Operator> prefix(m + 1), suffix(m + 1);
  prefix[0] = Operator::identity(chain_dims(spec));
  suffix[m] = prefix[0];
  for (size_t k = 0; k < m; ++k) prefix[k + 1] = prefix[k] * F.f[k];
  for (size_t k = m; k-- > 0;) suffix[k] = F.f[k] * suffix[k + 1];
  Operator d = Operator::zero(chain_dims(spec));
  for (size_t k = 0; k < m; ++k) d += prefix[k] * F.df[k] * suffix[k + 1];
  return partial_trace_first(d);
}

cplx hamiltonian_c0(const ModelParams& p) {
  return -std::sinh(I_unit * p.mu * double(p.n - 1)) / std::sinh(I_unit * p.mu * double(p.n));
}

Operator build_hamiltonian(const ChainSpec& spec, HamiltonianRoute route) {
  const ModelParams& p = spec.params;
  validate(p, true);
  if (spec.gauge != Gauge::homogeneous) throw std::invalid_argument("Hamiltonian needs the homogeneous gradation");
  if (spec.left != LeftBoundaryKind::identity) throw std::invalid_argument("Hamiltonian needs the identity left boundary");
  if (spec.right.kind != RightBoundaryKind::explicit_k && spec.right.kind != RightBoundaryKind::ansatz)
    throw std::invalid_argument("Hamiltonian needs the explicit or ansatz right boundary");
  const int N = p.sites;
  const cplx s = std::sinh(I_unit * p.mu);
  const cplx x0 = boundary_x0(p);

  if (route == HamiltonianRoute::transfer_derivative) {
    const cplx trM = build_M(p, Gauge::homogeneous).trace();
    return (-std::pow(s, -2 * N + 1) / (4.0 * x0 * trM)) * build_transfer_derivative(spec, 0.0);
  }
  const Dims space(N, p.n);
  const cplx xp0 = 2.0 * std::sinh(I_unit * p.mu * p.m);
  const cplx yp0 = 4.0 * s;
  const cplx c = -s * xp0 / (4.0 * x0) - (N / 2.0) * std::cosh(I_unit * p.mu) - hamiltonian_c0(p) / 2.0;
  Operator H = c * Operator::identity(space);
  for (int l = 1; l < N; ++l) H += -0.5 * rep_bulk(p, l);
  H += -(s * yp0 / (4.0 * x0)) * rep_boundary(p);
  return H;
}

AffineFit fit_affine(const Operator& A, const Operator& B) {
  // Normal equations for A ~ a B + b I in the Frobenius inner product.
  const Mat& a = A.mat();
  const Mat& b = B.mat();
  const double d = static_cast<double>(a.rows());
  Eigen::Matrix2cd G;
  Eigen::Vector2cd r;
  G << b.squaredNorm(), std::conj(b.trace()), b.trace(), d;
  r << (b.adjoint() * a).trace(), a.trace();
  const Eigen::Vector2cd x = G.fullPivLu().solve(r);
  const Mat fit = x(0) * b + x(1) * Mat::Identity(a.rows(), a.cols());
  return {x(0), x(1), (a - fit).norm() / std::max(a.norm(), kNormFloor)};
}

VerificationReport verify_chain_suite(const ChainSpec& spec, int samples, double tol, Sampler& sampler) {
  validate(spec);
  if (samples < 1) throw std::invalid_argument("chain suite needs samples >= 1");
  const ModelParams& p = spec.params;
  const int n = p.n, N = p.sites;
  VerificationReport rep;
  rep.suite = "chain";
  rep.params = p;
  rep.gauge = to_string(spec.gauge);
  rep.left = to_string(spec.left);
  rep.right = to_string(spec.right.kind);
  const Dims dims = chain_dims(spec);
  const std::string gt = gtag(spec.gauge);

  // Monodromy and its hatted partner.
  {
    const cplx l1 = sampler.lambda(p), l2 = sampler.lambda(p);
    if (N <= 2) {
      rep.timed("chain.rtt", tol, [&] {
        Dims two{n, n};
        two.insert(two.end(), N, n);
        std::vector<int> qa{0}, qb{1};
        for (int k = 0; k < N; ++k) qa.push_back(k + 2), qb.push_back(k + 2);
        const Operator Ta = embed_at(build_monodromy(spec, l1), qa, two);
        const Operator Tb = embed_at(build_monodromy(spec, l2), qb, two);
        const Operator R = embed_at(build_r(p, l1 - l2, spec.gauge), {0, 1}, two);
        return rel_residual(R * Ta * Tb, Tb * Ta * R);
      });
    }
    const Operator Th = build_monodromy_hat(spec, l1);
    rep.timed("chain.that.inverse", tol,
              [&] { return rel_residual(Th * build_monodromy(spec, -l1), Operator::identity(dims)); });
    rep.timed("chain.that.sitewise", tol, [&] { return rel_residual(Th, build_monodromy_hat_sitewise(spec, l1)); });
    const auto pc = prop_check(build_monodromy_hat(spec, l1, HatConvention::r_hat_product), Th, tol);
    const cplx sN = std::pow(std::sinh(l1 + I_unit * p.mu) * std::sinh(I_unit * p.mu - l1), N);
    rep.add("chain.that.r_hat_product", pc.residual + std::abs(pc.scalar - sN) / std::abs(sN), tol, pc.scalar);
  }

  // Double row: reflection equation on two auxiliary spaces, gradation change.
  {
    const cplx a = sampler.lambda(p), b = sampler.lambda(p);
    if (N <= 2) {
      rep.timed("chain.double_row.re", tol, [&] {
        Dims two{n, n};
        two.insert(two.end(), N, n);
        std::vector<int> qa{0}, qb{1};
        for (int k = 0; k < N; ++k) qa.push_back(k + 2), qb.push_back(k + 2);
        const Operator P = permutation_swap(n);
        auto R12 = [&](cplx l) { return embed_at(build_r(p, l, spec.gauge), {0, 1}, two); };
        auto R21 = [&](cplx l) { return embed_at(P * build_r(p, l, spec.gauge) * P, {0, 1}, two); };
        const Operator Ta = embed_at(build_double_row(spec, a), qa, two);
        const Operator Tb = embed_at(build_double_row(spec, b), qb, two);
        return rel_residual(R12(a - b) * Ta * R21(a + b) * Tb, Tb * R12(a + b) * Ta * R21(a - b));
      });
    }
    rep.timed("chain.double_row.gauge", tol, [&] {
      ChainSpec h = spec, pr = spec;
      h.gauge = Gauge::homogeneous;
      pr.gauge = Gauge::principal;
      const Operator V = embed_at(build_gauge_V(p, a), {0}, dims);
      return rel_residual(build_double_row(pr, a), V * build_double_row(h, a) * V);
    });
  }

  // Transfer-matrix commutativity for the closed chain and every left boundary.
  for (int s = 0; s < samples; ++s) {
    const cplx l1 = sampler.lambda(p), l2 = sampler.lambda(p);
    const std::string ss = std::to_string(s);
    rep.timed("chain.commute.closed." + gt + ss, tol, [&] {
      return commutator_defect(build_transfer(spec, l1, true), build_transfer(spec, l2, true));
    });
    for (LeftBoundaryKind lk :
         {LeftBoundaryKind::identity, LeftBoundaryKind::transpose_shift, LeftBoundaryKind::affine_limit}) {
      ChainSpec c = spec;
      c.left = lk;
      rep.timed("chain.commute.open." + left_tag(lk) + "." + gt + ss, tol, [&] {
        return commutator_defect(build_transfer(c, l1, false), build_transfer(c, l2, false));
      });
    }
  }

  // Transfer matrix assembled from the diagonal blocks of the double row.
  if (spec.gauge == Gauge::homogeneous) {
    const cplx l = sampler.lambda(p);
    const cplx q = p.q();
    ChainSpec c = spec;
    c.left = LeftBoundaryKind::identity;
    const Operator D = build_double_row(c, l);
    rep.timed("chain.transfer.diagonal_blocks", tol, [&] {
      Operator t = Operator::zero(Dims(N, n));
      for (int j = 1; j <= n; ++j) t += std::pow(q, double(n - 2 * j + 1)) * first_factor_block(D, j, j);
      return rel_residual(build_transfer(c, l, false), t);
    });
    c.left = LeftBoundaryKind::affine_limit;
    rep.timed("chain.transfer.affine_blocks", tol, [&] {
      const cplx e2 = std::exp(2.0 * l), iu = I_unit * p.mu;
      Operator t = std::exp(-2.0 * l - iu) * first_factor_block(D, 1, 1) + std::exp(2.0 * l + iu) * first_factor_block(D, n, n);
      for (int j = 2; j < n; ++j) t += (1.0 / e2) * std::pow(q, double(-2 * j + 1)) * first_factor_block(D, j, j);
      return rel_residual(build_transfer(c, l, false), t);
    });
  }

  // Monodromy intertwining for every generator, and the companion relation for That.
  {
    const cplx l = sampler.lambda(p);
    const Operator T = build_monodromy(spec, l);
    const Operator Th = build_monodromy_hat(spec, l);
    for (GenKind k : {GenKind::E, GenKind::F, GenKind::Keps, GenKind::Hcartan})
      for (int i = 1; i <= n; ++i) {
        const GeneratorLabel g{k, i};
        const std::string tag = std::string(k == GenKind::E ? "e" : k == GenKind::F ? "f" : k == GenKind::Keps ? "k" : "h") +
                                std::to_string(i);
        rep.timed("chain.monodromy_intertwining." + gt + "." + tag, tol, [&] {
          const Operator D = coproduct_rep(p, g, N + 1, CoproductVariant::delta, l, spec.gauge);
          const Operator Dp = coproduct_rep(p, g, N + 1, CoproductVariant::delta_prime, l, spec.gauge);
          return rel_residual(Dp * T, T * D);
        });
        rep.timed("chain.monodromy_hat_intertwining." + gt + "." + tag, tol, [&] {
          const Operator D = coproduct_rep(p, g, N + 1, CoproductVariant::delta, -l, spec.gauge);
          const Operator Dp = coproduct_rep(p, g, N + 1, CoproductVariant::delta_prime, -l, spec.gauge);
          return rel_residual(D * Th, Th * Dp);
        });
      }
  }

  // Reflection-algebra elements in evaluation form and the double-row intertwining.
  {
    const cplx l = sampler.lambda(p), lp = sampler.lambda(p);
    const Operator P = permutation_swap(n);
    auto R = [&](cplx x) { return build_r(p, x, spec.gauge); };
    auto K = [&](cplx x) { return build_k_right(p, x, spec.gauge, spec.right); };
    // (id (x) pi_{+-l}) K(l') on (a, site): R(l' -+ l) (K(l') (x) I) Rhat(l' +- l)
    auto KK = [&](cplx sgn) { return R(lp - sgn * l) * kron(K(lp), Operator::identity({n})) * (P * R(lp + sgn * l) * P); };
    const Operator Xp = KK(1.0), Xm = KK(-1.0);
    const Operator K1 = kron(Operator::identity({n}), K(l));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        rep.timed("chain.reflection_blocks." + std::to_string(i) + std::to_string(j), tol, [&] {
          const Operator a = first_factor_block(Xp, i, j), b = first_factor_block(Xm, i, j);
          const Operator Kl = K(l);
          return rel_residual(a * Kl, Kl * b, std::max(a.norm(), b.norm()) * Kl.norm());
        });
    if (N <= 2) {
      rep.timed("chain.double_row_intertwining", tol, [&] {
        Dims full{n};
        full.insert(full.end(), dims.begin(), dims.end());
        std::vector<int> a_q{0}, rest;
        for (int k = 2; k < N + 2; ++k) a_q.push_back(k);
        for (int k = 1; k < N + 2; ++k) rest.push_back(k);
        const Operator Ta = embed_at(build_double_row(spec, lp), a_q, full);
        auto Ra0 = [&](const Operator& r) { return embed_at(r, {0, 1}, full); };
        const Operator X = Ra0(R(lp - l)) * Ta * Ra0(P * R(lp + l) * P);
        const Operator Y = Ra0(R(lp + l)) * Ta * Ra0(P * R(lp - l) * P);
        const Operator T0 = embed_at(build_double_row(spec, l), rest, full);
        return rel_residual(X * T0, T0 * Y);
      });
    }
  }

  // Hamiltonian: two routes, commuting family, derivative cross-check, constants.
  const bool ham_ok = spec.gauge == Gauge::homogeneous && spec.left == LeftBoundaryKind::identity &&
                      (spec.right.kind == RightBoundaryKind::explicit_k || spec.right.kind == RightBoundaryKind::ansatz) &&
                      is_valid(p, true);
  if (ham_ok) {
    const Operator H1 = build_hamiltonian(spec, HamiltonianRoute::hecke_form);
    const Operator H2 = build_hamiltonian(spec, HamiltonianRoute::transfer_derivative);
    const double r = rel_residual(H1, H2);
    Check& c = rep.add("chain.hamiltonian.routes", r, tol);
    if (!c.pass) {
      const AffineFit f = fit_affine(H1, H2);
      rep.add("chain.hamiltonian.affine_fit", f.residual, tol, f.alpha);
      rep.add("chain.hamiltonian.affine_shift", std::abs(f.beta), tol, f.beta);
    }
    for (int s = 0; s < samples; ++s) {
      const cplx l = sampler.lambda(p);
      rep.timed("chain.hamiltonian.commute." + std::to_string(s), tol,
                [&] { return commutator_defect(H1, build_transfer(spec, l, false)); });
    }
    rep.timed("chain.derivative.finite_difference", 1e-7, [&] {
      auto t = [&](cplx l) { return build_transfer(spec, l, false, HatConvention::r_hat_product); };
      const double h = 1e-4;
      auto cd = [&](double hh) { return (t(hh) - t(-hh)) / cplx(2.0 * hh); };
      const Operator rich = (4.0 * cd(h / 2) - cd(h)) / cplx(3.0);
      return rel_residual(build_transfer_derivative(spec, 0.0), rich);
    });
    rep.timed("chain.derivative.x0", 1e-10, [&] {
      const double h = 1e-5;
      const cplx fd = (k_ansatz_x(p, h) - k_ansatz_x(p, -h)) / (2.0 * h);
      const cplx an = 2.0 * std::sinh(I_unit * p.mu * p.m);
      return std::abs(fd - an) / std::abs(an);
    });
    rep.timed("chain.hamiltonian.c0", tol, [&] {
      // tr_0 M_0 U_{N0} / tr_0 M_0 with U_{N0} the bulk generator at q -> 1/q.
      ModelParams pinv = p;
      pinv.mu = -p.mu;
      const Operator M = build_M(p, Gauge::homogeneous);
      const Operator U = build_bulk_generator(pinv);
      const Operator red = weighted_aux_trace(M, U) / M.trace();
      std::vector<cplx> d(n, hamiltonian_c0(p));
      return rel_residual(red, diag(d));
    });
  }
  return rep;
}

}  // namespace uqbc
