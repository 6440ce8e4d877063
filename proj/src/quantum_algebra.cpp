#include "uqbc/quantum_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "uqbc/hecke.hpp"
#include "uqbc/yang_baxter.hpp"

namespace uqbc {

namespace {

Operator kron_list(const std::vector<Operator>& ops) {
  Operator r = ops.front();
  for (size_t k = 1; k < ops.size(); ++k) r = kron(r, ops[k]);
  return r;
}

// Exponent vector of a diagonal Cartan element in units of mu.
std::vector<double> cartan_weights(int n, GenKind kind, int i) {
  std::vector<double> v(n, 0.0);
  if (kind == GenKind::Keps) {
    v[i - 1] = 0.5;
  } else {
    // h_i = eps_i - eps_{i+1}, h_n = eps_n - eps_1
    v[i - 1] += 0.5;
    v[i < n ? i : 0] -= 0.5;
  }
  return v;
}

Operator qdiag(const ModelParams& p, const std::vector<double>& w, double sign) {
  std::vector<cplx> d(w.size());
  for (size_t k = 0; k < w.size(); ++k) d[k] = p.qpow(sign * w[k]);
  return diag(d);
}

// q^{-h_i/2} and q^{h_i/2} for the Chevalley pair with index i.
Operator half_h(const ModelParams& p, int i, double sign) {
  return qdiag(p, cartan_weights(p.n, GenKind::Hcartan, i), sign);
}

std::string gen_tag(GenKind k, int i) {
  switch (k) {
    case GenKind::E: return "e" + std::to_string(i);
    case GenKind::F: return "f" + std::to_string(i);
    case GenKind::Keps: return "k" + std::to_string(i);
    case GenKind::Hcartan: return "h" + std::to_string(i);
  }
  return "?";
}

std::string gtag(Gauge g) { return g == Gauge::homogeneous ? "h" : "p"; }

std::vector<GeneratorLabel> all_generators(int n) {
  std::vector<GeneratorLabel> out;
  for (GenKind k : {GenKind::E, GenKind::F, GenKind::Keps, GenKind::Hcartan})
    for (int i = 1; i <= n; ++i) out.push_back({k, i, false});
  return out;
}

// Norm of a relation sum divided by the largest of its terms.
double relation_residual(const std::vector<Operator>& terms) {
  Operator s = terms.front();
  double scale = terms.front().norm();
  for (size_t k = 1; k < terms.size(); ++k) {
    s += terms[k];
    scale = std::max(scale, terms[k].norm());
  }
  return s.norm() / std::max(scale, kNormFloor);
}

}  // namespace

void validate_label(const ModelParams& p, const GeneratorLabel& g) {
  if (g.index < 1 || g.index > p.n)
    throw std::out_of_range("generator index " + std::to_string(g.index) + " outside 1.." + std::to_string(p.n));
  if (g.inverse && (g.kind == GenKind::E || g.kind == GenKind::F))
    throw std::invalid_argument("Chevalley generators have no inverse");
}

void validate_label(const ModelParams& p, const TElementLabel& t) {
  const int n = p.n;
  switch (t.family) {
    case TFamily::t0_n1:
    case TFamily::t0hat_1n:
    case TFamily::t0_minus_1n:
    case TFamily::t0hat_minus_n1:
      return;
    default:
      break;
  }
  if (t.i < 1 || t.i > n || t.j < 1 || t.j > n) throw std::out_of_range("t element index out of range");
  const bool ok = (t.family == TFamily::t && t.i <= t.j) || (t.family == TFamily::t_minus && t.i >= t.j) ||
                  (t.family == TFamily::t_hat && t.i >= t.j) || (t.family == TFamily::t_hat_minus && t.i <= t.j);
  if (!ok) throw std::invalid_argument("invalid family/index combination");
}

Operator eval_generator(const ModelParams& p, const GeneratorLabel& g, cplx lambda, Gauge gauge) {
  validate_label(p, g);
  const int n = p.n, i = g.index;
  Operator x;
  switch (g.kind) {
    case GenKind::E:
      x = (i < n) ? unit(n, i, i + 1) : std::exp(-2.0 * lambda) * unit(n, n, 1);
      break;
    case GenKind::F:
      x = (i < n) ? unit(n, i + 1, i) : std::exp(2.0 * lambda) * unit(n, 1, n);
      break;
    case GenKind::Keps:
    case GenKind::Hcartan:
      return qdiag(p, cartan_weights(n, g.kind, i), g.inverse ? -1.0 : 1.0);
  }
  if (gauge == Gauge::principal) x = build_gauge_V(p, lambda) * x * build_gauge_V(p, -lambda);
  return x;
}

Operator coproduct_sites(const ModelParams& p, const GeneratorLabel& g, const std::vector<cplx>& lambdas,
                         CoproductVariant variant, Gauge gauge) {
  const int L = static_cast<int>(lambdas.size());
  if (L < 1) throw std::invalid_argument("coproduct needs at least one site");
  if (g.kind == GenKind::Keps || g.kind == GenKind::Hcartan) return kron_power(eval_generator(p, g, 0.0), L);

  const Operator qm = half_h(p, g.index, -1.0), qp = half_h(p, g.index, 1.0);
  if (variant == CoproductVariant::delta_prime) {
    // y (x) (q^{-h/2})^{L-1} + q^{h/2} (x) Delta^{(L-1)}(y)
    Operator a = eval_generator(p, g, lambdas[0], gauge);
    if (L == 1) return a;
    std::vector<cplx> rest(lambdas.begin() + 1, lambdas.end());
    return kron(a, kron_power(qm, L - 1)) + kron(qp, coproduct_sites(p, g, rest, CoproductVariant::delta, gauge));
  }
  Operator total = Operator::zero(Dims(L, p.n));
  for (int l = 0; l < L; ++l) {
    std::vector<Operator> f;
    for (int k = 0; k < L; ++k) f.push_back(k < l ? qm : k == l ? eval_generator(p, g, lambdas[l], gauge) : qp);
    total += kron_list(f);
  }
  return total;
}

Operator coproduct_rep(const ModelParams& p, const GeneratorLabel& g, int L, CoproductVariant variant,
                       std::optional<cplx> first_site_lambda, Gauge gauge) {
  std::vector<cplx> lams(L, 0.0);
  if (L >= 1 && first_site_lambda) lams[0] = *first_site_lambda;
  return coproduct_sites(p, g, lams, variant, gauge);
}

Operator cartan_eps(const ModelParams& p, int i, double power, int L) {
  std::vector<cplx> d(p.n, 1.0);
  d[i - 1] = p.qpow(power);
  return kron_power(diag(d), L);
}

AlgebraRealization::AlgebraRealization(const ModelParams& p, std::vector<cplx> site_lambdas)
    : p_(p), lambdas_(std::move(site_lambdas)) {
  if (lambdas_.empty()) throw std::invalid_argument("realization needs at least one site");
}

Operator AlgebraRealization::generator(GenKind kind, int i, bool inverse) const {
  return coproduct_sites(p_, GeneratorLabel{kind, i, inverse}, lambdas_);
}

const Operator& AlgebraRealization::E(int i, int j, bool hat) {
  const auto key = std::make_tuple(i, j, hat);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (i == j || i < 1 || j < 1 || i > p_.n || j > p_.n) throw std::out_of_range("E_ij needs distinct indices in 1..n");
  Operator r;
  if (j == i + 1) {
    r = generator(GenKind::E, i);
  } else if (i == j + 1) {
    r = generator(GenKind::F, j);
  } else {
    const int lo = std::min(i, j), hi = std::max(i, j);
    r = Operator::zero(Dims(sites(), p_.n));
    for (int k = lo + 1; k < hi; ++k) r += recursion_single_k(*this, i, k, j, hat);
    r = r / cplx(hi - lo - 1);
  }
  return memo_.emplace(key, std::move(r)).first->second;
}

Operator recursion_single_k(AlgebraRealization& alg, int i, int k, int j, bool hat) {
  // E_ik E_kj - q^{s} E_kj E_ik, s = -1 for j<k<i and +1 for i<k<j; flipped for the hatted family.
  double s = (j < i) ? -1.0 : 1.0;
  if (hat) s = -s;
  const Operator A = alg.E(i, k, hat);
  const Operator B = alg.E(k, j, hat);
  return A * B - alg.params().qpow(s) * (B * A);
}

Operator AlgebraRealization::t(const TElementLabel& lab) {
  validate_label(p_, lab);
  const int n = p_.n, i = lab.i, j = lab.j;
  const cplx w = p_.w();
  const cplx qm = p_.qpow(-0.5), qp = p_.qpow(0.5);
  auto pre = [&](int a, int b, double s) { return eps(a, s / 2) * eps(b, s / 2); };
  switch (lab.family) {
    case TFamily::t:
      if (i == j) return eps(i, 1.0);
      return w * qm * (pre(i, j, 1.0) * E(j, i));
    case TFamily::t_hat:
      if (i == j) return eps(i, 1.0);
      return w * qm * (pre(i, j, 1.0) * E(j, i, true));
    case TFamily::t_minus:
      if (i == j) return eps(i, -1.0);
      return -w * qp * (pre(i, j, -1.0) * E(j, i));
    case TFamily::t_hat_minus:
      if (i == j) return eps(i, -1.0);
      return -w * qp * (pre(i, j, -1.0) * E(j, i, true));
    case TFamily::t0_n1:
      return w * qm * (pre(1, n, 1.0) * generator(GenKind::F, n));
    case TFamily::t0hat_1n:
      return w * qm * (pre(1, n, 1.0) * generator(GenKind::E, n));
    case TFamily::t0_minus_1n:
      return -w * qp * (pre(1, n, -1.0) * generator(GenKind::E, n));
    case TFamily::t0hat_minus_n1:
      return -w * qp * (pre(1, n, -1.0) * generator(GenKind::F, n));
  }
  throw std::logic_error("unknown t family");
}

Operator t_element_rep(const ModelParams& p, const TElementLabel& label, int L, std::optional<cplx> lambda_first) {
  std::vector<cplx> lams(L, 0.0);
  if (L >= 1 && lambda_first) lams[0] = *lambda_first;
  AlgebraRealization alg(p, lams);
  return alg.t(label);
}

Operator last_slot_to_front(const Operator& a) {
  const int L = static_cast<int>(a.dims().size());
  std::vector<int> order{L - 1};
  for (int k = 0; k < L - 1; ++k) order.push_back(k);
  return permute_slots(a, order);
}

Operator build_lax(const ModelParams& p, cplx lambda, Gauge gauge, int quantum_sites) {
  const int n = p.n;
  AlgebraRealization alg(p, std::vector<cplx>(quantum_sites, 0.0));
  Operator L = Operator::zero(Dims(quantum_sites + 1, n));
  const cplx ep = std::exp(lambda), em = std::exp(-lambda);
  if (gauge == Gauge::homogeneous)
    return ep * build_lax_part(p, true, quantum_sites) - em * build_lax_part(p, false, quantum_sites);
  const double r = 2.0 / n;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const Operator e = unit(n, i, j);
      if (i == j) {
        L += kron(e, ep * alg.t(TFamily::t, i, i) - em * alg.t(TFamily::t_minus, i, i));
      } else if (i == n && j == 1) {
        L += std::exp(lambda - r * lambda) * kron(e, alg.t(TFamily::t0_n1));
      } else if (i == 1 && j == n) {
        L += -std::exp(-lambda + r * lambda) * kron(e, alg.t(TFamily::t0_minus_1n));
      } else if (i < j) {
        L += std::exp(((i - j) * r + 1.0) * lambda) * kron(e, alg.t(TFamily::t, i, j));
      } else {
        L += -std::exp(((i - j) * r - 1.0) * lambda) * kron(e, alg.t(TFamily::t_minus, i, j));
      }
    }
  return L;
}

Operator build_lax_part(const ModelParams& p, bool plus, int quantum_sites) {
  const int n = p.n;
  AlgebraRealization alg(p, std::vector<cplx>(quantum_sites, 0.0));
  Operator L = Operator::zero(Dims(quantum_sites + 1, n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (plus && i <= j) L += kron(unit(n, i, j), alg.t(TFamily::t, i, j));
      if (!plus && i >= j) L += kron(unit(n, i, j), alg.t(TFamily::t_minus, i, j));
    }
  return L;
}

Operator build_lax_hat(const ModelParams& p, cplx lambda, Gauge gauge, int quantum_sites) {
  return build_lax(p, -lambda, gauge, quantum_sites).inverse();
}

Operator block_rep(const ModelParams& p, BlockForm which, int index, int N, cplx lambda) {
  const int n = p.n;
  if (index < 1 || index > n) throw std::out_of_range("block form index out of range");
  if (N < 1) throw std::invalid_argument("block form needs N >= 1");
  const Dims quantum(N, n);
  const int D = total_dim(quantum);
  Mat big = Mat::Zero(n * D, n * D);
  auto put = [&](int a, int b, const Operator& blk) { big.block((a - 1) * D, (b - 1) * D, D, D) += blk.mat(); };

  if (which == BlockForm::cartan_eps) {
    const Operator g = cartan_eps(p, index, 1.0, N);
    for (int a = 1; a <= n; ++a) put(a, a, (a == index ? p.q() : cplx(1.0)) * g);
  } else {
    const bool is_e = which == BlockForm::chevalley_e;
    const GeneratorLabel lab{is_e ? GenKind::E : GenKind::F, index, false};
    const Operator y = coproduct_rep(p, lab, N, CoproductVariant::delta);
    const Operator hinv = kron_power(half_h(p, index, -1.0), N);
    // Diagonal blocks: q^{h_i/2} evaluated on the charge site times the bulk coproduct.
    const std::vector<double> wts = cartan_weights(n, GenKind::Hcartan, index);
    for (int a = 1; a <= n; ++a) put(a, a, p.qpow(wts[a - 1]) * y);
    const int lo = index, hi = (index < n) ? index + 1 : 1;
    if (is_e) {
      if (index < n) put(lo, hi, hinv);
      else put(n, 1, std::exp(-2.0 * lambda) * hinv);
    } else {
      if (index < n) put(hi, lo, hinv);
      else put(1, n, std::exp(2.0 * lambda) * hinv);
    }
  }
  Dims dims{n};
  dims.insert(dims.end(), quantum.begin(), quantum.end());
  return {big, dims};
}

VerificationReport verify_algebra_suite(const ModelParams& p, int samples, double tol, Sampler& sampler) {
  validate(p);
  if (samples < 1) throw std::invalid_argument("algebra suite needs samples >= 1");
  VerificationReport rep;
  rep.suite = "algebra";
  rep.params = p;
  const int n = p.n, N = std::max(1, p.sites);
  const cplx q = p.q();
  const auto gens = all_generators(n);
  const Operator P = permutation_swap(n);

  // Evaluation representation.
  rep.timed("algebra.eval.pi0_principal", tol, [&] {
    double r = 0.0;
    for (const auto& g : gens)
      r = std::max(r, rel_residual(eval_generator(p, g, 0.0, Gauge::homogeneous),
                                   eval_generator(p, g, 0.0, Gauge::principal)));
    return r;
  });
  for (int s = 0; s < samples; ++s) {
    const cplx l = sampler.lambda(p);
    for (Gauge g : {Gauge::homogeneous, Gauge::principal})
      for (int i = 1; i <= n; ++i)
        rep.timed("algebra.eval.ef." + gtag(g) + std::to_string(s) + "_" + std::to_string(i), tol, [&] {
          const Operator e = eval_generator(p, {GenKind::E, i}, l, g), f = eval_generator(p, {GenKind::F, i}, l, g);
          const Operator kh = eval_generator(p, {GenKind::Hcartan, i}, l, g);
          const Operator khi = eval_generator(p, {GenKind::Hcartan, i, true}, l, g);
          return rel_residual(commutator(e, f), (kh * kh - khi * khi) / (q - 1.0 / q));
        });
  }

  // Coproducts: Pi o Delta at L = 2, coassociativity up to L = 4, relation preservation.
  {
    const cplx l1 = sampler.lambda(p), l2 = sampler.lambda(p);
    for (GenKind k : {GenKind::E, GenKind::F})
      for (int i = 1; i <= n; ++i) {
        const GeneratorLabel g{k, i};
        rep.timed("algebra.cop.perm." + gen_tag(k, i), tol, [&] {
          return rel_residual(coproduct_sites(p, g, {l1, l2}, CoproductVariant::delta_prime),
                              P * coproduct_sites(p, g, {l2, l1}) * P);
        });
        for (int L = 3; L <= 4; ++L)
          rep.timed("algebra.cop.coassoc.L" + std::to_string(L) + "." + gen_tag(k, i), tol, [&] {
            // (id (x) Delta^{(L-1)}) Delta, written out on the first factor.
            std::vector<cplx> lams(L);
            for (int a = 0; a < L; ++a) lams[a] = (a % 2 ? l2 : l1) * (double(a + 1) / L);
            const std::vector<cplx> rest(lams.begin() + 1, lams.end());
            const Operator rec = kron(half_h(p, i, -1.0), coproduct_sites(p, g, rest)) +
                                 kron(eval_generator(p, g, lams[0]), kron_power(half_h(p, i, 1.0), L - 1));
            return rel_residual(coproduct_sites(p, g, lams), rec);
          });
      }
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        const std::string ij = std::to_string(i) + "_" + std::to_string(j);
        rep.timed("algebra.hom.kek." + ij, tol, [&] {
          const Operator K = coproduct_sites(p, {GenKind::Keps, i}, {l1, l2});
          const Operator Ki = coproduct_sites(p, {GenKind::Keps, i, true}, {l1, l2});
          const Operator e = coproduct_sites(p, {GenKind::E, j}, {l1, l2});
          const int jp = (j < n) ? j + 1 : 1;
          const double a = 0.5 * ((i == j) - (i == jp));
          return rel_residual(K * e * Ki, p.qpow(a) * e);
        });
        rep.timed("algebra.hom.ef." + ij, tol, [&] {
          const Operator e = coproduct_sites(p, {GenKind::E, i}, {l1, l2});
          const Operator f = coproduct_sites(p, {GenKind::F, j}, {l1, l2});
          const Operator c = commutator(e, f);
          if (i != j) return c.norm() / std::max(e.norm() * f.norm(), kNormFloor);
          const Operator kh = coproduct_sites(p, {GenKind::Hcartan, i}, {l1, l2});
          const Operator khi = coproduct_sites(p, {GenKind::Hcartan, i, true}, {l1, l2});
          return rel_residual(c, (kh * kh - khi * khi) / (q - 1.0 / q));
        });
      }
    // Serre relations over the affine Dynkin diagram (cyclic for n >= 3).
    if (n >= 3) {
      for (GenKind k : {GenKind::E, GenKind::F})
        for (int i = 1; i <= n; ++i)
          for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            const Operator a = coproduct_sites(p, {k, i}, {l1, l2});
            const Operator b = coproduct_sites(p, {k, j}, {l1, l2});
            const int d = std::min(std::abs(i - j), n - std::abs(i - j));
            const std::string id = "algebra.serre." + gen_tag(k, i) + "_" + std::to_string(j);
            if (d == 1) {
              rep.timed(id, tol, [&] { return relation_residual({a * a * b, -(q + 1.0 / q) * (a * b * a), b * a * a}); });
            } else {
              rep.timed(id, tol, [&] { return commutator_defect(a, b); });
            }
          }
    }
  }

  // E_ij and t families.
  {
    AlgebraRealization one(p, {0.0});
    rep.timed("algebra.t.eval_Eij", tol, [&] {
      double r = 0.0;
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          if (i != j)
            for (bool hat : {false, true}) r = std::max(r, rel_residual(one.E(i, j, hat), unit(n, i, j)));
      return r;
    });
    rep.timed("algebra.t.diag", tol, [&] {
      double r = 0.0;
      for (int i = 1; i <= n; ++i) {
        std::vector<cplx> d(n, 1.0);
        d[i - 1] = q;
        r = std::max(r, rel_residual(one.t(TFamily::t, i, i), diag(d)));
        r = std::max(r, rel_residual(one.t(TFamily::t_hat, i, i), diag(d)));
      }
      return r;
    });

    const cplx la = sampler.lambda(p), lb = sampler.lambda(p);
    AlgebraRealization two(p, {la, lb}), A(p, {la}), B(p, {lb});
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const std::string ij = std::to_string(i) + std::to_string(j);
        auto sum = [&](auto term) {
          Operator s = term(i);
          for (int k = i + 1; k <= j; ++k) s += term(k);
          return s;
        };
        rep.timed("algebra.t_coproduct.t." + ij, tol, [&] {
          return rel_residual(two.t(TFamily::t, i, j),
                              sum([&](int k) { return kron(A.t(TFamily::t, k, j), B.t(TFamily::t, i, k)); }));
        });
        rep.timed("algebra.t_coproduct.that." + ij, tol, [&] {
          return rel_residual(two.t(TFamily::t_hat, j, i), sum([&](int k) {
                                return kron(A.t(TFamily::t_hat, j, k), B.t(TFamily::t_hat, k, i));
                              }));
        });
        rep.timed("algebra.t_coproduct.tminus." + ij, tol, [&] {
          return rel_residual(two.t(TFamily::t_minus, j, i), sum([&](int k) {
                                return kron(A.t(TFamily::t_minus, k, i), B.t(TFamily::t_minus, j, k));
                              }));
        });
        rep.timed("algebra.t_coproduct.that_minus." + ij, tol, [&] {
          return rel_residual(two.t(TFamily::t_hat_minus, i, j), sum([&](int k) {
                                return kron(A.t(TFamily::t_hat_minus, i, k), B.t(TFamily::t_hat_minus, k, j));
                              }));
        });
      }
    for (auto [fam, name, plus] : {std::tuple{TFamily::t0_n1, "t0_n1", true},
                                   std::tuple{TFamily::t0hat_1n, "t0hat_1n", true},
                                   std::tuple{TFamily::t0_minus_1n, "t0_minus_1n", false},
                                   std::tuple{TFamily::t0hat_minus_n1, "t0hat_minus_n1", false}}) {
      rep.timed(std::string("algebra.t0_coproduct.") + name, tol, [&, fam = fam, plus = plus] {
        const TFamily d = plus ? TFamily::t : TFamily::t_minus;
        const int first = plus ? 1 : n, last = plus ? n : 1;
        return rel_residual(two.t(fam),
                            kron(A.t(d, first, first), B.t(fam)) + kron(A.t(fam), B.t(d, last, last)));
      });
    }

    // Closed two-site coproduct of E_ij, i - j >= 2.
    AlgebraRealization two0(p, {0.0, 0.0});
    const cplx w = p.w();
    auto ee = [&](int a, int b, double s) { return one.eps(a, s) * one.eps(b, -s); };
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j + 1 < i; ++j)
        rep.timed("algebra.coproduct_Eij." + std::to_string(i) + std::to_string(j), tol, [&] {
          Operator rhs = kron(ee(j, i, -0.5), unit(n, i, j)) + kron(unit(n, i, j), ee(j, i, 0.5));
          for (int k = j + 1; k < i; ++k)
            rhs += p.qpow(-0.5) * w * kron(ee(j, k, -0.5) * unit(n, i, k), ee(k, i, 0.5) * unit(n, k, j));
          return rel_residual(two0.E(i, j), rhs);
        });

    if (n >= 4) {
      AlgebraRealization three(p, {la, 0.0, lb});
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          if (std::abs(i - j) < 2) continue;
          for (int k = std::min(i, j) + 1; k < std::max(i, j); ++k)
            for (bool hat : {false, true})
              rep.timed("algebra.recursion.single_k." + std::string(hat ? "hat." : "") + std::to_string(i) +
                            std::to_string(k) + std::to_string(j),
                        tol, [&] { return rel_residual(three.E(i, j, hat), recursion_single_k(three, i, k, j, hat)); });
        }
    }
  }

  // Intertwining with R in both gradations, plus the deliberate cross-gauge mismatch.
  for (int s = 0; s < samples; ++s) {
    const cplx l = sampler.lambda(p);
    for (Gauge g : {Gauge::homogeneous, Gauge::principal}) {
      const Operator R = build_r(p, l, g);
      for (const auto& x : gens)
        rep.timed("algebra.intertwining." + gtag(g) + std::to_string(s) + "." + gen_tag(x.kind, x.index), tol, [&] {
          const Operator D = coproduct_sites(p, x, {l, 0.0}, CoproductVariant::delta, g);
          const Operator Dp = coproduct_sites(p, x, {l, 0.0}, CoproductVariant::delta_prime, g);
          return rel_residual(Dp * R, R * D);
        });
    }
    const GeneratorLabel en{GenKind::E, n};
    const Operator D = coproduct_sites(p, en, {l, 0.0}, CoproductVariant::delta, Gauge::homogeneous);
    const Operator Dp = coproduct_sites(p, en, {l, 0.0}, CoproductVariant::delta_prime, Gauge::homogeneous);
    const Operator Rp = build_r(p, l, Gauge::principal);
    rep.add_exceeds("algebra.intertwining_mismatch." + std::to_string(s), rel_residual(Dp * Rp, Rp * D), 1e-3);
  }

  // Bulk U_q(gl_n) symmetry of Rcheck on the chain.
  if (N >= 2) {
    const Dims space(N, n);
    for (int s = 0; s < samples; ++s) {
      const cplx l = sampler.lambda(p);
      for (int site = 1; site < N; ++site) {
        const Operator Rc = embed_at(build_rcheck(p, l), {site - 1, site}, space);
        for (const auto& x : gens) {
          if ((x.kind == GenKind::E || x.kind == GenKind::F || x.kind == GenKind::Hcartan) && x.index == n) continue;
          rep.timed("algebra.rcheck_symmetry." + std::to_string(s) + ".l" + std::to_string(site) + "." +
                        gen_tag(x.kind, x.index),
                    tol, [&] { return commutator_defect(Rc, coproduct_rep(p, x, N, CoproductVariant::delta)); });
        }
      }
    }
  }

  // Lax operators.
  for (Gauge g : {Gauge::homogeneous, Gauge::principal}) {
    const std::string gt = gtag(g);
    const cplx l1 = sampler.lambda(p), l2 = sampler.lambda(p);
    const auto f1 = prop_check(build_lax(p, l1, g), build_r(p, l1, g), tol);
    const auto f2 = prop_check(build_lax(p, l2, g), build_r(p, l2, g), tol);
    rep.add("algebra.lax.prop_r." + gt + "0", f1.residual, tol, f1.scalar);
    rep.add("algebra.lax.prop_r." + gt + "1", f2.residual, tol, f2.scalar);
    rep.add("algebra.lax.scalar_drift." + gt, std::abs(f1.scalar - f2.scalar) / std::abs(f1.scalar), tol,
            f1.scalar);
    const Dims three{n, n, n};
    rep.timed("algebra.lax.rll." + gt, tol, [&] {
      const Operator Rab = embed_at(build_r(p, l1 - l2, g), {0, 1}, three);
      const Operator La = embed_at(build_lax(p, l1, g), {0, 2}, three);
      const Operator Lb = embed_at(build_lax(p, l2, g), {1, 2}, three);
      return rel_residual(Rab * La * Lb, Lb * La * Rab);
    });
    // Two-site products L13 L12 and Lhat12 Lhat13 are again RLL solutions.
    rep.timed("algebra.lax.coproduct." + gt, tol, [&] {
      const Dims four{n, n, n, n};
      auto T = [&](int aux, cplx l) {
        const Operator L = build_lax(p, l, g);
        return embed_at(L, {aux, 3}, four) * embed_at(L, {aux, 2}, four);
      };
      const Operator Rab = embed_at(build_r(p, l1 - l2, g), {0, 1}, four);
      return rel_residual(Rab * T(0, l1) * T(1, l2), T(1, l2) * T(0, l1) * Rab);
    });
    rep.timed("algebra.lax_hat.coproduct." + gt, tol, [&] {
      const Operator H1 = build_lax_hat(p, l1, g), L1 = build_lax(p, -l1, g);
      const Operator prod = embed_at(L1, {0, 2}, three) * embed_at(L1, {0, 1}, three);
      return rel_residual(embed_at(H1, {0, 1}, three) * embed_at(H1, {0, 2}, three), prod.inverse());
    });
  }
  for (bool plus : {true, false})
    rep.timed(std::string("algebra.lax.coproduct_") + (plus ? "plus" : "minus"), tol, [&] {
      const Dims three{n, n, n};
      const Operator L1 = build_lax_part(p, plus);
      return rel_residual(build_lax_part(p, plus, 2), embed_at(L1, {0, 2}, three) * embed_at(L1, {0, 1}, three));
    });
  rep.timed("algebra.lax_hat.lower_triangular", tol, [&] {
    const Operator H = std::exp(cplx(15.0)) * build_lax_hat(p, 15.0, Gauge::homogeneous);
    double upper = 0.0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) upper += std::pow(first_factor_block(H, i, j).norm(), 2);
    return std::sqrt(upper) / H.norm();
  });

  // Block forms on the charge site against the permuted coproduct.
  {
    const cplx l = sampler.lambda(p);
    for (int i = 1; i <= n; ++i)
      for (auto [form, tag] : {std::pair{BlockForm::chevalley_e, "e"}, std::pair{BlockForm::chevalley_f, "f"},
                               std::pair{BlockForm::cartan_eps, "k"}}) {
        rep.timed("algebra.block_form." + std::string(tag) + std::to_string(i), tol, [&, form = form] {
          const GenKind k = form == BlockForm::chevalley_e   ? GenKind::E
                            : form == BlockForm::chevalley_f ? GenKind::F
                                                                 : GenKind::Keps;
          std::vector<cplx> lams(N + 1, 0.0);
          lams[N] = l;
          Operator ref = last_slot_to_front(coproduct_sites(p, {k, i}, lams));
          if (k == GenKind::Keps) ref = ref * ref;
          const Operator blk = block_rep(p, form, i, N, l);
          double r = rel_residual(blk, ref);
          if (k != GenKind::Keps)
            r = std::max(r, rel_residual(blk, coproduct_rep(p, {k, i}, N + 1, CoproductVariant::delta_prime, l)));
          return r;
        });
      }
  }
  return rep;
}

}  // namespace uqbc
