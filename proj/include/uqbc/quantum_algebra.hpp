// Evaluation representations of U_q(gl_n) affine, L-fold coproducts, the E_ij / t families,
// Lax operators and the block forms of the charge-site coproduct.
#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "uqbc/params.hpp"
#include "uqbc/report.hpp"

namespace uqbc {

// E, F: Chevalley e_i, f_i (i = n is affine). Keps: q^{eps_i/2}. Hcartan: q^{h_i/2}, h_n = eps_n - eps_1.
enum class GenKind { E, F, Keps, Hcartan };

struct GeneratorLabel {
  GenKind kind = GenKind::E;
  int index = 1;
  bool inverse = false;  // only meaningful for the Cartan kinds
};

enum class TFamily { t, t_minus, t_hat, t_hat_minus, t0_n1, t0hat_1n, t0_minus_1n, t0hat_minus_n1 };

struct TElementLabel {
  TFamily family = TFamily::t;
  int i = 1, j = 1;  // ignored for the affine families
};

enum class CoproductVariant { delta, delta_prime };

void validate_label(const ModelParams& p, const GeneratorLabel& g);
void validate_label(const ModelParams& p, const TElementLabel& t);

// pi_lambda (homogeneous) or V(l) pi_lambda V(-l) (principal).
Operator eval_generator(const ModelParams& p, const GeneratorLabel& g, cplx lambda, Gauge gauge = Gauge::homogeneous);

// Image of Delta^{(L)}(x) (or Delta'^{(L)}) on the sites; site k carries pi_{lambdas[k]}.
Operator coproduct_sites(const ModelParams& p, const GeneratorLabel& g, const std::vector<cplx>& lambdas,
                         CoproductVariant variant = CoproductVariant::delta, Gauge gauge = Gauge::homogeneous);
// First site uses pi_lambda when first_site_lambda is given, the others pi_0.
Operator coproduct_rep(const ModelParams& p, const GeneratorLabel& g, int L, CoproductVariant variant,
                       std::optional<cplx> first_site_lambda = std::nullopt, Gauge gauge = Gauge::homogeneous);

// q^{power * eps_i} on every site.
Operator cartan_eps(const ModelParams& p, int i, double power, int L);

// Elements of U_q(gl_n) affine pushed through Delta^{(L)} into the given site representations.
// Results of the E_ij recursion are memoized per instance.
class AlgebraRealization {
 public:
  AlgebraRealization(const ModelParams& p, std::vector<cplx> site_lambdas);

  int sites() const { return static_cast<int>(lambdas_.size()); }
  const ModelParams& params() const { return p_; }

  Operator generator(GenKind kind, int i, bool inverse = false) const;
  Operator eps(int i, double power) const { return cartan_eps(p_, i, power, sites()); }
  // E_ij (hat = false) or its hatted partner, i != j, built by the averaged recursion.
  const Operator& E(int i, int j, bool hat = false);
  Operator t(const TElementLabel& label);
  Operator t(TFamily f, int i = 0, int j = 0) { return t(TElementLabel{f, i, j}); }

 private:
  ModelParams p_;
  std::vector<cplx> lambdas_;
  std::map<std::tuple<int, int, bool>, Operator> memo_;
};

// Single recursion step with one fixed intermediate k.
Operator recursion_single_k(AlgebraRealization& alg, int i, int k, int j, bool hat = false);

Operator t_element_rep(const ModelParams& p, const TElementLabel& label, int L,
                       std::optional<cplx> lambda_first = std::nullopt);

// Delta' from Delta by moving the last tensor factor to the front.
Operator last_slot_to_front(const Operator& a);

// Lax operator on C^n (aux) (x) (C^n)^{quantum_sites}, quantum sites in pi_0.
Operator build_lax(const ModelParams& p, cplx lambda, Gauge gauge, int quantum_sites = 1);
// Homogeneous triangular parts: plus -> sum_{i<=j} e_ij (x) t_ij, minus -> sum_{i>=j} e_ij (x) t-_ij.
Operator build_lax_part(const ModelParams& p, bool plus, int quantum_sites = 1);
// L(-lambda)^{-1}; throws SingularError at degenerate points.
Operator build_lax_hat(const ModelParams& p, cplx lambda, Gauge gauge, int quantum_sites = 1);

enum class BlockForm { chevalley_e, chevalley_f, cartan_eps };
// Block form of (pi_lambda (x) pi_0^{N}) Delta'^{(N+1)}(x) assembled from N-site coproducts.
Operator block_rep(const ModelParams& p, BlockForm which, int index, int N, cplx lambda);

VerificationReport verify_algebra_suite(const ModelParams& p, int samples, double tol, Sampler& sampler);

}  // namespace uqbc
