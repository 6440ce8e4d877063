// Bulk asymptotic charges, boundary non-local charges, their evaluation and coproduct forms,
// and the symmetry checks of the open chain.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "uqbc/quantum_algebra.hpp"
#include "uqbc/spin_chain.hpp"

namespace uqbc {

using Index2 = std::pair<int, int>;

enum class ChargeSign { plus, minus };

// All operators act on (C^n)^N; the sites carry the listed evaluation parameters.
struct BulkCharges {
  ChargeSign sign = ChargeSign::plus;
  int N = 1;
  std::map<Index2, Operator> T;     // plus: t_ij (i<=j); minus: t-_ij (i>=j)
  std::map<Index2, Operator> That;  // plus only: that_ij (i>=j)
  std::vector<Operator> D;          // D_ii = t_ii^{+-1}, index i-1
  std::map<Index2, Operator> B;     // plus: (i,i+1) and corner (n,1); minus: (i+1,i) and corner (1,n)
  std::map<Index2, Operator> Bhat;  // plus only: (i+1,i) and corner (1,n)
};

BulkCharges build_bulk_charges(const ModelParams& p, int N, ChargeSign sign);
BulkCharges build_bulk_charges(const ModelParams& p, const std::vector<cplx>& site_lambdas, ChargeSign sign);

// Entries (1,1), (1,i), (i,1) for 2<=i<=n and (k,l) for 2<=k,l<=n-1, plus the affine charge.
struct ChargeSet {
  ModelParams params;
  int N = 1;
  std::map<Index2, Operator> entries;
  Operator affine;
};

ChargeSet build_boundary_charges(const ModelParams& p, int N);
ChargeSet build_boundary_charges(const ModelParams& p, const std::vector<cplx>& site_lambdas);
Operator build_affine_charge(const ModelParams& p, int N);

// Label of an abstract charge: an entry (i,j) or the affine charge.
struct QLabel {
  int i = 1, j = 1;
  bool affine = false;
  static QLabel nn() { return {0, 0, true}; }
};
std::string to_string(const QLabel& q);

// Closed-form single-site image pi_lambda(Q).
Operator eval_Q_rep(const ModelParams& p, const QLabel& which, cplx lambda);

// Delta^{(L)}(Q) by the site-by-site recursion, sites in pi_0. Supports (1,i), (i,1), (1,1), affine.
Operator coproduct_charges(const ModelParams& p, int L, const QLabel& which);
// Same recursion with site k in pi_{site_lambdas[k]}.
Operator coproduct_charges(const ModelParams& p, const std::vector<cplx>& site_lambdas, const QLabel& which);
// (pi_lambda (x) pi_0^N) Delta'^{(N+1)}(Q), charge site first.
Operator charge_delta_prime(const ModelParams& p, int N, const QLabel& which, cplx lambda);
// Block form of the same object built from N-site charges: (1,1), (1,2), (2,1) at n = 3, affine any n.
Operator block_charge_rep(const ModelParams& p, const QLabel& which, int N, cplx lambda);

// Auxiliary block (i,j) of the double-row operator.
inline Operator aux_block(const Operator& D, int i, int j) { return first_factor_block(D, i, j); }

VerificationReport verify_symmetry_suite(const ChainSpec& spec, int samples, double tol, Sampler& sampler);

}  // namespace uqbc
