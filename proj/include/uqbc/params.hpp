// Model parameters, gauge choice and the seeded parameter sampler.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "uqbc/tensor.hpp"

namespace uqbc {

enum class Gauge { homogeneous, principal };

std::string to_string(Gauge g);
Gauge gauge_from_string(const std::string& s);

struct ModelParams {
  int n = 3;
  cplx mu{0.41, 0.0};
  cplx m{0.9, 0.2};
  cplx zeta{0.6, 0.0};
  int sites = 2;

  cplx q() const { return std::exp(I_unit * mu); }
  // Q = i e^{i mu m}
  cplx Q() const { return I_unit * std::exp(I_unit * mu * m); }
  // 2 sinh(i mu), appears as w throughout
  cplx w() const { return 2.0 * std::sinh(I_unit * mu); }
  // q raised to a (possibly fractional) power, principal branch of e^{i mu s}
  cplx qpow(double s) const { return std::exp(I_unit * mu * s); }
};

class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string invariant, const std::string& msg)
      : std::invalid_argument(msg), invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

// Boundary value x(0) = cosh(i mu m) - cosh(2 i mu zeta).
cplx boundary_x0(const ModelParams& p);

// Throws ParameterError naming the violated invariant.
void validate(const ModelParams& p, bool needs_hamiltonian = false);
bool is_valid(const ModelParams& p, bool needs_hamiltonian = false);

// Seeded sampler for generic parameter points and spectral parameters.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi);
  cplx uniform_box(double re_lo, double re_hi, double im_lo, double im_hi);

  // mu in [0.15,1.2]+i[-0.1,0.1], m and zeta in [0.3,2]+i[-0.5,0.5]; invalid draws rejected.
  ModelParams params(int n, int sites, bool needs_hamiltonian = false);
  // lambda in [-1.5,1.5]+i[-0.8,0.8], kept 1e-3 away from +-i mu.
  cplx lambda(const ModelParams& p);

 private:
  std::mt19937_64 rng_;
};

}  // namespace uqbc
