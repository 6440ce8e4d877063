#include "uqbc/params.hpp"

#include <cmath>

namespace uqbc {

std::string to_string(Gauge g) { return g == Gauge::homogeneous ? "homogeneous" : "principal"; }

Gauge gauge_from_string(const std::string& s) {
  if (s == "homogeneous") return Gauge::homogeneous;
  if (s == "principal") return Gauge::principal;
  throw std::invalid_argument("unknown gauge '" + s + "'");
}

cplx boundary_x0(const ModelParams& p) {
  return std::cosh(I_unit * p.mu * p.m) - std::cosh(2.0 * I_unit * p.mu * p.zeta);
}

void validate(const ModelParams& p, bool needs_hamiltonian) {
  if (p.n < 2) throw ParameterError("rank", "rank n must be >= 2 (got " + std::to_string(p.n) + ")");
  if (p.sites < 1) throw ParameterError("sites", "site count must be >= 1");
  if (!std::isfinite(p.mu.real()) || !std::isfinite(p.mu.imag()) || !std::isfinite(p.m.real()) ||
      !std::isfinite(p.m.imag()) || !std::isfinite(p.zeta.real()) || !std::isfinite(p.zeta.imag()))
    throw ParameterError("finite", "parameters must be finite");
  if (std::abs(std::sinh(I_unit * p.mu)) <= 1e-8)
    throw ParameterError("sinh(i mu)", "|sinh(i mu)| must exceed 1e-8 (q = +-1 is excluded)");
  for (int k = 1; k <= 2 * p.n; ++k)
    if (std::abs(std::pow(p.q(), k) - 1.0) <= 1e-6)
      throw ParameterError("root of unity", "q^" + std::to_string(k) + " is within 1e-6 of 1");
  if (needs_hamiltonian && std::abs(boundary_x0(p)) <= 1e-8)
    throw ParameterError("x(0)", "|x(0)| = |cosh(i mu m) - cosh(2 i mu zeta)| must exceed 1e-8");
}

bool is_valid(const ModelParams& p, bool needs_hamiltonian) {
  try {
    validate(p, needs_hamiltonian);
    return true;
  } catch (const ParameterError&) {
    return false;
  }
}

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

cplx Sampler::uniform_box(double re_lo, double re_hi, double im_lo, double im_hi) {
  double re = uniform(re_lo, re_hi);
  double im = uniform(im_lo, im_hi);
  return {re, im};
}

ModelParams Sampler::params(int n, int sites, bool needs_hamiltonian) {
  for (;;) {
    ModelParams p;
    p.n = n;
    p.sites = sites;
    p.mu = uniform_box(0.15, 1.2, -0.1, 0.1);
    p.m = uniform_box(0.3, 2.0, -0.5, 0.5);
    p.zeta = uniform_box(0.3, 2.0, -0.5, 0.5);
    if (is_valid(p, needs_hamiltonian)) return p;
  }
}

cplx Sampler::lambda(const ModelParams& p) {
  for (;;) {
    cplx l = uniform_box(-1.5, 1.5, -0.8, 0.8);
    if (std::abs(l - I_unit * p.mu) > 1e-3 && std::abs(l + I_unit * p.mu) > 1e-3) return l;
  }
}

}  // namespace uqbc
