// Eigenvalues of the open-chain Hamiltonian, grouped into degenerate clusters.
#pragma once

#include <vector>

#include "uqbc/tensor.hpp"

namespace uqbc {

struct Cluster {
  cplx value;
  int multiplicity = 1;
};

struct SpectrumReport {
  std::vector<cplx> eigenvalues;  // sorted by real part, then imaginary part
  std::vector<Cluster> clusters;
  double hermitian_defect = 0.0;  // |H - H^dagger| / |H|
  double cluster_tol = 1e-8;
};

inline constexpr int kMaxSpectrumDim = 4096;

// Throws std::invalid_argument above kMaxSpectrumDim.
SpectrumReport compute_spectrum(const Operator& H, double cluster_tol = 1e-8);

}  // namespace uqbc
