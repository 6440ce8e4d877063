#include "uqbc/spectrum.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

namespace uqbc {

SpectrumReport compute_spectrum(const Operator& H, double cluster_tol) {
  if (H.side() > kMaxSpectrumDim)
    throw std::invalid_argument("spectrum dimension " + std::to_string(H.side()) + " exceeds " +
                                std::to_string(kMaxSpectrumDim));
  SpectrumReport r;
  r.cluster_tol = cluster_tol;
  r.hermitian_defect = (H.mat() - H.mat().adjoint()).norm() / std::max(H.norm(), kNormFloor);
  Eigen::ComplexEigenSolver<Mat> es(H.mat(), false);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver did not converge");
  const auto& ev = es.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  // Greedy grouping against running cluster means, absolute tolerance.
  std::vector<cplx> sums;
  for (cplx e : r.eigenvalues) {
    bool placed = false;
    for (size_t k = 0; k < r.clusters.size(); ++k)
      if (std::abs(e - r.clusters[k].value) <= cluster_tol) {
        sums[k] += e;
        r.clusters[k].multiplicity += 1;
        r.clusters[k].value = sums[k] / double(r.clusters[k].multiplicity);
        placed = true;
        break;
      }
    if (!placed) {
      r.clusters.push_back({e, 1});
      sums.push_back(e);
    }
  }
  return r;
}

}  // namespace uqbc
