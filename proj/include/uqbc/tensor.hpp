// Dense complex operators on tensor-product spaces.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace uqbc {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Dims = std::vector<int>;

inline constexpr cplx I_unit{0.0, 1.0};
inline constexpr double kNormFloor = 1e-300;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Square complex matrix together with the local dimensions of its factors.
// The first factor is the slowest index.
class Operator {
 public:
  Operator() : Operator(Mat::Zero(1, 1), {1}) {}
  Operator(Mat m, Dims dims);
  explicit Operator(Mat m);  // single factor

  static Operator identity(const Dims& dims);
  static Operator zero(const Dims& dims);

  const Mat& mat() const { return m_; }
  const Dims& dims() const { return dims_; }
  Eigen::Index side() const { return m_.rows(); }
  cplx operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }
  double norm() const { return m_.norm(); }
  cplx trace() const { return m_.trace(); }

  Operator transpose() const { return {m_.transpose(), dims_}; }
  Operator adjoint() const { return {m_.adjoint(), dims_}; }
  // Throws SingularError when the reciprocal condition estimate is below 1e-12.
  Operator inverse() const;
  Operator with_dims(Dims dims) const { return {m_, std::move(dims)}; }

 private:
  Mat m_;
  Dims dims_;
};

class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator-(const Operator& a);
Operator operator*(cplx s, const Operator& a);
inline Operator operator*(const Operator& a, cplx s) { return s * a; }
inline Operator operator/(const Operator& a, cplx s) { return (1.0 / s) * a; }
Operator& operator+=(Operator& a, const Operator& b);

int total_dim(const Dims& dims);

// ê_ij on C^n, 1-based labels.
Operator unit(int n, int i, int j);
Operator diag(const std::vector<cplx>& entries);

Operator kron(const Operator& a, const Operator& b);
Operator kron_power(const Operator& a, int times);

// Acts as op on the listed slots (0-based, any order) of `space`, identity elsewhere.
Operator embed_at(const Operator& op, const std::vector<int>& slots, const Dims& space);

// Reorders tensor factors: factor k of the result is factor order[k] of a.
Operator permute_slots(const Operator& a, const std::vector<int>& order);

Operator permutation_swap(int d);
Operator partial_trace_first(const Operator& a);
Operator partial_transpose(const Operator& a, int slot);

// Block (i,j) of the first factor, 1-based; the result lives on the remaining factors.
Operator first_factor_block(const Operator& a, int i, int j);

Operator commutator(const Operator& a, const Operator& b);

struct ProportionalityResult {
  cplx scalar;
  double residual;
  bool pass;
};

ProportionalityResult prop_check(const Operator& a, const Operator& b, double tol);

// ||a - b|| / max(||a||, ||b||, scale).
double rel_residual(const Operator& a, const Operator& b, double scale = 0.0);
// ||[a,b]|| / (||a|| ||b||).
double commutator_defect(const Operator& a, const Operator& b);

}  // namespace uqbc
