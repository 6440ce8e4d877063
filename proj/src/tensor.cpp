#include "uqbc/tensor.hpp"

#include <algorithm>
#include <numeric>

#include <unsupported/Eigen/KroneckerProduct>

namespace uqbc {

namespace {

std::vector<int> strides_of(const Dims& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * dims[k + 1];
  return s;
}

void require_same_side(const Operator& a, const Operator& b, const char* what) {
  if (a.side() != b.side())
    throw DimensionError(std::string(what) + ": side " + std::to_string(a.side()) + " vs " +
                         std::to_string(b.side()));
}

}  // namespace

int total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

Operator::Operator(Mat m, Dims dims) : m_(std::move(m)), dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("operator needs at least one factor");
  for (int d : dims_)
    if (d < 1) throw DimensionError("local dimension must be >= 1");
  if (m_.rows() != m_.cols()) throw DimensionError("operator matrix must be square");
  if (m_.rows() != total_dim(dims_))
    throw DimensionError("matrix side " + std::to_string(m_.rows()) +
                         " does not match product of dims " + std::to_string(total_dim(dims_)));
}

Operator::Operator(Mat m) : Operator(m, Dims{static_cast<int>(m.rows())}) {}

Operator Operator::identity(const Dims& dims) {
  int d = total_dim(dims);
  return {Mat::Identity(d, d), dims};
}

Operator Operator::zero(const Dims& dims) {
  int d = total_dim(dims);
  return {Mat::Zero(d, d), dims};
}

Operator Operator::inverse() const {
  Eigen::PartialPivLU<Mat> lu(m_);
  // Cheap reciprocal-condition estimate in the 1-norm.
  double rc = lu.rcond();
  const auto piv = lu.matrixLU().diagonal().cwiseAbs();
  if (!(piv.minCoeff() > 1e-14 * piv.maxCoeff())) rc = 0.0;
  if (!(rc > 1e-12)) throw SingularError("matrix is numerically singular (rcond " + std::to_string(rc) + ")");
  return {lu.inverse(), dims_};
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_side(a, b, "product");
  return {a.mat() * b.mat(), a.dims()};
}
Operator operator+(const Operator& a, const Operator& b) {
  require_same_side(a, b, "sum");
  return {a.mat() + b.mat(), a.dims()};
}
Operator operator-(const Operator& a, const Operator& b) {
  require_same_side(a, b, "difference");
  return {a.mat() - b.mat(), a.dims()};
}
Operator operator-(const Operator& a) { return {-a.mat(), a.dims()}; }
Operator operator*(cplx s, const Operator& a) { return {s * a.mat(), a.dims()}; }
Operator& operator+=(Operator& a, const Operator& b) {
  a = a + b;
  return a;
}

Operator unit(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) throw std::out_of_range("unit matrix index out of range");
  Mat m = Mat::Zero(n, n);
  m(i - 1, j - 1) = 1.0;
  return Operator(m);
}

Operator diag(const std::vector<cplx>& entries) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(entries.size()));
  for (size_t k = 0; k < entries.size(); ++k) v(static_cast<Eigen::Index>(k)) = entries[k];
  return Operator(Mat(v.asDiagonal()));
}

Operator kron(const Operator& a, const Operator& b) {
  Dims d = a.dims();
  d.insert(d.end(), b.dims().begin(), b.dims().end());
  Mat m = Eigen::kroneckerProduct(a.mat(), b.mat()).eval();
  return {std::move(m), std::move(d)};
}

Operator kron_power(const Operator& a, int times) {
  if (times < 1) throw DimensionError("kron_power needs at least one factor");
  Operator r = a;
  for (int k = 1; k < times; ++k) r = kron(r, a);
  return r;
}

Operator embed_at(const Operator& op, const std::vector<int>& slots, const Dims& space) {
  const int nslots = static_cast<int>(space.size());
  if (slots.size() != op.dims().size())
    throw DimensionError("embed_at: slot count does not match operator factors");
  for (size_t a = 0; a < slots.size(); ++a) {
    if (slots[a] < 0 || slots[a] >= nslots) throw std::out_of_range("embed_at: slot out of range");
    if (space[slots[a]] != op.dims()[a]) throw DimensionError("embed_at: dimension mismatch at slot");
    for (size_t b = 0; b < a; ++b)
      if (slots[a] == slots[b]) throw DimensionError("embed_at: repeated slot");
  }
  const auto stride = strides_of(space);
  const auto ostride = strides_of(op.dims());
  const int D = total_dim(space);
  const int dop = static_cast<int>(op.side());

  // Column offset contributed by each op column index.
  std::vector<int> col_offset(dop, 0);
  for (int c = 0; c < dop; ++c)
    for (size_t a = 0; a < slots.size(); ++a)
      col_offset[c] += ((c / ostride[a]) % op.dims()[a]) * stride[slots[a]];

  Mat out = Mat::Zero(D, D);
  for (int r = 0; r < D; ++r) {
    int orow = 0, base = r;
    for (size_t a = 0; a < slots.size(); ++a) {
      int digit = (r / stride[slots[a]]) % space[slots[a]];
      orow += digit * ostride[a];
      base -= digit * stride[slots[a]];
    }
    for (int c = 0; c < dop; ++c) {
      cplx v = op.mat()(orow, c);
      if (v != cplx{}) out(r, base + col_offset[c]) = v;
    }
  }
  return {std::move(out), space};
}

Operator permute_slots(const Operator& a, const std::vector<int>& order) {
  const Dims& in = a.dims();
  const int k = static_cast<int>(in.size());
  if (static_cast<int>(order.size()) != k) throw DimensionError("permute_slots: order size mismatch");
  std::vector<int> seen(k, 0);
  for (int s : order) {
    if (s < 0 || s >= k || seen[s]++) throw DimensionError("permute_slots: not a permutation");
  }
  Dims out_dims(k);
  for (int j = 0; j < k; ++j) out_dims[j] = in[order[j]];
  const auto sin = strides_of(in);
  const auto sout = strides_of(out_dims);
  const int D = total_dim(in);
  // map[x] = index in the output basis of input basis vector x
  std::vector<int> map(D);
  for (int x = 0; x < D; ++x) {
    int y = 0;
    for (int j = 0; j < k; ++j) y += ((x / sin[order[j]]) % in[order[j]]) * sout[j];
    map[x] = y;
  }
  Mat out(D, D);
  for (int c = 0; c < D; ++c)
    for (int r = 0; r < D; ++r) out(map[r], map[c]) = a.mat()(r, c);
  return {std::move(out), std::move(out_dims)};
}

Operator permutation_swap(int d) {
  if (d < 1) throw DimensionError("permutation_swap: d must be >= 1");
  Mat p = Mat::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) p(b * d + a, a * d + b) = 1.0;
  return {std::move(p), Dims{d, d}};
}

Operator partial_trace_first(const Operator& a) {
  if (a.dims().size() < 2) throw DimensionError("partial_trace_first needs at least two factors");
  const int d0 = a.dims()[0];
  const int rest = static_cast<int>(a.side()) / d0;
  Mat out = Mat::Zero(rest, rest);
  for (int k = 0; k < d0; ++k) out += a.mat().block(k * rest, k * rest, rest, rest);
  return {std::move(out), Dims(a.dims().begin() + 1, a.dims().end())};
}

Operator first_factor_block(const Operator& a, int i, int j) {
  if (a.dims().size() < 2) throw DimensionError("first_factor_block needs at least two factors");
  const int d0 = a.dims()[0];
  if (i < 1 || i > d0 || j < 1 || j > d0) throw std::out_of_range("first_factor_block: index out of range");
  const int rest = static_cast<int>(a.side()) / d0;
  return {a.mat().block((i - 1) * rest, (j - 1) * rest, rest, rest),
          Dims(a.dims().begin() + 1, a.dims().end())};
}

Operator partial_transpose(const Operator& a, int slot) {
  const Dims& dims = a.dims();
  if (slot < 0 || slot >= static_cast<int>(dims.size()))
    throw std::out_of_range("partial_transpose: slot out of range");
  const int st = strides_of(dims)[slot];
  const int d = dims[slot];
  const int D = static_cast<int>(a.side());
  Mat out(D, D);
  for (int c = 0; c < D; ++c) {
    int dc = (c / st) % d;
    for (int r = 0; r < D; ++r) {
      int dr = (r / st) % d;
      out(r - dr * st + dc * st, c - dc * st + dr * st) = a.mat()(r, c);
    }
  }
  return {std::move(out), dims};
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_side(a, b, "commutator");
  return {a.mat() * b.mat() - b.mat() * a.mat(), a.dims()};
}

ProportionalityResult prop_check(const Operator& a, const Operator& b, double tol) {
  require_same_side(a, b, "prop_check");
  const double nb = b.norm();
  if (nb < kNormFloor) throw std::invalid_argument("prop_check: reference operator is numerically zero");
  const cplx c = (b.mat().array().conjugate() * a.mat().array()).sum() / (nb * nb);
  const double res = (a.mat() - c * b.mat()).norm() / std::max(a.norm(), kNormFloor);
  return {c, res, res <= tol};
}

double rel_residual(const Operator& a, const Operator& b, double scale) {
  require_same_side(a, b, "rel_residual");
  const double den = std::max({a.norm(), b.norm(), scale, kNormFloor});
  return (a.mat() - b.mat()).norm() / den;
}

double commutator_defect(const Operator& a, const Operator& b) {
  return commutator(a, b).norm() / std::max(a.norm() * b.norm(), kNormFloor);
}

}  // namespace uqbc
