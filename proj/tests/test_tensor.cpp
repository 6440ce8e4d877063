#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "uqbc/tensor.hpp"

using namespace uqbc;

namespace {

Mat random_mat(int d, unsigned seed) {
  std::mt19937 g(seed);
  std::normal_distribution<double> nd;
  Mat m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = cplx(nd(g), nd(g));
  return m;
}

double dist(const Mat& a, const Mat& b) { return (a - b).norm(); }

}  // namespace

TEST_CASE("kron on small factors") {
  CHECK(dist(kron(Operator::identity({2}), Operator::identity({2})).mat(), Mat::Identity(4, 4)) == 0.0);

  // e_12 (x) e_21: row |12> = index 1, column |21> = index 2.
  const Operator k = kron(unit(2, 1, 2), unit(2, 2, 1));
  Mat expect = Mat::Zero(4, 4);
  expect(1, 2) = 1.0;
  CHECK(dist(k.mat(), expect) == 0.0);
  CHECK(k.dims() == Dims{2, 2});

  const Operator d = kron(diag({1.0, 2.0}), Operator::identity({2}));
  CHECK(dist(d.mat(), diag({1.0, 1.0, 2.0, 2.0}).mat()) == 0.0);
}

TEST_CASE("kron agrees with entrywise definition") {
  const Operator a(random_mat(3, 1)), b(random_mat(2, 2));
  const Operator k = kron(a, b);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(std::abs(k(2 * i + r, 2 * j + c) - a(i, j) * b(r, c)) < 1e-15);
}

TEST_CASE("embed_at") {
  const Operator x(random_mat(3, 3));
  CHECK(dist(embed_at(x, {0}, {3}).mat(), x.mat()) == 0.0);
  // e_11 on the second of two qubits: I (x) e_11.
  CHECK(dist(embed_at(unit(2, 1, 1), {1}, {2, 2}).mat(), diag({1.0, 0.0, 1.0, 0.0}).mat()) == 0.0);

  // Reversed slot order equals conjugation by the swap.
  const Operator y(random_mat(4, 4), {2, 2});
  const Operator P = permutation_swap(2);
  CHECK(dist(embed_at(y, {1, 0}, {2, 2}).mat(), (P * y * P).mat()) < 1e-14);

  // Non-adjacent slots against an explicit permutation of a kron product.
  const Operator a(random_mat(2, 5)), b(random_mat(3, 6));
  const Operator emb = embed_at(kron(a, b), {0, 2}, {2, 2, 3});
  const Operator ref = kron(kron(a, Operator::identity({2})), b);
  CHECK(dist(emb.mat(), ref.mat()) < 1e-14);
  CHECK_THROWS_AS(embed_at(a, {0}, {3}), DimensionError);
}

TEST_CASE("permutation_swap") {
  const Operator P = permutation_swap(2);
  Mat expect = Mat::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 1.0;
  expect(1, 2) = expect(2, 1) = 1.0;
  CHECK(dist(P.mat(), expect) == 0.0);
  CHECK(dist((P * P).mat(), Mat::Identity(4, 4)) == 0.0);
  Eigen::VectorXcd vw = Eigen::VectorXcd::Zero(4), wv = Eigen::VectorXcd::Zero(4);
  vw(1) = 1.0;  // (1,0) (x) (0,1)
  wv(2) = 1.0;
  CHECK((P.mat() * vw - wv).norm() == 0.0);
  const Operator P3 = permutation_swap(3);
  const Operator a(random_mat(3, 7)), b(random_mat(3, 8));
  CHECK(dist((P3 * kron(a, b) * P3).mat(), kron(b, a).mat()) < 1e-14);
}

TEST_CASE("partial_trace_first") {
  const Operator x(random_mat(3, 9));
  CHECK(dist(partial_trace_first(kron(Operator::identity({2}), x)).mat(), 2.0 * x.mat()) < 1e-14);
  const cplx a(0.3, 1.0), b(-2.0, 0.5);
  CHECK(dist(partial_trace_first(kron(diag({a, b}), Operator::identity({2}))).mat(), (a + b) * Mat::Identity(2, 2)) <
        1e-15);
  // Sum of the two diagonal 2x2 blocks of P is the identity.
  CHECK(dist(partial_trace_first(permutation_swap(2)).mat(), Mat::Identity(2, 2)) == 0.0);
}

TEST_CASE("partial_transpose") {
  const Operator a(random_mat(2, 10)), b(random_mat(3, 11));
  const Operator ab = kron(a, b);
  CHECK(dist(partial_transpose(ab, 0).mat(), kron(a.transpose(), b).mat()) < 1e-15);
  CHECK(dist(partial_transpose(ab, 1).mat(), kron(a, b.transpose()).mat()) < 1e-15);
  const Operator r(random_mat(4, 12), {2, 2});
  CHECK(dist(partial_transpose(partial_transpose(r, 0), 0).mat(), r.mat()) == 0.0);
  CHECK(dist(partial_transpose(partial_transpose(r, 0), 1).mat(), r.mat().transpose()) == 0.0);
}

TEST_CASE("commutator") {
  const Operator a(random_mat(3, 13)), b(random_mat(3, 14));
  CHECK(commutator(a, a).norm() < 1e-14);
  CHECK(commutator(Operator::identity({3}), b).norm() == 0.0);
  CHECK(dist(commutator(unit(2, 1, 2), unit(2, 2, 1)).mat(), diag({1.0, -1.0}).mat()) == 0.0);
  CHECK(commutator_defect(a, b) > 1e-3);
}

TEST_CASE("prop_check") {
  const Operator a(random_mat(3, 15));
  auto r = prop_check(2.0 * a, a, 1e-12);
  CHECK(std::abs(r.scalar - 2.0) < 1e-14);
  CHECK(r.residual < 1e-15);
  CHECK(r.pass);

  // Small perturbation orthogonal to a: residual is its relative size.
  Mat e = random_mat(3, 16);
  const cplx overlap = (a.mat().adjoint() * e).trace() / a.mat().squaredNorm();
  e -= overlap * a.mat();
  e *= 1e-6 / e.norm();
  r = prop_check(a, Operator(a.mat() + e), 1e-3);
  CHECK(r.residual == doctest::Approx(1e-6 / a.norm()).epsilon(1e-3));

  CHECK_FALSE(prop_check(a, Operator(random_mat(3, 17)), 1e-6).pass);
}

TEST_CASE("first_factor_block and permute_slots") {
  const Operator a(random_mat(2, 18)), b(random_mat(3, 19));
  const Operator ab = kron(a, b);
  CHECK(dist(first_factor_block(ab, 2, 1).mat(), (a(1, 0) * b).mat()) < 1e-15);
  const Operator c(random_mat(2, 20));
  const Operator abc = kron(kron(a, b), c);
  CHECK(dist(permute_slots(abc, {2, 0, 1}).mat(), kron(kron(c, a), b).mat()) < 1e-14);
}

TEST_CASE("inverse guards against singular input") {
  CHECK_THROWS_AS(unit(3, 1, 1).inverse(), SingularError);
  const Operator a(random_mat(4, 21));
  CHECK(dist((a * a.inverse()).mat(), Mat::Identity(4, 4)) < 1e-12);
}
