#include "doctest.h"
#include "optuple/operator_tuple.hpp"
#include "optuple/rng.hpp"

using namespace optuple;

namespace {

Matrix mat2(cxd a, cxd b, cxd c, cxd d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix jordan2() { return mat2(0, 1, 0, 0); }

Matrix diag2(cxd a, cxd b) { return mat2(a, 0, 0, b); }

Matrix random_mat(int n, StableRng& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.complex_gaussian();
  return m;
}

}  // namespace

TEST_CASE("adjoint_tuple conjugate-transposes and is an involution") {
  const OperatorTuple t({jordan2()});
  const OperatorTuple a = adjoint_tuple(t);
  CHECK(a.mat(0) == mat2(0, 0, 1, 0));

  const OperatorTuple sa({diag2(1, 2), diag2(3, 4)});
  const OperatorTuple saa = adjoint_tuple(sa);
  CHECK(saa.mat(0) == sa.mat(0));
  CHECK(saa.mat(1) == sa.mat(1));

  const OperatorTuple c({mat2(0, cxd(0, 1), 0, 0)});
  CHECK(adjoint_tuple(c).mat(0) == mat2(0, 0, cxd(0, -1), 0));

  // involution is exact
  const OperatorTuple twice = adjoint_tuple(adjoint_tuple(t));
  CHECK(twice.mat(0) == t.mat(0));

  // adjoint preserves the Frobenius norm
  StableRng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix m = random_mat(4, rng);
    CHECK(m.norm() == doctest::Approx(m.adjoint().norm()).epsilon(1e-14));
  }
}

TEST_CASE("is_commuting verdicts and residuals") {
  const auto diag = is_commuting(OperatorTuple({diag2(1, 2), diag2(3, 4)}));
  CHECK(diag.commuting);
  CHECK(diag.residual == 0.0);

  // both products equal [[2,5],[0,2]]
  const auto tri = is_commuting(OperatorTuple({mat2(1, 1, 0, 1), mat2(2, 3, 0, 2)}));
  CHECK(tri.commuting);

  const auto nil = is_commuting(OperatorTuple({jordan2(), mat2(0, 0, 1, 0)}));
  CHECK_FALSE(nil.commuting);
  CHECK(nil.residual == doctest::Approx(std::sqrt(2.0)));  // commutator diag(1,-1)
}

TEST_CASE("circ_product ordering and errors") {
  const Matrix a = mat2(1, 2, 3, 4);
  const Matrix b = mat2(0, 1, 1, 0);
  const Matrix c = diag2(2, 5);

  // m = 1: (AB, AC)
  const OperatorTuple ts = circ_product(OperatorTuple({a}), OperatorTuple({b, c}));
  REQUIRE(ts.d() == 2);
  CHECK(ts.mat(0) == a * b);
  CHECK(ts.mat(1) == a * c);

  // identity left factor
  const OperatorTuple id_s =
      circ_product(OperatorTuple({Matrix::Identity(2, 2)}), OperatorTuple({b, c}));
  CHECK(id_s.mat(0) == b);
  CHECK(id_s.mat(1) == c);

  const OperatorTuple single =
      circ_product(OperatorTuple({jordan2()}), OperatorTuple({diag2(1, 2)}));
  CHECK(single.mat(0) == mat2(0, 2, 0, 0));

  CHECK_THROWS_AS(circ_product(OperatorTuple({a}), OperatorTuple({Matrix::Identity(3, 3)})),
                  std::invalid_argument);
}

TEST_CASE("circ_product associativity is exact index bookkeeping") {
  // integer entries make the products bit-exact
  const OperatorTuple t({mat2(1, 2, 0, 1), mat2(0, 1, 1, 0)});
  const OperatorTuple s({mat2(2, 0, 1, 1)});
  const OperatorTuple r({mat2(1, 1, 0, 2), mat2(3, 0, 0, 1)});
  const OperatorTuple lhs = circ_product(circ_product(t, s), r);
  const OperatorTuple rhs = circ_product(t, circ_product(s, r));
  REQUIRE(lhs.d() == rhs.d());
  for (std::size_t k = 0; k < lhs.d(); ++k) CHECK(lhs.mat(k) == rhs.mat(k));
}

TEST_CASE("pointwise_product") {
  const OperatorTuple t({diag2(1, 2), diag2(3, 4)});
  const OperatorTuple ident({Matrix::Identity(2, 2), Matrix::Identity(2, 2)});
  const OperatorTuple ti = pointwise_product(t, ident);
  CHECK(ti.mat(0) == t.mat(0));
  CHECK(ti.mat(1) == t.mat(1));

  const OperatorTuple s({diag2(5, 6), diag2(7, 8)});
  const OperatorTuple prod = pointwise_product(t, s);
  CHECK(prod.mat(0) == diag2(5, 12));
  CHECK(prod.mat(1) == diag2(21, 32));

  const OperatorTuple nil({jordan2()});
  CHECK(pointwise_product(nil, nil).mat(0) == Matrix::Zero(2, 2));

  CHECK_THROWS_AS(pointwise_product(t, OperatorTuple({diag2(1, 1)})), std::invalid_argument);
}

TEST_CASE("power_circ definition, cap, and additivity") {
  // d = 1: plain matrix powers
  const OperatorTuple a({mat2(1, 1, 0, 1)});
  const OperatorTuple a3 = power_circ(a, 3);
  REQUIRE(a3.d() == 1);
  CHECK(a3.mat(0) == mat2(1, 3, 0, 1));

  // d = 2, n = 2: (T1T1, T1T2, T2T1, T2T2)
  const OperatorTuple t({mat2(1, 2, 0, 1), mat2(0, 1, 1, 0)});
  const OperatorTuple t2 = power_circ(t, 2);
  REQUIRE(t2.d() == 4);
  CHECK(t2.mat(0) == t.mat(0) * t.mat(0));
  CHECK(t2.mat(1) == t.mat(0) * t.mat(1));
  CHECK(t2.mat(2) == t.mat(1) * t.mat(0));
  CHECK(t2.mat(3) == t.mat(1) * t.mat(1));

  // the nilpotent square is the zero tuple
  const OperatorTuple j2 = power_circ(OperatorTuple({jordan2()}), 2);
  CHECK(j2.mat(0) == Matrix::Zero(2, 2));

  CHECK_THROWS_AS(power_circ(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(power_circ(t, 13), std::invalid_argument);  // 2^13 over the cap

  // T^(n+m) = T^n o T^m entrywise
  const OperatorTuple lhs = power_circ(t, 3);
  const OperatorTuple rhs = circ_product(power_circ(t, 1), power_circ(t, 2));
  REQUIRE(lhs.d() == rhs.d());
  for (std::size_t k = 0; k < lhs.d(); ++k) CHECK(lhs.mat(k) == rhs.mat(k));
}

TEST_CASE("power_pointwise") {
  const OperatorTuple t({diag2(1, 2), diag2(3, 4)});
  const OperatorTuple t1 = power_pointwise(t, 1);
  CHECK(t1.mat(0) == t.mat(0));

  const OperatorTuple t2 = power_pointwise(t, 2);
  CHECK(t2.mat(0) == diag2(1, 4));
  CHECK(t2.mat(1) == diag2(9, 16));

  CHECK_THROWS_AS(power_pointwise(t, 0), std::invalid_argument);

  // zero cross products: T^(2) entries are the nonzero entries of T^2
  Matrix b1 = Matrix::Zero(4, 4);
  b1(0, 1) = 1.0;
  Matrix b2 = Matrix::Zero(4, 4);
  b2(2, 3) = 1.0;
  const OperatorTuple cross({b1, b2});
  const OperatorTuple pw = power_pointwise(cross, 2);
  const OperatorTuple pc = power_circ(cross, 2);
  CHECK(pc.mat(1) == Matrix::Zero(4, 4));  // T1T2
  CHECK(pc.mat(2) == Matrix::Zero(4, 4));  // T2T1
  CHECK(pc.mat(0) == pw.mat(0));
  CHECK(pc.mat(3) == pw.mat(1));
}

TEST_CASE("column_kernel") {
  const SubspaceBasis full = column_kernel(OperatorTuple({Matrix::Zero(2, 2), Matrix::Zero(2, 2)}));
  CHECK(full.m() == 2);

  const SubspaceBasis trivial = column_kernel(OperatorTuple({diag2(0, 1), diag2(1, 0)}));
  CHECK(trivial.m() == 0);

  const SubspaceBasis j = column_kernel(OperatorTuple({jordan2()}));
  REQUIRE(j.m() == 1);
  CHECK(std::abs(j.cols(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(j.cols(1, 0)) == doctest::Approx(0.0));

  // every kernel vector is annihilated within the rank threshold
  StableRng rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix m = random_mat(5, rng);
    m.col(0).setZero();
    m.col(3).setZero();
    const OperatorTuple t({m, m * m});
    const SubspaceBasis ker = column_kernel(t);
    CHECK(ker.m() >= 2);
    for (Eigen::Index c = 0; c < ker.m(); ++c)
      for (std::size_t k = 0; k < t.d(); ++k)
        CHECK((t.mat(k) * ker.cols.col(c)).norm() < 1e-10 * std::max(1.0, t.max_norm()));
  }
}

TEST_CASE("OperatorTuple validates shape invariants") {
  CHECK_THROWS_AS(OperatorTuple({}), std::invalid_argument);
  CHECK_THROWS_AS(OperatorTuple({Matrix::Identity(2, 2), Matrix::Identity(3, 3)}),
                  std::invalid_argument);
  const OperatorTuple t({diag2(1, 2), diag2(3, 4)});
  CHECK(t.commuting() == Commuting::yes);
  CHECK(OperatorTuple({jordan2(), mat2(0, 0, 1, 0)}).commuting() == Commuting::no);
}
