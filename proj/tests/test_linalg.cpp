#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "grpd/linalg.hpp"

using namespace grpd;

namespace {

MatrixQ mat(std::initializer_list<std::initializer_list<long long>> rows) {
  MatrixQ m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (long long v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("rational scalar basics") {
  Rational half(Integer(2), Integer(4));
  CHECK(half == Rational(Integer(1), Integer(2)));
  CHECK(half.num() == 1);
  CHECK(half.den() == 2);
  CHECK(half + half == Rational(1));
  CHECK((half * Rational(4)).is_integer());
  CHECK(Rational(-3).sign() == -1);
  CHECK(Rational(0).is_zero());
  CHECK((Rational(7) / Rational(-14)).str() == "-1/2");
  CHECK(abs(Rational(-5)) == Rational(5));
}

TEST_CASE("prime field scalar basics") {
  Fp a(3, 5), b(4, 5);
  CHECK((a + b).value() == 2);
  CHECK((a * b).value() == 2);
  CHECK((a - b).value() == 4);
  CHECK((Fp(1, 5) / Fp(2, 5)).value() == 3);  // 2 * 3 = 6 = 1 mod 5
  CHECK(a.inverse().value() == 2);
  // Bare literals adopt the modulus of the other operand.
  Fp lit = 1;
  CHECK((a + lit).value() == 4);
  CHECK(Fp(7, 7).is_zero());
  CHECK_THROWS_AS(Fp(1, 6), NotPrimeError);
}

TEST_CASE("primality helpers") {
  CHECK_FALSE(is_prime_u32(0));
  CHECK_FALSE(is_prime_u32(1));
  CHECK(is_prime_u32(2));
  CHECK_FALSE(is_prime_u32(4));
  CHECK(is_prime_u32(97));
  CHECK(primes_above(20, 3) == std::vector<std::uint32_t>{23, 29, 31});
  CHECK(primes_above(2, 2) == std::vector<std::uint32_t>{3, 5});
}

TEST_CASE("kernel of the identity is empty") {
  MatrixQ id = MatrixQ::Identity(3, 3);
  CHECK(kernel_basis(id).cols() == 0);
  CHECK(rank(id) == 3);
}

TEST_CASE("rank of a dependent-row matrix") {
  MatrixQ m = mat({{1, 2}, {2, 4}});
  CHECK(rank(m) == 1);
  MatrixQ k = kernel_basis(m);
  CHECK(k.cols() == 1);
  CHECK(annihilates(m, k));
}

TEST_CASE("kernel over a prime field with canonical normalization") {
  MatrixF m(1, 2);
  m(0, 0) = Fp(1, 5);
  m(0, 1) = Fp(1, 5);
  MatrixF k = kernel_basis(m);
  REQUIRE(k.cols() == 1);
  // Free column 1 carries the 1; the pivot column holds -1 = 4 mod 5.
  // (Equality adopts the nonzero modulus, so literal entries compare fine.)
  CHECK(k(0, 0) == Fp(4, 5));
  CHECK(k(1, 0) == Fp(1, 5));
}

TEST_CASE("rref is idempotent and canonical") {
  MatrixQ m = mat({{2, 4, 6}, {1, 3, 5}, {0, 1, 2}});
  auto red = rref(m);
  auto red2 = rref(red.mat);
  CHECK(red.rank == red2.rank);
  CHECK(red.pivots == red2.pivots);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) CHECK(red.mat(i, j) == red2.mat(i, j));
}

TEST_CASE("solve substitutes back and detects inconsistency") {
  MatrixQ m = mat({{1, 2}, {3, 4}});
  VectorQ b(2);
  b << Rational(5), Rational(6);
  auto x = solve(m, b);
  REQUIRE(x.has_value());
  VectorQ back = m * *x;
  CHECK(back(0) == b(0));
  CHECK(back(1) == b(1));

  MatrixQ singular = mat({{1, 1}, {1, 1}});
  VectorQ bad(2);
  bad << Rational(0), Rational(1);
  CHECK_FALSE(solve(singular, bad).has_value());

  VectorQ wrong(3);
  wrong << Rational(0), Rational(0), Rational(0);
  CHECK_THROWS_AS(solve(m, wrong), DimensionMismatchError);
}

TEST_CASE("column space canonical form is generating-set independent") {
  MatrixQ a = mat({{1, 0}, {2, 1}, {3, 1}});
  // Same span, different generators (second = sum and a scalar multiple).
  MatrixQ b = mat({{1, 2}, {3, 4}, {4, 6}});
  MatrixQ ca = column_space_canonical(a);
  MatrixQ cb = column_space_canonical(b);
  REQUIRE(ca.cols() == cb.cols());
  for (Index i = 0; i < ca.rows(); ++i)
    for (Index j = 0; j < ca.cols(); ++j) CHECK(ca(i, j) == cb(i, j));
}

TEST_CASE("intersection of two planes in Q^3 is a line") {
  // x + y + z = 0 spanned vs. z = 0 spanned.
  MatrixQ a = mat({{1, 0}, {0, 1}, {-1, -1}});
  MatrixQ b = mat({{1, 0}, {0, 1}, {0, 0}});
  MatrixQ inter = intersect_column_spaces(a, b);
  REQUIRE(inter.cols() == 1);
  // The line (t, -t, 0), canonically scaled to leading 1.
  CHECK(inter(0, 0) == Rational(1));
  CHECK(inter(1, 0) == Rational(-1));
  CHECK(inter(2, 0) == Rational(0));
}

TEST_CASE("canonical basis coordinates round-trip") {
  MatrixQ span = mat({{1, 1}, {1, 2}, {0, 1}});
  auto cb = CanonicalBasis<Rational>::from_span(span);
  REQUIRE(cb.dim() == 2);
  VectorQ v = span.col(0) * Rational(3) - span.col(1);
  REQUIRE(cb.contains(v));
  VectorQ c = cb.coords(v);
  VectorQ back = cb.cols * c;
  for (Index i = 0; i < v.rows(); ++i) CHECK(back(i) == v(i));

  VectorQ outside(3);
  outside << Rational(1), Rational(0), Rational(1);
  if (!cb.contains(outside)) CHECK_THROWS_AS(cb.coords(outside), DimensionMismatchError);
}

TEST_CASE("incremental kernel agrees with the dense kernel") {
  // A deterministic sparse system in 7 unknowns.
  MatrixQ m = MatrixQ::Zero(5, 7);
  int vals[5][7] = {{1, 0, -1, 0, 2, 0, 0},
                    {0, 1, 1, 0, 0, -3, 0},
                    {1, 1, 0, 0, 2, -3, 0},   // row0 + row1
                    {0, 0, 0, 5, 0, 0, -5},
                    {2, 0, -2, 5, 4, 0, -5}}; // 2*row0 + row3
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 7; ++j) m(i, j) = Rational(vals[i][j]);

  IncrementalKernel<Rational> acc(7);
  int added = 0;
  for (Index i = 0; i < 5; ++i) {
    IncrementalKernel<Rational>::Row row;
    for (Index j = 0; j < 7; ++j)
      if (!(m(i, j) == Rational(0))) row.emplace_back(j, m(i, j));
    if (acc.add_row(std::move(row))) ++added;
  }
  CHECK(added == 3);  // two rows are linear combinations
  CHECK(acc.rank() == rank(m));

  MatrixQ dense = kernel_basis(m);
  MatrixQ inc = acc.kernel();
  REQUIRE(inc.cols() == dense.cols());
  for (Index i = 0; i < dense.rows(); ++i)
    for (Index j = 0; j < dense.cols(); ++j) CHECK(inc(i, j) == dense(i, j));
  CHECK(annihilates(m, inc));
}

TEST_CASE("incremental kernel over a prime field") {
  MatrixF m(2, 4);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 4; ++j) m(i, j) = Fp(0, 7);
  m(0, 0) = Fp(2, 7);
  m(0, 2) = Fp(1, 7);
  m(1, 1) = Fp(3, 7);
  m(1, 3) = Fp(4, 7);

  IncrementalKernel<Fp> acc(4);
  acc.add_dense_row(m.row(0).transpose());
  acc.add_dense_row(m.row(1).transpose());
  MatrixF dense = kernel_basis(m);
  MatrixF inc = acc.kernel();
  REQUIRE(inc.cols() == dense.cols());
  for (Index i = 0; i < dense.rows(); ++i)
    for (Index j = 0; j < dense.cols(); ++j) CHECK(inc(i, j) == dense(i, j));
  CHECK(annihilates(m, inc));
}

TEST_CASE("rank over Q matches rank of a good mod-p reduction") {
  MatrixQ m = mat({{2, 4, 1}, {1, 2, 3}, {3, 6, 4}});
  MatrixF f(3, 3);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) f(i, j) = Fp(m(i, j).num().convert_to<long long>(), 101);
  CHECK(rank(m) == rank(f));
}
