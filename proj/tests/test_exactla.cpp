#include <gtest/gtest.h>

#include <random>

#include "stablehom/exactla.hpp"

using namespace stablehom;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Field f, std::mt19937_64& rng) {
  Matrix m(r, c, f);
  std::uniform_int_distribution<Scalar> d(0, f.p() - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// All vectors of F_2^n, as bit masks.
Vector unpack(std::uint64_t bits, std::size_t n) {
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (bits >> i) & 1;
  return v;
}

}  // namespace

TEST(Exactla, FieldArithmetic) {
  Field f(7);
  EXPECT_EQ(f.mul(3, 5), 1u);
  EXPECT_EQ(f.inv(3), 5u);
  EXPECT_EQ(f.neg(0), 0u);
  EXPECT_EQ(f.sign(3), 6u);
  EXPECT_EQ(Field(2).sign(1), 1u);
  EXPECT_THROW(Field(6), Error);
}

TEST(Exactla, RrefOfRepeatedRow) {
  Field f(2);
  Matrix a = Matrix::from_rows({{1, 1}, {1, 1}}, f);
  EXPECT_EQ(rref(a), Matrix::from_rows({{1, 1}, {0, 0}}, f));
  EXPECT_EQ(rank(a), 1u);
}

TEST(Exactla, KernelAndSolveOfNilpotent) {
  Field f(2);
  Matrix a = Matrix::from_rows({{0, 1}, {0, 0}}, f);
  Subspace k = kernel(a);
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_EQ(k.vec(0), (Vector{1, 0}));
  auto x = solve(a, Vector{1, 0});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(a.apply(*x), (Vector{1, 0}));
  EXPECT_EQ(*x, (Vector{0, 1}));
  EXPECT_FALSE(solve(a, Vector{0, 1}).has_value());
}

// Brute-force enumeration over F_2 for every operation on small shapes.
TEST(Exactla, EnumerationOracleGF2) {
  Field f(2);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    Matrix a = random_matrix(r, c, f, rng);
    std::uint64_t kernel_count = 0;
    std::vector<bool> in_image(1u << r, false);
    for (std::uint64_t bits = 0; bits < (1u << c); ++bits) {
      Vector v = unpack(bits, c);
      Vector img = a.apply(v);
      std::uint64_t ib = 0;
      for (std::size_t i = 0; i < r; ++i) ib |= std::uint64_t(img[i]) << i;
      in_image[ib] = true;
      if (ib == 0) ++kernel_count;
    }
    Subspace k = kernel(a);
    EXPECT_EQ(std::uint64_t(1) << k.dim(), kernel_count);
    for (std::size_t i = 0; i < k.dim(); ++i) EXPECT_TRUE(a.apply(k.vec(i)) == Vector(r, 0));
    std::uint64_t image_count = 0;
    for (std::uint64_t b = 0; b < (1u << r); ++b) {
      Vector rhs = unpack(b, r);
      auto x = solve(a, rhs);
      EXPECT_EQ(x.has_value(), bool(in_image[b]));
      if (x) EXPECT_EQ(a.apply(*x), rhs);
      if (in_image[b]) ++image_count;
      EXPECT_EQ(image(a).contains(rhs), bool(in_image[b]));
    }
    EXPECT_EQ(std::uint64_t(1) << rank(a), image_count);
    EXPECT_EQ(rank(a) + k.dim(), c);
  }
}

TEST(Exactla, GenericPrimeMatchesRankNullity) {
  for (Scalar p : {3u, 5u, 101u, 65521u}) {
    Field f(p);
    std::mt19937_64 rng(p);
    for (int trial = 0; trial < 50; ++trial) {
      std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
      Matrix a = random_matrix(r, c, f, rng);
      if (trial % 3 == 0 && r > 1)
        for (std::size_t j = 0; j < c; ++j) a(r - 1, j) = f.add(a(0, j), f.mul(2 % p, a(r - 2, j)));
      Subspace k = kernel(a);
      EXPECT_EQ(rank(a) + k.dim(), c);
      EXPECT_TRUE((a * k.basis_columns()).is_zero());
      Echelon e = echelon(a);
      EXPECT_EQ(rref(e.reduced), e.reduced);
      Vector x(c);
      for (auto& s : x) s = rng() % p;
      Vector b = a.apply(x);
      auto y = solve(a, b);
      ASSERT_TRUE(y.has_value());
      EXPECT_EQ(a.apply(*y), b);
    }
  }
}

TEST(Exactla, QuotientIntersectInverse) {
  Field f(3);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 6;
    Subspace s = Subspace::span_rows(random_matrix(rng() % (n + 1), n, f, rng));
    Quotient q = quotient_basis(s);
    EXPECT_EQ(q.proj.rows(), n - s.dim());
    EXPECT_EQ(q.proj * q.lift, Matrix::identity(q.proj.rows(), f));
    EXPECT_TRUE((q.proj * s.basis_columns()).is_zero());
    Subspace t = Subspace::span_rows(random_matrix(rng() % (n + 1), n, f, rng));
    Subspace i = intersect(s, t);
    EXPECT_EQ(i.dim() + sum(s, t).dim(), s.dim() + t.dim());
    EXPECT_TRUE(s.contains(i) && t.contains(i));
    Matrix m = random_matrix(n, n, f, rng);
    if (is_invertible(m)) {
      EXPECT_EQ(m * inverse(m), Matrix::identity(n, f));
    } else {
      EXPECT_THROW(inverse(m), Error);
    }
  }
}

TEST(Exactla, KroneckerIndexing) {
  Field f(5);
  Matrix a = Matrix::from_rows({{1, 2}, {3, 4}}, f);
  Matrix b = Matrix::from_rows({{0, 1}, {1, 0}}, f);
  Matrix k = kron(a, b);
  EXPECT_EQ(k(1 * 2 + 0, 0 * 2 + 1), 3u);
  EXPECT_EQ(k(0 * 2 + 1, 1 * 2 + 0), 2u);
}

TEST(Exactla, ShapeErrors) {
  Field f(2);
  EXPECT_THROW(Matrix(2, 3, f) * Matrix(2, 3, f), Error);
  EXPECT_THROW(solve(Matrix(2, 3, f), Vector{1}), Error);
}
