#include <gtest/gtest.h>

#include <random>

#include "stablehom/chaincx.hpp"

using namespace stablehom;

namespace {

// 0 -> R --x--> R -> 0 in degrees 1, 0.
Complex two_term(const AlgebraPtr& r) {
  Module rr = regular_module(r);
  return Complex(r, 0, {rr, rr}, {r->left_mult(1)}, true, true);
}

std::vector<Module> pool(const AlgebraPtr& r) {
  Module rr = regular_module(r);
  return {residue_module(r), rr, dual_module(rr), submodule(rr, r->radical())};
}

}  // namespace

TEST(Chaincx, ShiftSigns) {
  auto r2 = truncated_polynomial(Field(2), 2);
  Complex x = two_term(r2);
  Complex s = shift(x, 1);
  EXPECT_EQ(s.lo(), 1);
  EXPECT_EQ(s.hi(), 2);
  EXPECT_EQ(s.d(2), x.d(1));
  EXPECT_EQ(shift(shift(x, 1), -1), x);
  EXPECT_EQ(shift(x, 0), x);
  auto r3 = truncated_polynomial(Field(3), 2);
  Complex y = two_term(r3);
  EXPECT_EQ(shift(y, 1).d(2), y.d(1).scaled(2));
  EXPECT_EQ(shift(y, 2).d(3), y.d(1));
}

TEST(Chaincx, Truncations) {
  auto r = truncated_polynomial(Field(2), 2);
  Complex x = two_term(r);
  EXPECT_EQ(truncate_le(x, x.hi()), x);
  Complex t = truncate_le(x, 0);
  EXPECT_EQ(t.lo(), 0);
  EXPECT_EQ(t.hi(), 0);
  EXPECT_EQ(t.term(0), regular_module(r));
  EXPECT_TRUE(inclusion_le(x, 0).is_chain_map());
  EXPECT_TRUE(projection_ge(x, 1).is_chain_map());
  std::mt19937_64 rng(2);
  Complex z = random_complex(pool(r), -1, 4, 2, rng);
  for (long k = z.lo(); k < z.hi(); ++k) {
    ComplexMap inc{truncate_le(z, k), truncate_le(z, k + 1), truncate_le(z, k).lo(), {}};
    for (long n = z.lo(); n <= k; ++n) inc.components.push_back(Matrix::identity(z.dim(n), z.field()));
    EXPECT_TRUE(inc.is_chain_map());
  }
}

TEST(Chaincx, HomologyOfMultiplicationByX) {
  auto r = truncated_polynomial(Field(2), 2);
  Complex x = two_term(r);
  EXPECT_EQ(homology(x, 0).dim(), 1u);
  EXPECT_EQ(homology(x, 1).dim(), 1u);
  EXPECT_EQ(homology(x, 0), residue_module(r));
  Complex zero_d(r, 0, {residue_module(r), regular_module(r)}, {Matrix(1, 2, r->field())}, true, true);
  EXPECT_EQ(homology(zero_d, 1), regular_module(r));
}

TEST(Chaincx, WindowViolationIsStructured) {
  auto r = truncated_polynomial(Field(2), 2);
  Module rr = regular_module(r);
  Complex open(r, 0, {rr, rr, rr}, {r->left_mult(1), r->left_mult(1)}, true, false);
  EXPECT_EQ(homology(open, 1).dim(), 0u);
  try {
    homology(open, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientWindow);
  }
}

TEST(Chaincx, TensorWithResidueField) {
  auto r = truncated_polynomial(Field(2), 2);
  Complex x = two_term(r);
  Complex t = tensor_complex(x, Complex::concentrated(residue_module(r), 0));
  EXPECT_EQ(t.dim(0), 1u);
  EXPECT_EQ(t.dim(1), 1u);
  EXPECT_TRUE(t.d(1).is_zero());
  EXPECT_EQ(homology(t, 0).dim(), 1u);
  EXPECT_EQ(homology(t, 1).dim(), 1u);
}

TEST(Chaincx, UnitComplexes) {
  for (auto r : {truncated_polynomial(Field(2), 2), radical_square_zero(Field(2), 2), truncated_polynomial(Field(3), 2)}) {
    std::mt19937_64 rng(r->dim() * 31 + r->field().p());
    Complex unit = Complex::concentrated(regular_module(r), 0);
    for (int trial = 0; trial < 10; ++trial) {
      Complex x = random_complex(pool(r), -2, 4, 2, rng);
      EXPECT_FALSE(x.validate().has_value());
      Complex h = hom_complex(unit, x);
      EXPECT_EQ(h, x);
      Complex t = tensor_complex(x, unit);
      ASSERT_EQ(t.lo(), x.lo());
      ASSERT_EQ(t.hi(), x.hi());
      EXPECT_FALSE(t.validate().has_value());
      for (long n = x.lo(); n <= x.hi(); ++n) {
        EXPECT_EQ(t.dim(n), x.dim(n));
        EXPECT_EQ(homology(t, n).dim(), homology(x, n).dim());
      }
    }
  }
}

TEST(Chaincx, ConstructorsSquareToZero) {
  for (auto r : {truncated_polynomial(Field(2), 2), radical_square_zero(Field(2), 2), truncated_polynomial(Field(3), 2)}) {
    std::mt19937_64 rng(7 + r->field().p());
    for (int trial = 0; trial < 10; ++trial) {
      Complex x = random_complex(pool(r), -1, 3, 2, rng);
      Complex y = random_complex(pool(r), 0, 3, 2, rng);
      EXPECT_FALSE(tensor_complex(x, y).validate().has_value());
      EXPECT_FALSE(hom_complex(x, y).validate().has_value());
      EXPECT_FALSE(shift(x, 3).validate().has_value());
      EXPECT_FALSE(dual_complex(x).validate().has_value());
      EXPECT_EQ(bounded_hom_complex(x, y), hom_complex(x, y));
      Complex dx = dual_complex(x);
      for (long n = x.lo(); n <= x.hi(); ++n) EXPECT_EQ(homology(x, n).dim(), homology(dx, -n).dim());
      Complex s = direct_sum(x, x);
      for (long n = x.lo(); n <= x.hi(); ++n) EXPECT_EQ(homology(s, n).dim(), 2 * homology(x, n).dim());
    }
  }
}

TEST(Chaincx, ExtOneOfResidueField) {
  auto r = truncated_polynomial(Field(2), 2);
  Module rr = regular_module(r);
  std::vector<Module> terms(5, rr);
  std::vector<Matrix> diffs(4, r->left_mult(1));
  Complex p(r, 0, terms, diffs, true, false);
  Complex h = hom_complex(p, Complex::concentrated(residue_module(r), 0));
  EXPECT_EQ(h.lo(), -4);
  EXPECT_EQ(h.hi(), 0);
  EXPECT_EQ(homology(h, -1).dim(), 1u);
  EXPECT_EQ(homology(h, 0).dim(), 1u);
  EXPECT_THROW(homology(h, -4), Error);
}

TEST(Chaincx, QuotientComplexes) {
  auto r = radical_square_zero(Field(2), 2);
  std::mt19937_64 rng(9);
  Complex x = random_complex(pool(r), 0, 3, 2, rng);
  std::vector<Subspace> all, none;
  for (long n = x.lo(); n <= x.hi(); ++n) {
    all.push_back(Subspace::full(x.dim(n), x.field()));
    none.push_back(Subspace(x.dim(n), x.field()));
  }
  Complex q0 = quotient_complex(x, all);
  for (long n = x.lo(); n <= x.hi(); ++n) EXPECT_EQ(q0.dim(n), 0u);
  EXPECT_EQ(quotient_complex(x, none), x);
  std::vector<Subspace> bad = none;
  bad[0] = Subspace::span({Vector(x.dim(0), 0)}, x.dim(0), x.field());
  if (x.dim(1) > 0) {
    std::vector<Subspace> not_sub = none;
    Vector v(x.dim(1), 0);
    v[0] = 1;
    not_sub[1] = Subspace::span({v}, x.dim(1), x.field());
    if (!is_subcomplex(x, not_sub)) EXPECT_THROW(quotient_complex(x, not_sub), Error);
  }
}

// (X (x) Y_{<=k}) / (X (x) Y_{<=k-i}) has the expected size in each degree.
TEST(Chaincx, FiltrationQuotientDimensions) {
  auto r = truncated_polynomial(Field(2), 2);
  std::mt19937_64 rng(4);
  Complex x = random_complex(pool(r), 0, 3, 2, rng);
  Complex y = random_complex(pool(r), 0, 4, 2, rng);
  const long k = 3, i = 2;
  TensorComplex big = tensor_complex_full(x, truncate_le(y, k));
  std::vector<Subspace> sub;
  for (long n = big.lo(); n <= big.complex.hi(); ++n) {
    const BlockLayout& lay = big.layout_at(n);
    std::vector<Vector> gens;
    for (std::size_t b = 0; b < lay.index.size(); ++b) {
      long q = n - lay.index[b];
      if (q > k - i) continue;
      for (std::size_t c = 0; c < big.piece(n, b).module.dim(); ++c) {
        Vector v(lay.total, 0);
        v[lay.offset[b] + c] = 1;
        gens.push_back(v);
      }
    }
    sub.push_back(Subspace::span(gens, lay.total, x.field()));
  }
  Complex q = quotient_complex(big.complex, sub);
  for (long n = q.lo(); n <= q.hi(); ++n) {
    std::size_t expect = 0;
    for (long qq = k - i + 1; qq <= k; ++qq)
      if (x.in_window(n - qq) && y.in_window(qq))
        expect += tensor_module(x.term(n - qq), y.term(qq)).module.dim();
    EXPECT_EQ(q.dim(n), expect);
  }
}
