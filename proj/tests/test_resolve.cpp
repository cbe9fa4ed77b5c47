#include <gtest/gtest.h>

#include "stablehom/resolve.hpp"

using namespace stablehom;

namespace {

// M <- F_0 <- F_1 <- ... with M in degree -1.
Complex augmented_free(const Resolution& r) {
  Complex c = r.complex();
  std::vector<Module> terms{r.of};
  std::vector<Matrix> diffs{r.augmentation.matrix};
  for (long n = 0; n <= c.hi(); ++n) {
    terms.push_back(c.term(n));
    if (n > 0) diffs.push_back(c.d(n));
  }
  return Complex(r.of.algebra(), -1, terms, diffs, true, r.exhausted);
}

void expect_resolution_invariants(const Resolution& r) {
  Complex a = augmented_free(r);
  EXPECT_FALSE(a.validate().has_value());
  long top = r.exhausted ? a.hi() : a.hi() - 1;
  EXPECT_TRUE(is_exact_on(a, -1, top));
  Complex c = r.complex();
  for (long n = 1; n <= c.hi(); ++n) {
    Subspace rad = radical_submodule(c.term(n - 1));
    Subspace img = image(c.d(n));
    EXPECT_TRUE(rad.contains(img)) << "non-minimal differential in degree " << n;
  }
  if (r.period) {
    const long s = r.period->start, q = r.period->period;
    for (long n = s + 1; n <= s + 2 * q; ++n) EXPECT_EQ(r.rdiffs[n - 1], r.rdiffs[n + q - 1]);
  }
}

}  // namespace

TEST(Resolve, ResidueFieldOverDualNumbers) {
  auto r = truncated_polynomial(Field(2), 2);
  Resolution res = minimal_free_resolution(residue_module(r), 8);
  ASSERT_EQ(res.betti.size(), 9u);
  for (auto b : res.betti) EXPECT_EQ(b, 1u);
  RMatrix x(r, 1, 1);
  x.set_entry(0, 0, {0, 1});
  for (auto& d : res.rdiffs) EXPECT_EQ(d, x);
  ASSERT_TRUE(res.period.has_value());
  EXPECT_EQ(res.period->start, 0);
  EXPECT_EQ(res.period->period, 1);
  EXPECT_FALSE(res.exhausted);
  expect_resolution_invariants(res);
}

TEST(Resolve, ResidueFieldOverRadicalSquareZero) {
  auto r = radical_square_zero(Field(2), 2);
  Resolution res = minimal_free_resolution(residue_module(r), 6);
  std::vector<std::size_t> expect{1, 2, 4, 8, 16, 32, 64};
  EXPECT_EQ(res.betti, expect);
  EXPECT_FALSE(res.period.has_value());
  expect_resolution_invariants(res);
}

TEST(Resolve, TruncatedCubicAlternates) {
  auto r = truncated_polynomial(Field(2), 3);
  Resolution res = minimal_free_resolution(residue_module(r), 7);
  ASSERT_TRUE(res.period.has_value());
  EXPECT_EQ(res.period->start, 0);
  EXPECT_EQ(res.period->period, 2);
  expect_resolution_invariants(res);
}

TEST(Resolve, OddCharacteristic) {
  auto r = truncated_polynomial(Field(3), 2);
  Resolution res = minimal_free_resolution(residue_module(r), 5);
  ASSERT_TRUE(res.period.has_value());
  EXPECT_EQ(res.period->period, 1);
  expect_resolution_invariants(res);
  Module m = submodule(regular_module(r), r->radical());
  expect_resolution_invariants(minimal_free_resolution(m, 5));
}

TEST(Resolve, FreeAndZeroModules) {
  auto r = radical_square_zero(Field(2), 2);
  Resolution res = minimal_free_resolution(free_module(r, 2), 5);
  EXPECT_TRUE(res.exhausted);
  EXPECT_EQ(res.betti, (std::vector<std::size_t>{2}));
  EXPECT_EQ(res.finite_dimension(), 0);
  EXPECT_FALSE(res.period.has_value());
  Resolution z = minimal_free_resolution(zero_module(r), 3);
  EXPECT_EQ(z.finite_dimension(), -1);
}

TEST(Resolve, InjectiveCoresolutions) {
  auto r2 = truncated_polynomial(Field(2), 2);
  Resolution i2 = injective_coresolution(residue_module(r2), 5);
  EXPECT_EQ(i2.ftc.lo, -5);
  for (long n = -5; n <= 0; ++n) EXPECT_EQ(i2.ftc.rank(n), 1u);
  RMatrix x(r2, 1, 1);
  x.set_entry(0, 0, {0, 1});
  for (auto& d : i2.ftc.diffs) EXPECT_EQ(d, x);
  EXPECT_EQ(is_isomorphic(i2.complex().term(0), regular_module(r2)).status, IsoStatus::Isomorphic);

  auto r3 = radical_square_zero(Field(2), 2);
  Module k = residue_module(r3);
  Resolution i3 = injective_coresolution(k, 4);
  Module e = dual_module(regular_module(r3));
  for (long n = 0; n <= 4; ++n) {
    EXPECT_EQ(i3.ftc.rank(-n), std::size_t(1) << n);
    EXPECT_EQ(i3.complex().term(-n), power(e, std::size_t(1) << n));
  }
  // dualizing back gives the free resolution of the dual, bit-exactly
  EXPECT_EQ(dual_complex(i3.complex()), minimal_free_resolution(dual_module(k), 4).complex());
  EXPECT_TRUE(i3.augmentation.is_homomorphism());
  EXPECT_EQ(kernel(i3.augmentation.matrix).dim(), 0u);

  Resolution inj = injective_coresolution(e, 3);
  EXPECT_TRUE(inj.exhausted);
  EXPECT_EQ(inj.finite_dimension(), 0);
}

TEST(Resolve, CompleteResolutionOracle) {
  auto r2 = truncated_polynomial(Field(2), 2);
  CompleteResolution cr = complete_resolution(residue_module(r2), -6, 6);
  for (long n = -6; n <= 6; ++n) EXPECT_EQ(cr.window.rank(n), 1u);
  auto expect_error = [](auto&& fn, const std::string& what) {
    try {
      fn();
      ADD_FAILURE() << "expected " << what;
    } catch (const Error& e) {
      EXPECT_NE(std::string(e.what()).find(what), std::string::npos) << e.what();
    }
  };
  expect_error([&] { complete_resolution(free_module(r2, 1), -2, 2); }, "no period certificate");
  auto r3 = radical_square_zero(Field(2), 2);
  expect_error([&] { complete_resolution(residue_module(r3), -2, 2); }, "not self-injective");
  auto c3 = truncated_polynomial(Field(2), 3);
  CompleteResolution cc = complete_resolution(residue_module(c3), -5, 5);
  EXPECT_EQ(cc.pattern.period, 2);
}

TEST(Resolve, BudgetStopsEarly) {
  auto r = radical_square_zero(Field(2), 2);
  ResolutionOptions opt;
  opt.max_term_dim = 30;
  Resolution res = minimal_free_resolution(residue_module(r), 10, opt);
  EXPECT_TRUE(res.budget_hit);
  EXPECT_EQ(res.computed, 3);
  EXPECT_EQ(res.betti.back(), 8u);
}
