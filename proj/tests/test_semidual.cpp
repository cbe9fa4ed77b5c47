#include <gtest/gtest.h>

#include "stablehom/semidual.hpp"

using namespace stablehom;

namespace {

AlgebraPtr r2() { return truncated_polynomial(Field(2), 2); }
AlgebraPtr r3() { return radical_square_zero(Field(2), 2); }
Module dual_ring(const AlgebraPtr& r) { return dual_module(regular_module(r)); }

}  // namespace

TEST(Semidual, RingIsCertified) {
  for (auto r : {r2(), r3()}) {
    auto cert = verify_semidualizing(regular_module(r), 12);
    EXPECT_EQ(cert.status, SemidualStatus::Certified);
    ASSERT_TRUE(cert.hom_iso.has_value());
    EXPECT_TRUE(cert.hom_iso->is_homomorphism());
  }
}

TEST(Semidual, DualizingModuleOfRadicalSquareZero) {
  auto r = r3();
  auto cert = verify_semidualizing(dual_ring(r), 4);
  EXPECT_EQ(cert.status, SemidualStatus::Certified);
  ASSERT_GE(cert.horizon, 1);
  for (auto d : cert.ext_dims) EXPECT_EQ(d, 0u);
}

TEST(Semidual, ResidueFieldRefuted) {
  auto cert = verify_semidualizing(residue_module(r2()), 12);
  EXPECT_EQ(cert.status, SemidualStatus::Refuted);
  ASSERT_TRUE(cert.refuted_degree.has_value());
  EXPECT_EQ(*cert.refuted_degree, 0);
}

TEST(Semidual, ExtDimensionsOfResidueField) {
  // Ext^i(k, k) over F_2[x]/(x^2) is one-dimensional in every degree.
  auto r = r2();
  Resolution f = minimal_free_resolution(residue_module(r), 6);
  auto e = ext_dimensions(f, residue_module(r), 5);
  for (auto d : e) EXPECT_EQ(d, 1u);
  // over the radical-square-zero ring, Ext^i(k, k) = k^{2^i}
  auto s = r3();
  Resolution g = minimal_free_resolution(residue_module(s), 5);
  auto e3 = ext_dimensions(g, residue_module(s), 4);
  for (std::size_t i = 0; i < e3.size(); ++i) EXPECT_EQ(e3[i], std::size_t(1) << (i + 1));
}

TEST(Semidual, ProperResolutionOfC) {
  for (auto r : {r2(), r3()}) {
    for (const Module& c : {regular_module(r), dual_ring(r)}) {
      ProperResolution p = proper_pc_resolution(c, c, 6);
      EXPECT_TRUE(p.provenance.exhausted);
      EXPECT_EQ(p.provenance.finite_dimension(), 0);
      EXPECT_TRUE(p.proper);
      EXPECT_TRUE(check_proper_converse(p));
      EXPECT_EQ(relative_dimension(c, c, ClassTag::PC, 6).kind, DimensionKind::Finite);
      EXPECT_EQ(relative_dimension(c, c, ClassTag::PC, 6).value, 0);
    }
  }
}

TEST(Semidual, ClassicalCaseOverDualNumbers) {
  auto r = r2();
  Module k = residue_module(r);
  ProperResolution p = proper_pc_resolution(regular_module(r), k, 6);
  for (auto b : p.provenance.betti) EXPECT_EQ(b, 1u);
  EXPECT_EQ(p.complex(), minimal_free_resolution(k, 6).complex());
  EXPECT_TRUE(check_proper_converse(p));
  ProperResolution i = proper_ic_coresolution(regular_module(r), k, 6);
  for (long n = -6; n <= 0; ++n) EXPECT_EQ(i.ftc.rank(n), 1u);
  EXPECT_TRUE(check_proper_converse(i));
  EXPECT_EQ(relative_dimension(regular_module(r), k, ClassTag::PC, 8).kind, DimensionKind::InfiniteCertified);
  RelativeDimension id = relative_dimension(regular_module(r), regular_module(r), ClassTag::IC, 8);
  EXPECT_EQ(id.kind, DimensionKind::Finite);
  EXPECT_EQ(id.value, 0);
}

TEST(Semidual, DualizingModuleResolutions) {
  auto r = r3();
  Module c = dual_ring(r);
  Module k = residue_module(r);
  ProperResolution p = proper_pc_resolution(c, k, 4);
  Resolution oracle = minimal_free_resolution(hom_module(c, k).module, 4);
  EXPECT_EQ(p.provenance.betti, oracle.betti);
  EXPECT_EQ(hom_module(c, k).basis.size(), 2u);
  for (long n = 0; n <= 4; ++n) EXPECT_EQ(p.complex().term(n), power(c, oracle.betti[n]));
  EXPECT_TRUE(check_proper_converse(p));

  ProperResolution i = proper_ic_coresolution(c, k, 3);
  EXPECT_EQ(tensor_module(c, k).module.dim(), 2u);
  EXPECT_EQ(i.ftc.rank(0), 2u);
  EXPECT_EQ(is_isomorphic(i.ftc.base, regular_module(r)).status, IsoStatus::Isomorphic);
  EXPECT_TRUE(check_proper_converse(i));
  EXPECT_EQ(relative_dimension(c, k, ClassTag::PC, 4).kind, DimensionKind::InfiniteCertified);

  // Hom(C, E) is already in the class: depth 0.
  ProperResolution z = proper_ic_coresolution(c, hom_module(c, dual_ring(r)).module, 3);
  EXPECT_TRUE(z.provenance.exhausted);
  EXPECT_EQ(z.provenance.finite_dimension(), 0);
}

TEST(Semidual, FlatAndProjectiveClassesAgree) {
  auto r = r3();
  Module c = dual_ring(r);
  for (const Module& m : {residue_module(r), regular_module(r), submodule(regular_module(r), r->radical())}) {
    EXPECT_EQ(proper_pc_resolution(c, m, 3).complex(), proper_fc_resolution(c, m, 3).complex());
  }
}

TEST(Semidual, CorruptedDifferentialDetected) {
  auto r = r2();
  ProperResolution p = proper_pc_resolution(regular_module(r), residue_module(r), 4);
  ProperResolution bad = p;
  RMatrix one(r, 1, 1);
  one.set_entry(0, 0, {1, 1});
  bad.ftc.diffs[1] = one;
  EXPECT_FALSE(check_proper_converse(bad));
  ProperResolution i = proper_ic_coresolution(dual_ring(r3()), residue_module(r3()), 3);
  ProperResolution badi = i;
  badi.ftc.diffs.back() = badi.ftc.diffs.back().scaled(0);
  EXPECT_FALSE(check_proper_converse(badi));
}
