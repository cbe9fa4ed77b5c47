#ifndef STABLEHOM_SEMIDUAL_HPP
#define STABLEHOM_SEMIDUAL_HPP

// Semidualizing modules and the relative classes P_C = {C (x) free},
// I_C = {Hom(C, injective)} with their proper (co)resolutions.
//
// Properness is tested against the single generator C (resp. Hom(C, E)):
// every class member is a finite sum of copies of it and Hom is additive.
// Over an artinian local ring finite flat modules are free, so F_C and P_C
// produce the same complexes.

#include <optional>
#include <string>
#include <vector>

#include "stablehom/resolve.hpp"

namespace stablehom {

enum class SemidualStatus { Certified, UpToHorizon, Refuted };

inline const char* to_string(SemidualStatus s) {
  switch (s) {
    case SemidualStatus::Certified: return "certified";
    case SemidualStatus::UpToHorizon: return "up-to-horizon";
    case SemidualStatus::Refuted: return "refuted";
  }
  return "?";
}

struct SemidualizingCertificate {
  Module c;
  SemidualStatus status = SemidualStatus::UpToHorizon;
  std::optional<ModuleMap> hom_iso;   // R -> Hom(C, C), r -> (c -> rc)
  long horizon = 0;                   // Ext^i(C, C) computed for 1 <= i <= horizon
  std::vector<std::size_t> ext_dims;  // ext_dims[i-1] = dim Ext^i(C, C)
  std::optional<long> refuted_degree; // 0 when the unit map fails
  std::string route;                  // how the status was reached
};

/// Unit map R -> Hom(C, C) in the basis of hom_module(C, C).
inline Matrix unit_map(const Module& c, const HomSpace& h) {
  const std::size_t d = c.algebra()->dim();
  Matrix eta(h.basis.size(), d, c.field());
  for (std::size_t i = 0; i < d; ++i) {
    Vector col = h.coords(c.action(i));
    for (std::size_t r = 0; r < col.size(); ++r) eta(r, i) = col[r];
  }
  return eta;
}

/// dim Ext^i(M, N) for i = 1..upto from a free resolution of M (needs d_1..d_{upto+1} or exhaustion).
inline std::vector<std::size_t> ext_dimensions(const Resolution& f, const Module& n, long upto) {
  std::vector<std::size_t> out;
  for (long i = 1; i <= upto; ++i) {
    if (f.exhausted && i > f.computed) {
      out.push_back(0);
      continue;
    }
    // Hom(F_i, N) = N^{b_i}; coboundary into degree i is d_i^T, out of it d_{i+1}^T.
    Matrix into = f.rdiffs[i - 1].transposed().act_on(n);
    Matrix out_of = i + 1 <= f.computed
                        ? f.rdiffs[i].transposed().act_on(n)
                        : Matrix(0, f.betti[i] * n.dim(), n.field());
    out.push_back(kernel(out_of).dim() - rank(into));
  }
  return out;
}

inline SemidualizingCertificate verify_semidualizing(const Module& c, long horizon = 12,
                                                     const ResolutionOptions& opt = {}) {
  SemidualizingCertificate cert;
  cert.c = c;
  const AlgebraPtr& alg = c.algebra();
  HomSpace h = hom_module(c, c);
  Matrix eta = unit_map(c, h);
  if (!is_invertible(eta)) {
    cert.status = SemidualStatus::Refuted;
    cert.refuted_degree = 0;
    cert.route = "unit map R -> Hom(C,C) is not bijective (dim Hom(C,C) = " + std::to_string(h.basis.size()) +
                 ", dim R = " + std::to_string(alg->dim()) + ")";
    return cert;
  }
  cert.hom_iso = ModuleMap{regular_module(alg), h.module, eta};
  Resolution f = minimal_free_resolution(c, horizon + 1, opt);
  long reach = f.exhausted ? horizon : std::min<long>(horizon, f.computed - 1);
  cert.horizon = std::max<long>(reach, 0);
  cert.ext_dims = ext_dimensions(f, c, cert.horizon);
  for (long i = 1; i <= cert.horizon; ++i)
    if (cert.ext_dims[i - 1] != 0) {
      cert.status = SemidualStatus::Refuted;
      cert.refuted_degree = i;
      cert.route = "Ext^" + std::to_string(i) + "(C,C) has dimension " + std::to_string(cert.ext_dims[i - 1]);
      return cert;
    }
  if (f.exhausted) {
    cert.status = SemidualStatus::Certified;
    cert.route = "finite projective dimension " + std::to_string(f.finite_dimension());
  } else if (f.period && f.period->start + f.period->period <= cert.horizon) {
    cert.status = SemidualStatus::Certified;
    cert.route = "periodic resolution covers all higher degrees";
  } else if (minimal_free_resolution(dual_module(c), 0, opt).exhausted) {
    cert.status = SemidualStatus::Certified;
    cert.route = "C is injective (its dual is free)";
  } else {
    cert.status = SemidualStatus::UpToHorizon;
    cert.route = "Ext vanishes through degree " + std::to_string(cert.horizon);
  }
  return cert;
}

enum class ClassTag { PC, FC, IC };

inline const char* to_string(ClassTag t) {
  switch (t) {
    case ClassTag::PC: return "PC";
    case ClassTag::FC: return "FC";
    case ClassTag::IC: return "IC";
  }
  return "?";
}

struct ProperResolution {
  Module of;
  Module c;
  ClassTag tag = ClassTag::PC;
  FreeTypeComplex ftc;      // base C (PC, FC) or Hom(C, E) (IC), R-matrices of the provenance
  Resolution provenance;    // free resolution of Hom(C, M), or injective coresolution of C (x) N
  HomSpace hom_c_m;         // Hom(C, M) (PC, FC) or Hom(C, E) (IC)
  ModuleMap augmentation;   // C^{b_0} -> M, or N -> Hom(C, E)^{m_0}
  bool proper = false;
  long properness_window = 0;

  Complex complex() const { return ftc.to_complex(); }
};

/// Augmented complex M <- X_0 <- X_1 <- ... (M in degree -1), or N -> Y^0 -> Y^{-1} -> ... (N in degree 1).
inline Complex augmented(const ProperResolution& p, long window) {
  FreeTypeComplex w = p.tag == ClassTag::IC ? p.ftc.window(-window, 0) : p.ftc.window(0, window);
  Complex c = w.to_complex();
  std::vector<Module> terms;
  std::vector<Matrix> diffs;
  if (p.tag == ClassTag::IC) {
    for (long n = c.lo(); n <= 0; ++n) {
      terms.push_back(c.term(n));
      if (n > c.lo()) diffs.push_back(c.d(n));
    }
    terms.push_back(p.of);
    diffs.push_back(p.augmentation.matrix);
    return Complex(p.of.algebra(), c.lo(), terms, diffs, c.bounded_below(), true, false);
  }
  terms.push_back(p.of);
  diffs.push_back(p.augmentation.matrix);
  for (long n = 0; n <= c.hi(); ++n) {
    terms.push_back(c.term(n));
    if (n > 0) diffs.push_back(c.d(n));
  }
  return Complex(p.of.algebra(), -1, terms, diffs, true, c.bounded_above(), false);
}

inline bool check_properness(const ProperResolution& p, long window) {
  Complex a = augmented(p, window);
  if (a.validate()) return false;
  if (p.tag == ClassTag::IC) {
    Module he = hom_module(p.c, dual_module(regular_module(p.c.algebra()))).module;
    Complex h = hom_complex(a, Complex::concentrated(he, 0));
    long top = a.bounded_below() ? h.hi() : h.hi() - 1;
    return is_exact_on(h, h.lo(), top);
  }
  Complex h = hom_complex(Complex::concentrated(p.c, 0), a);
  long top = a.bounded_above() ? h.hi() : h.hi() - 1;
  return is_exact_on(h, h.lo(), top);
}

inline ProperResolution proper_pc_resolution(const Module& c, const Module& m, long length,
                                             const ResolutionOptions& opt = {}, ClassTag tag = ClassTag::PC,
                                             long properness_window = 4) {
  require_same_algebra(c, m);
  ProperResolution p;
  p.of = m;
  p.c = c;
  p.tag = tag;
  p.hom_c_m = hom_module(c, m);
  p.provenance = minimal_free_resolution(p.hom_c_m.module, length, opt);
  p.ftc = p.provenance.ftc.with_base(c);
  const std::size_t b0 = p.provenance.betti.front();
  Matrix aug(m.dim(), b0 * c.dim(), m.field());
  for (std::size_t k = 0; k < b0; ++k) aug.set_block(0, k * c.dim(), p.hom_c_m.element(p.provenance.generators[k]));
  p.augmentation = ModuleMap{power(c, b0), m, aug};
  p.properness_window = std::min<long>(properness_window, p.provenance.computed);
  p.proper = check_properness(p, p.properness_window);
  require(p.proper, ErrorKind::Precondition, "constructed resolution is not proper");
  return p;
}

inline ProperResolution proper_fc_resolution(const Module& c, const Module& m, long length,
                                             const ResolutionOptions& opt = {}) {
  return proper_pc_resolution(c, m, length, opt, ClassTag::FC);
}

inline ProperResolution proper_ic_coresolution(const Module& c, const Module& n, long depth,
                                               const ResolutionOptions& opt = {}, long properness_window = 4) {
  require_same_algebra(c, n);
  const AlgebraPtr& alg = c.algebra();
  ProperResolution p;
  p.of = n;
  p.c = c;
  p.tag = ClassTag::IC;
  TensorProduct cn = tensor_module(c, n);
  p.provenance = injective_coresolution(cn.module, depth, opt);
  Module e = dual_module(regular_module(alg));
  p.hom_c_m = hom_module(c, e);
  p.ftc = p.provenance.ftc.with_base(p.hom_c_m.module);
  // N -> Hom(C, C (x) N) -> Hom(C, E^{m_0}) = Hom(C, E)^{m_0}
  const std::size_t m0 = p.provenance.ftc.rank(0);
  const Matrix& iota = p.provenance.augmentation.matrix;  // C (x) N -> E^{m_0}
  const std::size_t he = p.hom_c_m.basis.size();
  Matrix aug(m0 * he, n.dim(), n.field());
  for (std::size_t j = 0; j < n.dim(); ++j) {
    // c -> iota(c (x) n_j), one E-component per copy
    Vector nj(n.dim(), 0);
    nj[j] = 1;
    Matrix phi(m0 * e.dim(), c.dim(), n.field());
    for (std::size_t i = 0; i < c.dim(); ++i) {
      Vector ci(c.dim(), 0);
      ci[i] = 1;
      Vector pure(c.dim() * n.dim(), 0);
      pure[i * n.dim() + j] = 1;
      Vector img = iota.apply(cn.proj.apply(pure));
      for (std::size_t r = 0; r < img.size(); ++r) phi(r, i) = img[r];
    }
    for (std::size_t k = 0; k < m0; ++k) {
      Vector cc = p.hom_c_m.coords(phi.block(k * e.dim(), 0, e.dim(), c.dim()));
      for (std::size_t r = 0; r < he; ++r) aug(k * he + r, j) = cc[r];
    }
  }
  p.augmentation = ModuleMap{n, power(p.hom_c_m.module, m0), aug};
  p.properness_window = std::min<long>(properness_window, p.provenance.computed);
  p.proper = check_properness(p, p.properness_window);
  require(p.proper, ErrorKind::Precondition, "constructed coresolution is not proper");
  return p;
}

/// eta : R^b -> Hom(C, C^b), e_k r -> (c -> r c in copy k), in the basis of `h`.
inline Matrix eta_matrix(const Module& c, std::size_t b, const HomSpace& h) {
  const std::size_t d = c.algebra()->dim();
  Matrix out(h.basis.size(), b * d, c.field());
  for (std::size_t k = 0; k < b; ++k)
    for (std::size_t j = 0; j < d; ++j) {
      Matrix phi(b * c.dim(), c.dim(), c.field());
      phi.set_block(k * c.dim(), 0, c.action(j));
      Vector col = h.coords(phi);
      for (std::size_t r = 0; r < col.size(); ++r) out(r, k * d + j) = col[r];
    }
  return out;
}

/// ev : C (x) Hom(C, E)^m -> E^m, c (x) phi -> phi(c).
inline Matrix ev_matrix(const Module& c, const HomSpace& he, std::size_t m, const TensorProduct& t) {
  const std::size_t h = he.basis.size(), e = he.target.dim();
  Matrix pure(m * e, c.dim() * m * h, c.field());
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < h; ++j) {
        Vector v = he.basis[j].col(i);
        for (std::size_t r = 0; r < e; ++r) pure(k * e + r, i * (m * h) + k * h + j) = v[r];
      }
  return pure * t.lift;
}

/// Applies Hom(C, -) (PC, FC) or C (x) - (IC) to the window and compares with the provenance
/// (co)resolution through the canonical maps.
inline bool check_proper_converse(const ProperResolution& p, long window = 3) {
  const Module& c = p.c;
  const Field& f = c.field();
  if (p.tag != ClassTag::IC) {
    const Resolution& fr = p.provenance;
    long top = std::min<long>(window, std::min<long>(fr.computed, p.ftc.hi()));
    std::vector<HomSpace> hs;
    std::vector<Matrix> eta;
    for (long n = 0; n <= top; ++n) {
      hs.push_back(hom_module(c, power(c, p.ftc.rank(n))));
      eta.push_back(eta_matrix(c, p.ftc.rank(n), hs.back()));
      if (!is_invertible(eta.back())) return false;
    }
    // augmentation: Hom(C, eps_X) eta_0 = eps_F
    Matrix lhs = hom_post(hs[0], p.hom_c_m, p.augmentation.matrix) * eta[0];
    if (lhs != fr.augmentation.matrix) return false;
    for (long n = 1; n <= top; ++n) {
      Matrix hd = hom_post(hs[n], hs[n - 1], p.ftc.d(n).act_on(c));
      if (hd * eta[n] != eta[n - 1] * fr.rdiffs[n - 1].act_on(regular_module(c.algebra()))) return false;
    }
    return true;
  }
  const Resolution& ir = p.provenance;
  const HomSpace& he = p.hom_c_m;
  Module e = he.target;
  long bottom = -std::min<long>(window, std::min<long>(ir.computed, -p.ftc.lo));
  std::vector<TensorProduct> ts;
  std::vector<Matrix> ev;
  for (long n = 0; n >= bottom; --n) {
    std::size_t m = p.ftc.rank(n);
    ts.push_back(tensor_module(c, power(he.module, m)));
    ev.push_back(ev_matrix(c, he, m, ts.back()));
    if (!is_invertible(ev.back())) return false;
  }
  TensorProduct cn = tensor_module(c, p.of);
  Matrix lhs = ev[0] * tensor_maps(cn, ts[0], Matrix::identity(c.dim(), f), p.augmentation.matrix);
  if (lhs != ir.augmentation.matrix) return false;
  for (long n = 0; n > bottom; --n) {
    // d_n : degree n -> n - 1
    std::size_t k = std::size_t(-n);
    Matrix td = tensor_maps(ts[k], ts[k + 1], Matrix::identity(c.dim(), f), p.ftc.d(n).act_on(he.module));
    if (ev[k + 1] * td != ir.ftc.d(n).act_on(e) * ev[k]) return false;
  }
  return true;
}

enum class DimensionKind { Finite, InfiniteCertified, UnknownAtHorizon };

inline const char* to_string(DimensionKind k) {
  switch (k) {
    case DimensionKind::Finite: return "finite";
    case DimensionKind::InfiniteCertified: return "infinite-certified";
    case DimensionKind::UnknownAtHorizon: return "unknown-at-horizon";
  }
  return "?";
}

struct RelativeDimension {
  DimensionKind kind = DimensionKind::UnknownAtHorizon;
  long value = 0;  // meaningful when finite; -1 for the zero module
  std::string reason;
};

inline bool has_radical_square_zero(const Algebra& a) {
  for (std::size_t i = 0; i < a.radical().dim(); ++i)
    for (std::size_t j = 0; j < a.radical().dim(); ++j) {
      Vector v = a.multiply(a.radical().vec(i), a.radical().vec(j));
      if (std::any_of(v.begin(), v.end(), [](Scalar s) { return s != 0; })) return false;
    }
  return true;
}

/// Classifies a free resolution: finite, certified infinite, or unknown.
inline RelativeDimension classify_resolution(const Resolution& f) {
  const Algebra& a = *f.of.algebra();
  if (f.exhausted) return {DimensionKind::Finite, f.finite_dimension(), "resolution terminates"};
  if (period_nonzero(f)) return {DimensionKind::InfiniteCertified, 0, "periodic nonfree syzygies"};
  if (a.dim() > 1 && has_radical_square_zero(a) && f.betti.size() > 1 && f.betti[1] > 0) {
    // every syzygy is semisimple; Betti numbers multiply by dim m
    const std::size_t e = a.radical().dim();
    bool pattern = true;
    for (std::size_t i = 1; i + 1 < f.betti.size(); ++i) pattern = pattern && f.betti[i + 1] == e * f.betti[i];
    if (pattern)
      return {DimensionKind::InfiniteCertified, 0,
              "radical square zero: nonzero semisimple syzygy, Betti growth b_{i+1} = " + std::to_string(e) + " b_i"};
  }
  return {DimensionKind::UnknownAtHorizon, 0, "no termination or certificate through degree " +
                                                  std::to_string(f.computed)};
}

/// P_C/F_C-pd via pd Hom(C, M); I_C-id via id (C (x) M).
inline RelativeDimension relative_dimension(const Module& c, const Module& m, ClassTag tag, long horizon,
                                            const ResolutionOptions& opt = {}) {
  if (tag == ClassTag::IC) {
    Module cm = tensor_module(c, m).module;
    return classify_resolution(minimal_free_resolution(dual_module(cm), horizon, opt));
  }
  return classify_resolution(minimal_free_resolution(hom_module(c, m).module, horizon, opt));
}

}  // namespace stablehom

#endif  // STABLEHOM_SEMIDUAL_HPP
