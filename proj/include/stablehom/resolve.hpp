#ifndef STABLEHOM_RESOLVE_HPP
#define STABLEHOM_RESOLVE_HPP

// Minimal free resolutions by kernel-of-cover iteration, injective
// coresolutions by Matlis duality, periodicity certificates, and complete
// resolutions over self-injective algebras.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "stablehom/chaincx.hpp"

namespace stablehom {

/// Matrix with entries in R. Column k holds the image of the k-th generator of R^cols
/// in R^rows (coordinates copy-major).
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(AlgebraPtr alg, std::size_t rows, std::size_t cols)
      : alg_(std::move(alg)), rows_(rows), cols_(cols), gens_(rows * alg_->dim(), cols, alg_->field()) {}
  RMatrix(AlgebraPtr alg, std::size_t rows, Matrix gens)
      : alg_(std::move(alg)), rows_(rows), cols_(gens.cols()), gens_(std::move(gens)) {
    require(gens_.rows() == rows_ * alg_->dim(), ErrorKind::DimensionMismatch, "R-matrix generator block");
  }

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Matrix& generators() const { return gens_; }

  Vector entry(std::size_t i, std::size_t k) const {
    const std::size_t d = alg_->dim();
    Vector v(d);
    for (std::size_t j = 0; j < d; ++j) v[j] = gens_(i * d + j, k);
    return v;
  }
  void set_entry(std::size_t i, std::size_t k, const Vector& v) {
    const std::size_t d = alg_->dim();
    for (std::size_t j = 0; j < d; ++j) gens_(i * d + j, k) = v[j];
  }
  bool is_zero() const { return gens_.is_zero(); }

  /// The induced map B^cols -> B^rows: block (i, k) is the action of entry (i, k).
  Matrix act_on(const Module& b) const {
    const std::size_t m = b.dim(), d = alg_->dim();
    Matrix out(rows_ * m, cols_ * m, alg_->field());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k)
        for (std::size_t j = 0; j < d; ++j)
          if (Scalar c = gens_(i * d + j, k)) out.add_block(i * m, k * m, b.action(j).scaled(c));
    return out;
  }

  RMatrix transposed() const {
    RMatrix t(alg_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) t.set_entry(k, i, entry(i, k));
    return t;
  }
  RMatrix scaled(Scalar s) const { return RMatrix(alg_, rows_, gens_.scaled(s)); }

  /// Kronecker product with an identity, matching kron() index conventions.
  friend RMatrix kron_identity_right(const RMatrix& a, std::size_t n) {
    RMatrix out(a.alg_, a.rows_ * n, a.cols_ * n);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        Vector e = a.entry(i, k);
        if (std::all_of(e.begin(), e.end(), [](Scalar s) { return s == 0; })) continue;
        for (std::size_t t = 0; t < n; ++t) out.set_entry(i * n + t, k * n + t, e);
      }
    return out;
  }
  friend RMatrix kron_identity_left(std::size_t n, const RMatrix& a) {
    RMatrix out(a.alg_, a.rows_ * n, a.cols_ * n);
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) out.set_entry(t * a.rows_ + i, t * a.cols_ + k, a.entry(i, k));
    return out;
  }

  friend bool operator==(const RMatrix& a, const RMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.gens_ == b.gens_;
  }

 private:
  AlgebraPtr alg_;
  std::size_t rows_ = 0, cols_ = 0;
  Matrix gens_;
};

/// Complex with terms base^{rank_n} and differentials given by R-matrices.
struct FreeTypeComplex {
  Module base;
  long lo = 0;
  std::vector<std::size_t> ranks;  // ranks[n - lo]
  std::vector<RMatrix> diffs;      // diffs[n - lo - 1] = d_n for n in (lo, hi]
  bool bounded_below = true, bounded_above = true;

  long hi() const { return lo + long(ranks.size()) - 1; }
  bool in_window(long n) const { return n >= lo && n <= hi(); }
  std::size_t rank(long n) const { return in_window(n) ? ranks[n - lo] : 0; }
  const RMatrix& d(long n) const { return diffs[n - lo - 1]; }

  FreeTypeComplex with_base(const Module& b) const {
    FreeTypeComplex out = *this;
    out.base = b;
    return out;
  }
  /// Restriction to degrees [a, b] of the window; the flags record whether the cut ends are genuine.
  FreeTypeComplex window(long a, long b) const {
    a = std::max(a, lo);
    b = std::min(b, hi());
    FreeTypeComplex out{base, a, {}, {}, a == lo && bounded_below, b == hi() && bounded_above};
    for (long n = a; n <= b; ++n) {
      out.ranks.push_back(rank(n));
      if (n > a) out.diffs.push_back(d(n));
    }
    return out;
  }
  Complex to_complex() const {
    std::vector<Module> terms;
    std::vector<Matrix> ds;
    for (long n = lo; n <= hi(); ++n) {
      terms.push_back(power(base, rank(n)));
      if (n > lo) ds.push_back(d(n).act_on(base));
    }
    return Complex(base.algebra(), lo, std::move(terms), std::move(ds), bounded_below, bounded_above, false);
  }
};

/// Tail periodicity: d_{n+q} = d_n for every n > start. Verified on d_{s+1}, ..., d_{s+2q}
/// against d_{s+1+q}, ..., d_{s+3q}.
struct PeriodCertificate {
  long start = 0;
  long period = 0;
};

enum class ResolutionKind { Free, Injective };

struct ResolutionOptions {
  std::size_t max_term_dim = 3072;  // F_p-dimension cap on a single term
};

struct Resolution {
  Module of;
  ResolutionKind kind = ResolutionKind::Free;
  long requested = 0;                // L or D
  long computed = 0;                 // last degree (absolute value) actually built
  bool exhausted = false;            // a zero kernel appeared: the resolution is finite
  bool budget_hit = false;           // stopped early by max_term_dim
  std::vector<std::size_t> betti;    // b_0, ..., b_computed
  std::vector<RMatrix> rdiffs;       // free resolution data: rdiffs[n-1] = d_n, n = 1..computed
  std::vector<Vector> generators;    // images in `of` (free) or in dual(of) (injective) of the cover generators
  FreeTypeComplex ftc;               // degrees 0..computed (free) or -computed..0 (injective)
  ModuleMap augmentation;            // F_0 -> M, or M -> I^0
  std::optional<PeriodCertificate> period;

  Complex complex() const { return ftc.to_complex(); }
  /// Projective (injective) dimension when exhausted; -1 for the zero module.
  long finite_dimension() const {
    if (!exhausted) return -2;
    return betti.front() == 0 ? -1 : long(betti.size()) - 1;
  }
};

/// Finds the smallest start, then smallest period, with 2q verified repetitions.
inline std::optional<PeriodCertificate> detect_period(const std::vector<RMatrix>& d) {
  // d[k] = d_{k+1}
  const long len = long(d.size());
  for (long s = 0; s < len; ++s)
    for (long q = 1; s + 3 * q <= len; ++q) {
      bool ok = true;
      for (long n = s + 1; n <= s + 2 * q && ok; ++n) ok = d[n - 1] == d[n + q - 1];
      if (ok) return PeriodCertificate{s, q};
    }
  return std::nullopt;
}

inline bool period_nonzero(const Resolution& r) {
  return r.period && r.betti.size() > std::size_t(r.period->start) && r.betti[r.period->start] > 0;
}

inline Resolution minimal_free_resolution(const Module& m, long length, const ResolutionOptions& opt = {}) {
  require(length >= 0, ErrorKind::InvalidArgument, "resolution length must be nonnegative");
  const AlgebraPtr& alg = m.algebra();
  const std::size_t d = alg->dim();
  Resolution res;
  res.of = m;
  res.kind = ResolutionKind::Free;
  res.requested = length;
  res.generators = minimal_generators(m, Subspace::full(m.dim(), m.field()));
  Matrix aug = map_from_free(m, res.generators);
  res.betti.push_back(res.generators.size());
  res.augmentation = ModuleMap{free_module(alg, res.generators.size()), m, aug};
  Subspace kern = kernel(aug);
  long n = 0;
  while (true) {
    if (kern.dim() == 0) {
      res.exhausted = true;
      break;
    }
    if (n == length) break;
    const std::size_t prev = res.betti.back();
    Module f = free_module(alg, prev);
    auto gens = minimal_generators(f, kern);
    if (gens.size() * d > opt.max_term_dim) {
      res.budget_hit = true;
      break;
    }
    RMatrix dn(alg, prev, Matrix::from_columns(gens, prev * d, m.field()));
    res.betti.push_back(gens.size());
    ++n;
    kern = kernel(dn.act_on(regular_module(alg)));
    res.rdiffs.push_back(std::move(dn));
  }
  res.computed = n;
  res.ftc = FreeTypeComplex{regular_module(alg), 0, res.betti, res.rdiffs, true, res.exhausted};
  res.period = detect_period(res.rdiffs);
  return res;
}

/// I^0 -> I^{-1} -> ... placed in degrees 0, -1, ..., -D, dual to the free resolution of dual(M).
inline Resolution injective_coresolution(const Module& m, long depth, const ResolutionOptions& opt = {}) {
  Resolution g = minimal_free_resolution(dual_module(m), depth, opt);
  Resolution res = g;
  res.of = m;
  res.kind = ResolutionKind::Injective;
  Module e = dual_module(regular_module(m.algebra()));
  FreeTypeComplex ftc{e, -g.computed, {}, {}, g.exhausted, true};
  for (long n = -g.computed; n <= 0; ++n) {
    ftc.ranks.push_back(g.betti[-n]);
    if (n > -g.computed) ftc.diffs.push_back(g.rdiffs[-n].transposed());  // d_{n} = (d^G_{1-n})^T
  }
  res.ftc = std::move(ftc);
  res.augmentation = dual_map(g.augmentation);
  return res;
}

/// Hom(-, R) of a free-type complex over R: degree n becomes -n, d_n becomes d_{1-n}^T.
inline FreeTypeComplex hom_into_ring(const FreeTypeComplex& t) {
  FreeTypeComplex out{t.base, -t.hi(), {}, {}, t.bounded_above, t.bounded_below};
  for (long n = -t.hi(); n <= -t.lo; ++n) {
    out.ranks.push_back(t.rank(-n));
    if (n > -t.hi()) out.diffs.push_back(t.d(1 - n).transposed());
  }
  return out;
}

struct CompleteResolution {
  Module target;
  PeriodCertificate pattern;
  long lo = 0, hi = 0;     // verified window of degrees
  FreeTypeComplex window;  // degrees lo-1 .. hi+1
};

/// Periodic extension of the minimal resolution to all degrees, verified on [lo, hi].
inline CompleteResolution complete_resolution(const Module& m, long lo, long hi, const ResolutionOptions& opt = {}) {
  const AlgebraPtr& alg = m.algebra();
  require(lo <= hi, ErrorKind::InvalidArgument, "empty window");
  require(is_gorenstein(alg) == IsoStatus::Isomorphic, ErrorKind::Precondition, "not self-injective");
  long need = std::max<long>(hi + 2, 8);
  Resolution f = minimal_free_resolution(m, need, opt);
  require(period_nonzero(f), ErrorKind::Precondition, "no period certificate");
  const long s = f.period->start, q = f.period->period;
  auto fold = [&](long n) {  // representative degree >= s with the same position in the period
    if (n >= s) return n;
    long k = (s - n + q - 1) / q;
    return n + k * q;
  };
  FreeTypeComplex t{regular_module(alg), lo - 1, {}, {}, false, false};
  for (long n = lo - 1; n <= hi + 1; ++n) {
    long a = fold(n);
    while (a > f.computed) a -= q;
    t.ranks.push_back(f.betti[a]);
    if (n > lo - 1) {
      long b = fold(n);
      if (b == s) b += q;  // d_s itself is not part of the verified pattern
      while (b > f.computed) b -= q;
      t.diffs.push_back(f.rdiffs[b - 1]);
    }
  }
  CompleteResolution cr{m, *f.period, lo, hi, t};
  Complex c = t.to_complex();
  Complex h = hom_into_ring(t).to_complex();
  bool ok = !c.validate() && is_exact_on(c, lo, hi) && !h.validate() && is_exact_on(h, -hi, -lo);
  require(ok, ErrorKind::Precondition, "window verification failed");
  return cr;
}

}  // namespace stablehom

#endif  // STABLEHOM_RESOLVE_HPP
