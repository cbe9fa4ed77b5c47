#ifndef STABLEHOM_CHAINCX_HPP
#define STABLEHOM_CHAINCX_HPP

// Windowed chain complexes: a finite window [lo, hi] of terms plus two flags
// saying whether the terms beyond each end are known to be zero. Differentials
// lower degree. Constructions only produce the degrees that are fully
// determined by their input windows.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablehom/algmod.hpp"

namespace stablehom {

/// Sign of the Hom-complex differential: d(f) = d^Y f - hom_sign(|f|) f d^X.
inline Scalar hom_sign(const Field& f, long degree) { return f.sign(degree); }

class Complex {
 public:
  Complex() = default;

  /// terms[k] sits in degree lo + k; diffs[k] is d_{lo+k+1} : X_{lo+k+1} -> X_{lo+k}.
  Complex(AlgebraPtr alg, long lo, std::vector<Module> terms, std::vector<Matrix> diffs, bool bounded_below,
          bool bounded_above, bool check = true)
      : alg_(std::move(alg)),
        lo_(lo),
        terms_(std::move(terms)),
        diffs_(std::move(diffs)),
        bounded_below_(bounded_below),
        bounded_above_(bounded_above) {
    require(alg_ != nullptr, ErrorKind::InvalidArgument, "complex without algebra");
    require(diffs_.size() + 1 == terms_.size() || (terms_.empty() && diffs_.empty()), ErrorKind::DimensionMismatch,
            "complex needs one differential between consecutive terms");
    for (std::size_t k = 0; k < diffs_.size(); ++k)
      require(diffs_[k].rows() == terms_[k].dim() && diffs_[k].cols() == terms_[k + 1].dim(),
              ErrorKind::DimensionMismatch, "differential shape in degree " + std::to_string(lo_ + long(k) + 1));
    if (check) {
      if (auto bad = validate()) throw Error(ErrorKind::InvalidArgument, *bad);
    }
  }

  static Complex zero(const AlgebraPtr& alg) { return Complex(alg, 0, {}, {}, true, true); }

  /// A single module in degree n.
  static Complex concentrated(const Module& m, long n) {
    return Complex(m.algebra(), n, {m}, {}, true, true);
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const Field& field() const { return alg_->field(); }
  bool empty() const { return terms_.empty(); }
  long lo() const { return lo_; }
  long hi() const { return lo_ + long(terms_.size()) - 1; }
  bool bounded_below() const { return bounded_below_; }
  bool bounded_above() const { return bounded_above_; }
  bool in_window(long n) const { return !empty() && n >= lo() && n <= hi(); }

  /// Whether X_n is known (inside the window, or zero by a boundedness flag).
  bool known(long n) const {
    if (in_window(n)) return true;
    if (empty()) return bounded_below_ && bounded_above_;
    return (n < lo() && bounded_below_) || (n > hi() && bounded_above_);
  }

  Module term(long n) const {
    require(known(n), ErrorKind::InsufficientWindow, "term in degree " + std::to_string(n) + " is outside the window");
    return in_window(n) ? terms_[n - lo_] : zero_module(alg_);
  }
  std::size_t dim(long n) const { return in_window(n) ? terms_[n - lo_].dim() : 0; }

  /// d_n : X_n -> X_{n-1}.
  Matrix d(long n) const {
    require(known(n) && known(n - 1), ErrorKind::InsufficientWindow,
            "differential in degree " + std::to_string(n) + " is outside the window");
    if (in_window(n) && in_window(n - 1)) return diffs_[n - 1 - lo_];
    return Matrix(dim(n - 1), dim(n), field());
  }

  std::optional<std::string> validate() const {
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
      long n = lo_ + long(k) + 1;
      if (!ModuleMap{terms_[k + 1], terms_[k], diffs_[k]}.is_homomorphism())
        return "differential in degree " + std::to_string(n) + " is not R-linear";
      if (k + 1 < diffs_.size() && !(diffs_[k] * diffs_[k + 1]).is_zero())
        return "d o d is nonzero in degree " + std::to_string(n + 1);
    }
    return std::nullopt;
  }

  friend bool operator==(const Complex& a, const Complex& b) {
    return same_algebra(a.alg_, b.alg_) && a.lo_ == b.lo_ && a.terms_ == b.terms_ && a.diffs_ == b.diffs_ &&
           a.bounded_below_ == b.bounded_below_ && a.bounded_above_ == b.bounded_above_;
  }

  const std::vector<Module>& terms() const { return terms_; }
  const std::vector<Matrix>& diffs() const { return diffs_; }

 private:
  AlgebraPtr alg_;
  long lo_ = 0;
  std::vector<Module> terms_;
  std::vector<Matrix> diffs_;
  bool bounded_below_ = true;
  bool bounded_above_ = true;
};

/// Degreewise maps between windows; components[n - lo] : X_n -> Y_n for n in [lo, hi].
struct ComplexMap {
  Complex source, target;
  long lo = 0;
  std::vector<Matrix> components;

  long hi() const { return lo + long(components.size()) - 1; }

  Matrix at(long n) const {
    if (n >= lo && n <= hi()) return components[n - lo];
    return Matrix(target.dim(n), source.dim(n), source.field());
  }

  /// alpha_{n-1} d^X_n = d^Y_n alpha_n wherever both sides are known, and each component is R-linear.
  bool is_chain_map() const {
    for (long n = lo; n <= hi(); ++n) {
      if (!ModuleMap{source.term(n), target.term(n), at(n)}.is_homomorphism()) return false;
      if (source.known(n - 1) && target.known(n - 1))
        if (at(n - 1) * source.d(n) != target.d(n) * at(n)) return false;
    }
    return true;
  }
  bool is_isomorphism() const {
    if (!is_chain_map()) return false;
    for (long n = lo; n <= hi(); ++n)
      if (!is_invertible(at(n))) return false;
    return true;
  }
};

/// (Sigma^k X)_n = X_{n-k}, differential (-1)^k d.
inline Complex shift(const Complex& x, long k) {
  std::vector<Matrix> diffs;
  const Scalar s = x.field().sign(k);
  for (auto& m : x.diffs()) diffs.push_back(m.scaled(s));
  return Complex(x.algebra(), x.lo() + k, x.terms(), std::move(diffs), x.bounded_below(), x.bounded_above(), false);
}

inline Complex slice(const Complex& x, long a, long b, bool bounded_below, bool bounded_above) {
  if (x.empty() || a > b) return Complex(x.algebra(), 0, {}, {}, true, true, false);
  std::vector<Module> terms;
  std::vector<Matrix> diffs;
  for (long n = a; n <= b; ++n) {
    terms.push_back(x.term(n));
    if (n > a) diffs.push_back(x.d(n));
  }
  return Complex(x.algebra(), a, std::move(terms), std::move(diffs), bounded_below, bounded_above, false);
}

/// Hard truncation X_{<= k}: a subcomplex.
inline Complex truncate_le(const Complex& x, long k) {
  if (x.empty() || k < x.lo()) return Complex(x.algebra(), 0, {}, {}, true, true, false);
  return slice(x, x.lo(), std::min(k, x.hi()), x.bounded_below(), true);
}

/// Hard truncation X_{>= k}: a quotient complex.
inline Complex truncate_ge(const Complex& x, long k) {
  if (x.empty() || k > x.hi()) return Complex(x.algebra(), 0, {}, {}, true, true, false);
  return slice(x, std::max(k, x.lo()), x.hi(), true, x.bounded_above());
}

/// Realizes a window of terms with the same window as the target, using identities where the terms agree.
inline ComplexMap identity_on_window(const Complex& src, const Complex& dst) {
  ComplexMap f{src, dst, src.lo(), {}};
  for (long n = src.lo(); n <= src.hi(); ++n) f.components.push_back(Matrix::identity(src.dim(n), src.field()));
  return f;
}

inline ComplexMap inclusion_le(const Complex& x, long k) { return identity_on_window(truncate_le(x, k), x); }

inline ComplexMap projection_ge(const Complex& x, long k) {
  Complex q = truncate_ge(x, k);
  ComplexMap f{x, q, q.lo(), {}};
  for (long n = q.lo(); n <= q.hi(); ++n) f.components.push_back(Matrix::identity(q.dim(n), x.field()));
  return f;
}

inline SubQuotient homology_subquotient(const Complex& x, long n) {
  require(x.known(n - 1) && x.known(n) && x.known(n + 1), ErrorKind::InsufficientWindow,
          "homology in degree " + std::to_string(n) + " needs degrees " + std::to_string(n - 1) + ".." +
              std::to_string(n + 1));
  Module m = x.term(n);
  Subspace z = kernel(x.d(n));
  Subspace b = image(x.d(n + 1));
  return subquotient(m, z, b);
}

inline Module homology(const Complex& x, long n) { return homology_subquotient(x, n).module; }

/// H_n(f) in the bases of homology_subquotient.
inline Matrix homology_map(const ComplexMap& f, long n) {
  SubQuotient hs = homology_subquotient(f.source, n);
  SubQuotient ht = homology_subquotient(f.target, n);
  return ht.classes_of_columns(f.at(n) * hs.representatives());
}

/// Degrees of a product construction fully determined by the input windows.
struct DegreeRange {
  long lo, hi;
  bool bounded_below, bounded_above;
};

inline DegreeRange tensor_range(const Complex& x, const Complex& y) {
  long lo = x.lo() + y.lo(), hi = x.hi() + y.hi();
  auto fail = [] { throw Error(ErrorKind::InsufficientWindow, "tensor product of windows has no determined degree"); };
  if (!x.bounded_below()) { if (!y.bounded_above()) fail(); lo = std::max(lo, x.lo() + y.hi()); }
  if (!x.bounded_above()) { if (!y.bounded_below()) fail(); hi = std::min(hi, x.hi() + y.lo()); }
  if (!y.bounded_below()) { if (!x.bounded_above()) fail(); lo = std::max(lo, y.lo() + x.hi()); }
  if (!y.bounded_above()) { if (!x.bounded_below()) fail(); hi = std::min(hi, y.hi() + x.lo()); }
  return {lo, hi, x.bounded_below() && y.bounded_below(), x.bounded_above() && y.bounded_above()};
}

inline DegreeRange hom_range(const Complex& x, const Complex& y) {
  long lo = y.lo() - x.hi(), hi = y.hi() - x.lo();
  auto fail = [] { throw Error(ErrorKind::InsufficientWindow, "Hom complex of windows has no determined degree"); };
  if (!x.bounded_below()) { if (!y.bounded_below()) fail(); hi = std::min(hi, y.lo() - x.lo()); }
  if (!x.bounded_above()) { if (!y.bounded_above()) fail(); lo = std::max(lo, y.hi() - x.hi()); }
  if (!y.bounded_below()) { if (!x.bounded_below()) fail(); lo = std::max(lo, y.lo() - x.lo()); }
  if (!y.bounded_above()) { if (!x.bounded_above()) fail(); hi = std::min(hi, y.hi() - x.hi()); }
  return {lo, hi, x.bounded_above() && y.bounded_below(), x.bounded_below() && y.bounded_above()};
}

/// Block layout of a degree of a product complex.
struct BlockLayout {
  std::vector<long> index;          // first-factor degree of each block
  std::vector<std::size_t> offset;  // start of each block in the total term
  std::size_t total = 0;

  std::optional<std::size_t> find(long i) const {
    for (std::size_t k = 0; k < index.size(); ++k)
      if (index[k] == i) return k;
    return std::nullopt;
  }
};

/// X (x) Y with d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy. Degree n is the direct sum over i of
/// X_i (x) Y_{n-i}, blocks ordered by increasing i.
struct TensorComplex {
  Complex complex;
  std::vector<BlockLayout> layout;                   // per degree of complex
  std::vector<std::vector<TensorProduct>> pieces;    // per degree, per block
  long lo() const { return complex.lo(); }
  const BlockLayout& layout_at(long n) const { return layout[n - lo()]; }
  const TensorProduct& piece(long n, std::size_t k) const { return pieces[n - lo()][k]; }
};

inline TensorComplex tensor_complex_full(const Complex& x, const Complex& y) {
  require(same_algebra(x.algebra(), y.algebra()), ErrorKind::AlgebraMismatch, "tensor of complexes");
  const Field& f = x.field();
  TensorComplex out;
  if (x.empty() || y.empty()) {
    out.complex = Complex(x.algebra(), 0, {}, {}, true, true, false);
    return out;
  }
  DegreeRange r = tensor_range(x, y);
  std::vector<Module> terms;
  for (long n = r.lo; n <= r.hi; ++n) {
    BlockLayout lay;
    std::vector<TensorProduct> ps;
    Module total = zero_module(x.algebra());
    for (long i = x.lo(); i <= x.hi(); ++i) {
      if (!y.in_window(n - i)) continue;
      TensorProduct t = tensor_module(x.term(i), y.term(n - i));
      lay.index.push_back(i);
      lay.offset.push_back(lay.total);
      lay.total += t.module.dim();
      total = direct_sum(total, t.module);
      ps.push_back(std::move(t));
    }
    out.layout.push_back(std::move(lay));
    out.pieces.push_back(std::move(ps));
    terms.push_back(std::move(total));
  }
  std::vector<Matrix> diffs;
  for (long n = r.lo + 1; n <= r.hi; ++n) {
    const BlockLayout& src = out.layout[n - r.lo];
    const BlockLayout& dst = out.layout[n - 1 - r.lo];
    Matrix dm(dst.total, src.total, f);
    for (std::size_t k = 0; k < src.index.size(); ++k) {
      long i = src.index[k];
      const TensorProduct& tp = out.pieces[n - r.lo][k];
      if (auto j = dst.find(i - 1)) {
        const TensorProduct& tq = out.pieces[n - 1 - r.lo][*j];
        dm.add_block(dst.offset[*j], src.offset[k],
                     tensor_maps(tp, tq, x.d(i), Matrix::identity(y.dim(n - i), f)));
      }
      if (auto j = dst.find(i)) {
        const TensorProduct& tq = out.pieces[n - 1 - r.lo][*j];
        dm.add_block(dst.offset[*j], src.offset[k],
                     tensor_maps(tp, tq, Matrix::identity(x.dim(i), f), y.d(n - i)).scaled(f.sign(i)));
      }
    }
    diffs.push_back(std::move(dm));
  }
  out.complex = Complex(x.algebra(), r.lo, std::move(terms), std::move(diffs), r.bounded_below, r.bounded_above, false);
  return out;
}

inline Complex tensor_complex(const Complex& x, const Complex& y) { return tensor_complex_full(x, y).complex; }

/// Hom(X, Y)_n = prod_i Hom(X_i, Y_{n+i}), blocks ordered by increasing i.
struct HomComplex {
  Complex complex;
  std::vector<BlockLayout> layout;
  std::vector<std::vector<HomSpace>> pieces;
  long lo() const { return complex.lo(); }
  const BlockLayout& layout_at(long n) const { return layout[n - lo()]; }
  const HomSpace& piece(long n, std::size_t k) const { return pieces[n - lo()][k]; }
};

inline HomComplex hom_complex_full(const Complex& x, const Complex& y) {
  require(same_algebra(x.algebra(), y.algebra()), ErrorKind::AlgebraMismatch, "Hom of complexes");
  const Field& f = x.field();
  HomComplex out;
  if (x.empty() || y.empty()) {
    out.complex = Complex(x.algebra(), 0, {}, {}, true, true, false);
    return out;
  }
  DegreeRange r = hom_range(x, y);
  std::vector<Module> terms;
  for (long n = r.lo; n <= r.hi; ++n) {
    BlockLayout lay;
    std::vector<HomSpace> ps;
    Module total = zero_module(x.algebra());
    for (long i = x.lo(); i <= x.hi(); ++i) {
      if (!y.in_window(n + i)) continue;
      HomSpace h = hom_module(x.term(i), y.term(n + i));
      lay.index.push_back(i);
      lay.offset.push_back(lay.total);
      lay.total += h.module.dim();
      total = direct_sum(total, h.module);
      ps.push_back(std::move(h));
    }
    out.layout.push_back(std::move(lay));
    out.pieces.push_back(std::move(ps));
    terms.push_back(std::move(total));
  }
  std::vector<Matrix> diffs;
  for (long n = r.lo + 1; n <= r.hi; ++n) {
    const BlockLayout& src = out.layout[n - r.lo];
    const BlockLayout& dst = out.layout[n - 1 - r.lo];
    Matrix dm(dst.total, src.total, f);
    const Scalar s = f.neg(hom_sign(f, n));
    for (std::size_t k = 0; k < src.index.size(); ++k) {
      long i = src.index[k];
      const HomSpace& hp = out.pieces[n - r.lo][k];
      // component i of d(phi): d^Y phi
      if (auto j = dst.find(i)) {
        const HomSpace& hq = out.pieces[n - 1 - r.lo][*j];
        dm.add_block(dst.offset[*j], src.offset[k], hom_post(hp, hq, y.d(n + i)));
      }
      // component i+1 of d(phi): -(-1)^n phi d^X_{i+1}
      if (auto j = dst.find(i + 1)) {
        const HomSpace& hq = out.pieces[n - 1 - r.lo][*j];
        dm.add_block(dst.offset[*j], src.offset[k], hom_pre(hp, hq, x.d(i + 1)).scaled(s));
      }
    }
    diffs.push_back(std::move(dm));
  }
  out.complex = Complex(x.algebra(), r.lo, std::move(terms), std::move(diffs), r.bounded_below, r.bounded_above, false);
  return out;
}

inline Complex hom_complex(const Complex& x, const Complex& y) { return hom_complex_full(x, y).complex; }

/// Coproduct version; on finite windows every degree has finitely many blocks, so it agrees with hom_complex.
inline Complex bounded_hom_complex(const Complex& x, const Complex& y) { return hom_complex(x, y); }

inline bool is_subcomplex(const Complex& x, const std::vector<Subspace>& a) {
  if (a.size() != x.terms().size()) return false;
  for (long n = x.lo(); n <= x.hi(); ++n) {
    const Subspace& s = a[n - x.lo()];
    if (s.ambient_dim() != x.dim(n) || !is_submodule(x.term(n), s)) return false;
    if (x.in_window(n - 1)) {
      const Subspace& t = a[n - 1 - x.lo()];
      Matrix img = x.d(n) * s.basis_columns();
      for (std::size_t c = 0; c < img.cols(); ++c)
        if (!t.contains(img.col(c))) return false;
    }
  }
  return true;
}

/// Degreewise quotient X / A with the induced differential.
inline Complex quotient_complex(const Complex& x, const std::vector<Subspace>& a) {
  require(is_subcomplex(x, a), ErrorKind::NotSubcomplex, "quotient by a non-subcomplex");
  std::vector<SubQuotient> qs;
  std::vector<Module> terms;
  for (long n = x.lo(); n <= x.hi(); ++n) {
    qs.push_back(quotient_module(x.term(n), a[n - x.lo()]));
    terms.push_back(qs.back().module);
  }
  std::vector<Matrix> diffs;
  for (long n = x.lo() + 1; n <= x.hi(); ++n) {
    const SubQuotient& src = qs[n - x.lo()];
    const SubQuotient& dst = qs[n - 1 - x.lo()];
    diffs.push_back(dst.classes_of_columns(x.d(n) * src.representatives()));
  }
  return Complex(x.algebra(), x.lo(), std::move(terms), std::move(diffs), x.bounded_below(), x.bounded_above(), false);
}

/// (dual X)_n = dual(X_{-n}) with transposed differentials.
inline Complex dual_complex(const Complex& x) {
  if (x.empty()) return x;
  std::vector<Module> terms;
  std::vector<Matrix> diffs;
  for (long n = -x.hi(); n <= -x.lo(); ++n) {
    terms.push_back(dual_module(x.term(-n)));
    if (n > -x.hi()) diffs.push_back(x.d(-n + 1).transposed());
  }
  return Complex(x.algebra(), -x.hi(), std::move(terms), std::move(diffs), x.bounded_above(), x.bounded_below(), false);
}

inline Complex direct_sum(const Complex& x, const Complex& y) {
  require(x.lo() == y.lo() && x.hi() == y.hi(), ErrorKind::DimensionMismatch, "direct sum needs equal windows");
  std::vector<Module> terms;
  std::vector<Matrix> diffs;
  for (long n = x.lo(); n <= x.hi(); ++n) {
    terms.push_back(direct_sum(x.term(n), y.term(n)));
    if (n > x.lo()) diffs.push_back(block_diag(x.d(n), y.d(n)));
  }
  return Complex(x.algebra(), x.lo(), std::move(terms), std::move(diffs), x.bounded_below() && y.bounded_below(),
                 x.bounded_above() && y.bounded_above(), false);
}

/// H_n = 0 at every n whose homology is determined by the window.
inline bool is_exact_on(const Complex& x, long a, long b) {
  for (long n = a; n <= b; ++n)
    if (homology_subquotient(x, n).module.dim() != 0) return false;
  return true;
}

/// Seeded random finite complex: terms drawn from `pool`, each d_{n+1} a uniformly random
/// element of {phi : d_n phi = 0}.
template <class Rng>
Complex random_complex(const std::vector<Module>& pool, long lo, std::size_t length, std::size_t max_summands,
                       Rng& rng) {
  require(!pool.empty(), ErrorKind::InvalidArgument, "random complex needs a module pool");
  const AlgebraPtr& alg = pool.front().algebra();
  const Field& f = alg->field();
  std::vector<Module> terms;
  for (std::size_t k = 0; k < length; ++k) {
    Module m = zero_module(alg);
    std::size_t summands = 1 + rng() % max_summands;
    for (std::size_t s = 0; s < summands; ++s) m = direct_sum(m, pool[rng() % pool.size()]);
    terms.push_back(std::move(m));
  }
  std::vector<Matrix> diffs;
  for (std::size_t k = 1; k < length; ++k) {
    HomSpace h = hom_module(terms[k], terms[k - 1]);
    // constraint: previous differential composed with phi vanishes
    std::vector<Matrix> admissible;
    if (k >= 2) {
      const Matrix& prev = diffs.back();
      Matrix comp(prev.rows() * terms[k].dim(), h.basis.size(), f);
      for (std::size_t b = 0; b < h.basis.size(); ++b) {
        Matrix c = prev * h.basis[b];
        for (std::size_t r = 0; r < c.rows(); ++r)
          for (std::size_t cc = 0; cc < c.cols(); ++cc) comp(r * c.cols() + cc, b) = c(r, cc);
      }
      Subspace ker = kernel(comp);
      for (std::size_t i = 0; i < ker.dim(); ++i) admissible.push_back(h.element(ker.vec(i)));
    } else {
      admissible = h.basis;
    }
    Matrix d(terms[k - 1].dim(), terms[k].dim(), f);
    for (auto& a : admissible) d = d + a.scaled(static_cast<Scalar>(rng() % f.p()));
    diffs.push_back(std::move(d));
  }
  return Complex(alg, lo, std::move(terms), std::move(diffs), true, true);
}

}  // namespace stablehom

#endif  // STABLEHOM_CHAINCX_HPP
