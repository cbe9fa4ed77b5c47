#ifndef STABLEHOM_ALGMOD_HPP
#define STABLEHOM_ALGMOD_HPP

// Finite-dimensional commutative local F_p-algebras, their finite modules,
// module maps, Hom, tensor and Matlis duality.
//
// Conventions: an algebra element is a coordinate vector over the basis.
// A module of dimension m carries one m x m action matrix per algebra basis
// element, acting on column vectors. A module map M -> N is a dim(N) x dim(M)
// matrix. Direct sums of copies are laid out copy-major.

#include <cstddef>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "stablehom/error.hpp"
#include "stablehom/exactla.hpp"

namespace stablehom {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// First failing axiom of a structure-constant table.
struct AxiomFailure {
  std::string axiom;           // "associativity", "commutativity", "unit", "local"
  std::vector<std::size_t> basis_indices;
  std::string message;
};

class Algebra {
 public:
  /// Validates every axiom; throws Error(AxiomViolation) naming the failing basis triple.
  static AlgebraPtr create(Field field, std::vector<std::string> labels,
                           std::vector<std::vector<Vector>> mul, Vector unit) {
    auto a = std::shared_ptr<Algebra>(new Algebra(field, std::move(labels), std::move(mul), std::move(unit)));
    if (auto fail = a->check_axioms()) throw Error(ErrorKind::AxiomViolation, fail->message);
    a->finish_local_structure();
    return a;
  }

  /// Same as create but returns the failure instead of throwing.
  static std::pair<AlgebraPtr, std::optional<AxiomFailure>> try_create(
      Field field, std::vector<std::string> labels, std::vector<std::vector<Vector>> mul, Vector unit) {
    auto a = std::shared_ptr<Algebra>(new Algebra(field, std::move(labels), std::move(mul), std::move(unit)));
    if (auto fail = a->check_axioms()) return {nullptr, fail};
    a->finish_local_structure();
    return {a, std::nullopt};
  }

  static AlgebraPtr prime_field(Field f) {
    return create(f, {"1"}, {{Vector{1}}}, Vector{1});
  }

  const Field& field() const { return field_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vector& product(std::size_t i, std::size_t j) const { return mul_[i][j]; }
  const Vector& unit() const { return unit_; }
  const Matrix& left_mult(std::size_t i) const { return left_[i]; }

  Matrix left_mult(const Vector& a) const {
    Matrix m(dim(), dim(), field_);
    for (std::size_t i = 0; i < dim(); ++i)
      if (a[i]) m = m + left_[i].scaled(a[i]);
    return m;
  }
  Vector multiply(const Vector& a, const Vector& b) const { return left_mult(a).apply(b); }
  Vector basis_vector(std::size_t i) const {
    Vector v(dim(), 0);
    v[i] = 1;
    return v;
  }

  /// Image of basis element i in the residue field R/m.
  Scalar residue(std::size_t i) const { return residue_[i]; }
  /// Maximal ideal m (the nilpotent elements).
  const Subspace& radical() const { return radical_; }
  /// Socle {r : r m = 0}.
  Subspace socle() const {
    Matrix stacked(0, dim(), field_);
    for (std::size_t i = 0; i < radical_.dim(); ++i) stacked = vstack(stacked, left_mult(radical_.vec(i)));
    return kernel(stacked);
  }

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.field_ == b.field_ && a.mul_ == b.mul_ && a.unit_ == b.unit_;
  }

  std::optional<AxiomFailure> check_axioms() const {
    const std::size_t d = dim();
    const Field& f = field_;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (mul_[i][j] != mul_[j][i])
          return AxiomFailure{"commutativity", {i, j},
                              "commutativity fails for (" + labels_[i] + ", " + labels_[j] + ")"};
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          Vector lhs = left_mult(mul_[i][j]).apply(basis_vector(k));  // (b_i b_j) b_k
          Vector rhs = left_[i].apply(mul_[j][k]);                    // b_i (b_j b_k)
          if (lhs != rhs)
            return AxiomFailure{"associativity", {i, j, k},
                                "associativity fails for (" + labels_[i] + ", " + labels_[j] + ", " +
                                    labels_[k] + ")"};
        }
    for (std::size_t i = 0; i < d; ++i)
      if (multiply(unit_, basis_vector(i)) != basis_vector(i))
        return AxiomFailure{"unit", {i}, "unit fails on " + labels_[i]};
    // Local with residue field F_p: every basis element is lambda*1 + nilpotent.
    for (std::size_t i = 0; i < d; ++i) {
      auto lam = find_residue(i);
      if (!lam)
        return AxiomFailure{"local", {i}, "basis element " + labels_[i] + " has no residue in F_p"};
    }
    Subspace m = candidate_radical();
    if (m.dim() + 1 != d)
      return AxiomFailure{"local", {}, "nilpotent part does not have codimension 1"};
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t r = 0; r < m.dim(); ++r)
        if (!m.contains(left_[i].apply(m.vec(r))))
          return AxiomFailure{"local", {i}, "nilpotent elements do not form an ideal"};
    (void)f;
    return std::nullopt;
  }

 private:
  Algebra(Field field, std::vector<std::string> labels, std::vector<std::vector<Vector>> mul, Vector unit)
      : field_(field), labels_(std::move(labels)), mul_(std::move(mul)), unit_(std::move(unit)) {
    const std::size_t d = labels_.size();
    require(d > 0, ErrorKind::InvalidArgument, "algebra of dimension 0");
    require(mul_.size() == d && unit_.size() == d, ErrorKind::DimensionMismatch, "structure constants");
    for (auto& row : mul_) {
      require(row.size() == d, ErrorKind::DimensionMismatch, "structure constants");
      for (auto& v : row) {
        require(v.size() == d, ErrorKind::DimensionMismatch, "structure constant vector");
        for (auto& s : v) s %= field_.p();
      }
    }
    for (auto& s : unit_) s %= field_.p();
    for (std::size_t i = 0; i < d; ++i) {
      Matrix l(d, d, field_);
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) l(k, j) = mul_[i][j][k];
      left_.push_back(std::move(l));
    }
  }

  static bool nilpotent(const Matrix& m) {
    Matrix pw = m;
    for (std::size_t k = 1; k < m.rows() && !pw.is_zero(); ++k) pw = pw * m;
    return pw.is_zero();
  }

  std::optional<Scalar> find_residue(std::size_t i) const {
    const std::size_t d = dim();
    const Matrix id = Matrix::identity(d, field_);
    auto test = [&](Scalar lam) { return nilpotent(left_[i] - id.scaled(lam)); };
    if (field_.p() <= 65536) {
      for (Scalar lam = 0; lam < field_.p(); ++lam)
        if (test(lam)) return lam;
      return std::nullopt;
    }
    Scalar tr = 0;
    for (std::size_t k = 0; k < d; ++k) tr = field_.add(tr, left_[i](k, k));
    require(d % field_.p() != 0, ErrorKind::InvalidArgument, "residue search unsupported for this p");
    Scalar lam = field_.mul(tr, field_.inv(static_cast<Scalar>(d % field_.p())));
    if (test(lam)) return lam;
    return std::nullopt;
  }

  Subspace candidate_radical() const {
    std::vector<Vector> gens;
    for (std::size_t i = 0; i < dim(); ++i) {
      Scalar lam = *find_residue(i);
      Vector v = basis_vector(i);
      for (std::size_t k = 0; k < dim(); ++k) v[k] = field_.sub(v[k], field_.mul(lam, unit_[k]));
      gens.push_back(v);
    }
    return Subspace::span(gens, dim(), field_);
  }

  void finish_local_structure() {
    for (std::size_t i = 0; i < dim(); ++i) residue_.push_back(*find_residue(i));
    radical_ = candidate_radical();
  }

  Field field_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Vector>> mul_;
  Vector unit_;
  std::vector<Matrix> left_;
  std::vector<Scalar> residue_;
  Subspace radical_;
};

/// F_p[x]/(x^n), basis 1, x, ..., x^{n-1}.
inline AlgebraPtr truncated_polynomial(Field f, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
  std::vector<std::vector<Vector>> mul(n, std::vector<Vector>(n, Vector(n, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i + j < n) mul[i][j][i + j] = 1;
  Vector unit(n, 0);
  unit[0] = 1;
  return Algebra::create(f, labels, mul, unit);
}

/// F_p[x_1..x_e]/(x_1..x_e)^2, basis 1, x_1, ..., x_e.
inline AlgebraPtr radical_square_zero(Field f, std::size_t e) {
  const std::size_t n = e + 1;
  std::vector<std::string> labels{"1"};
  static const char* names = "xyzwuv";
  for (std::size_t i = 0; i < e; ++i)
    labels.push_back(e <= 6 ? std::string(1, names[i]) : "x" + std::to_string(i + 1));
  std::vector<std::vector<Vector>> mul(n, std::vector<Vector>(n, Vector(n, 0)));
  for (std::size_t i = 0; i < n; ++i) {
    mul[0][i][i] = 1;
    mul[i][0][i] = 1;
  }
  Vector unit(n, 0);
  unit[0] = 1;
  return Algebra::create(f, labels, mul, unit);
}

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || (a && b && *a == *b);
}

class Module {
 public:
  Module() = default;
  Module(AlgebraPtr alg, std::size_t dim, std::vector<Matrix> action)
      : alg_(std::move(alg)), dim_(dim), action_(std::move(action)) {
    require(alg_ != nullptr, ErrorKind::InvalidArgument, "module without algebra");
    require(action_.size() == alg_->dim(), ErrorKind::DimensionMismatch, "one action matrix per basis element");
    for (auto& a : action_)
      require(a.rows() == dim_ && a.cols() == dim_, ErrorKind::DimensionMismatch, "action matrix shape");
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const Field& field() const { return alg_->field(); }
  std::size_t dim() const { return dim_; }
  const Matrix& action(std::size_t i) const { return action_[i]; }
  const std::vector<Matrix>& actions() const { return action_; }

  /// Action of an arbitrary algebra element.
  Matrix act(const Vector& r) const {
    Matrix m(dim_, dim_, field());
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i]) m = m + action_[i].scaled(r[i]);
    return m;
  }

  /// Module axioms: unit acts as identity, actions multiply and commute like the basis.
  std::optional<std::string> check_axioms() const {
    const Algebra& a = *alg_;
    if (act(a.unit()) != Matrix::identity(dim_, field())) return "unit does not act as the identity";
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) {
        if (action_[i] * action_[j] != act(a.product(i, j)))
          return "action of " + a.labels()[i] + "*" + a.labels()[j] + " is not the product of actions";
      }
    return std::nullopt;
  }

  friend bool operator==(const Module& x, const Module& y) {
    return same_algebra(x.alg_, y.alg_) && x.dim_ == y.dim_ && x.action_ == y.action_;
  }

 private:
  AlgebraPtr alg_;
  std::size_t dim_ = 0;
  std::vector<Matrix> action_;
};

struct ModuleMap {
  Module source;
  Module target;
  Matrix matrix;

  bool is_homomorphism() const {
    if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) return false;
    for (std::size_t b = 0; b < source.algebra()->dim(); ++b)
      if (matrix * source.action(b) != target.action(b) * matrix) return false;
    return true;
  }
};

inline void require_same_algebra(const Module& m, const Module& n) {
  require(same_algebra(m.algebra(), n.algebra()), ErrorKind::AlgebraMismatch, "modules over different algebras");
}

inline Module zero_module(const AlgebraPtr& alg) {
  return Module(alg, 0, std::vector<Matrix>(alg->dim(), Matrix(0, 0, alg->field())));
}

inline Module regular_module(const AlgebraPtr& alg) {
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < alg->dim(); ++i) act.push_back(alg->left_mult(i));
  return Module(alg, alg->dim(), std::move(act));
}

inline bool is_regular(const Module& m) { return m == regular_module(m.algebra()); }

inline Module direct_sum(const Module& m, const Module& n) {
  require_same_algebra(m, n);
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i) act.push_back(block_diag(m.action(i), n.action(i)));
  return Module(m.algebra(), m.dim() + n.dim(), std::move(act));
}

/// n copies of a module, copy-major.
inline Module power(const Module& m, std::size_t n) {
  const Field& f = m.field();
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i) act.push_back(kron(Matrix::identity(n, f), m.action(i)));
  return Module(m.algebra(), m.dim() * n, std::move(act));
}

inline Module free_module(const AlgebraPtr& alg, std::size_t n) { return power(regular_module(alg), n); }

/// Residue field k = R/m as a module.
inline Module residue_module(const AlgebraPtr& alg) {
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    Matrix a(1, 1, alg->field());
    a(0, 0) = alg->residue(i);
    act.push_back(a);
  }
  return Module(alg, 1, std::move(act));
}

inline bool is_submodule(const Module& m, const Subspace& s) {
  for (std::size_t b = 0; b < m.algebra()->dim(); ++b)
    for (std::size_t r = 0; r < s.dim(); ++r)
      if (!s.contains(m.action(b).apply(s.vec(r)))) return false;
  return true;
}

/// Z / B for R-stable subspaces B <= Z of a module, with coordinate helpers.
struct SubQuotient {
  Module module;
  Subspace cycles;     // Z, in ambient coordinates
  Subspace boundaries; // B, in ambient coordinates
  Quotient zq;         // quotient of Z-coordinates by B-coordinates

  /// Class of an ambient vector lying in Z.
  Vector class_of(const Vector& v) const { return zq.proj.apply(cycles.coords(v)); }
  /// Ambient representatives of the module basis, as columns.
  Matrix representatives() const { return cycles.basis_columns() * zq.lift; }
  /// Classes of the ambient columns of m (each column must lie in Z).
  Matrix classes_of_columns(const Matrix& m) const { return zq.proj * cycles.coords_of_columns(m); }
};

/// Subquotient of a vector space with the action given by `actions` (possibly empty for plain spaces).
inline SubQuotient subquotient(const AlgebraPtr& alg, const std::vector<Matrix>& actions, const Subspace& z,
                               const Subspace& b) {
  const Field& f = alg->field();
  Matrix bz = z.coords_of_columns(b.basis_columns());
  Quotient q = quotient_basis(Subspace::span_columns(bz.cols() ? bz : Matrix(z.dim(), 0, f)));
  Matrix reps = z.basis_columns() * q.lift;
  std::vector<Matrix> act;
  for (std::size_t i = 0; i < actions.size(); ++i)
    act.push_back(q.proj * z.coords_of_columns(actions[i] * reps));
  if (actions.empty()) {
    // Plain vector space: the algebra must be F_p itself.
    require(alg->dim() == 1, ErrorKind::InvalidArgument, "subquotient without actions over a non-field");
    act.push_back(Matrix::identity(q.proj.rows(), f));
  }
  return {Module(alg, q.proj.rows(), std::move(act)), z, b, std::move(q)};
}

inline SubQuotient subquotient(const Module& m, const Subspace& z, const Subspace& b) {
  return subquotient(m.algebra(), m.actions(), z, b);
}

inline Module submodule(const Module& m, const Subspace& s) {
  require(is_submodule(m, s), ErrorKind::InvalidArgument, "subspace is not a submodule");
  return subquotient(m, s, Subspace(m.dim(), m.field())).module;
}

inline SubQuotient quotient_module(const Module& m, const Subspace& s) {
  require(is_submodule(m, s), ErrorKind::InvalidArgument, "subspace is not a submodule");
  return subquotient(m, Subspace::full(m.dim(), m.field()), s);
}

inline Subspace radical_submodule(const Module& m) {
  const Algebra& a = *m.algebra();
  Matrix cols(m.dim(), 0, m.field());
  for (std::size_t r = 0; r < a.radical().dim(); ++r) cols = hstack(cols, m.act(a.radical().vec(r)));
  return Subspace::span_columns(cols);
}

/// m S for a subspace S of a module.
inline Subspace radical_of(const Module& m, const Subspace& s) {
  const Algebra& a = *m.algebra();
  Matrix cols(m.dim(), 0, m.field());
  Matrix sb = s.basis_columns();
  for (std::size_t r = 0; r < a.radical().dim(); ++r) cols = hstack(cols, m.act(a.radical().vec(r)) * sb);
  return Subspace::span_columns(cols);
}

/// Canonical minimal generating set of a submodule S of m: the echelon basis vectors of S
/// that are independent modulo m S, chosen greedily in echelon order.
inline std::vector<Vector> minimal_generators(const Module& m, const Subspace& s) {
  Subspace ms = radical_of(m, s);
  Matrix cols = hstack(ms.basis_columns(), s.basis_columns());
  Echelon e = echelon(cols);
  std::vector<Vector> gens;
  for (auto c : e.pivots)
    if (c >= ms.dim()) gens.push_back(s.vec(c - ms.dim()));
  return gens;
}

/// Top M / mM with its projection.
inline SubQuotient minimal_generators(const Module& m) {
  return quotient_module(m, radical_submodule(m));
}

/// Map R^t -> m sending the c-th generator to gens[c].
inline Matrix map_from_free(const Module& m, const std::vector<Vector>& gens) {
  const Algebra& a = *m.algebra();
  Matrix out(m.dim(), gens.size() * a.dim(), m.field());
  for (std::size_t c = 0; c < gens.size(); ++c)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Vector img = m.action(j).apply(gens[c]);
      for (std::size_t r = 0; r < m.dim(); ++r) out(r, c * a.dim() + j) = img[r];
    }
  return out;
}

/// Free cover F -> M with superfluous kernel.
inline ModuleMap projective_cover(const Module& m) {
  auto gens = minimal_generators(m, Subspace::full(m.dim(), m.field()));
  Module f = free_module(m.algebra(), gens.size());
  return {f, m, map_from_free(m, gens)};
}

inline Module dual_module(const Module& m) {
  std::vector<Matrix> act;
  for (auto& a : m.actions()) act.push_back(a.transposed());
  return Module(m.algebra(), m.dim(), std::move(act));
}

/// f : M -> N gives f^T : N^v -> M^v.
inline ModuleMap dual_map(const ModuleMap& f) {
  return {dual_module(f.target), dual_module(f.source), f.matrix.transposed()};
}

/// Injective hull M -> E^t, E = dual of R, obtained by dualizing the cover of the dual.
inline ModuleMap injective_hull(const Module& m) {
  ModuleMap cover = projective_cover(dual_module(m));
  return {m, dual_module(cover.source), cover.matrix.transposed()};
}

/// Hom_R(M, N) as a module, with an explicit basis of intertwiners.
struct HomSpace {
  Module source, target;
  Module module;
  std::vector<Matrix> basis;  // dim(N) x dim(M) matrices
  Subspace solutions;         // row-major vectorized intertwiners
  bool canonical_regular = false;

  Vector coords(const Matrix& phi) const {
    if (canonical_regular) return phi.apply(source.algebra()->unit());
    Vector v(phi.rows() * phi.cols());
    for (std::size_t r = 0; r < phi.rows(); ++r)
      for (std::size_t c = 0; c < phi.cols(); ++c) v[r * phi.cols() + c] = phi(r, c);
    return solutions.coords(v);
  }
  Matrix element(const Vector& c) const {
    Matrix m(target.dim(), source.dim(), target.field());
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k]) m = m + basis[k].scaled(c[k]);
    return m;
  }
  bool contains(const Matrix& phi) const {
    if (phi.rows() != target.dim() || phi.cols() != source.dim()) return false;
    return ModuleMap{source, target, phi}.is_homomorphism();
  }
};

inline HomSpace hom_module(const Module& m, const Module& n) {
  require_same_algebra(m, n);
  const Field& f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim(), d = m.algebra()->dim();
  HomSpace h{m, n, Module(), {}, Subspace(), false};
  if (is_regular(m)) {
    // Hom(R, N) = N through evaluation at 1; basis phi_j(r) = r e_j.
    for (std::size_t j = 0; j < dn; ++j) {
      Matrix phi(dn, d, f);
      for (std::size_t i = 0; i < d; ++i) {
        Vector col = n.action(i).col(j);
        for (std::size_t r = 0; r < dn; ++r) phi(r, i) = col[r];
      }
      h.basis.push_back(std::move(phi));
    }
    h.module = n;
    h.canonical_regular = true;
    return h;
  }
  Matrix eqs(0, dn * dm, f);
  for (std::size_t b = 0; b < d; ++b)
    eqs = vstack(eqs, kron(Matrix::identity(dn, f), m.action(b).transposed()) -
                          kron(n.action(b), Matrix::identity(dm, f)));
  h.solutions = kernel(eqs);
  for (std::size_t k = 0; k < h.solutions.dim(); ++k) {
    Matrix phi(dn, dm, f);
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) phi(r, c) = h.solutions.basis()(k, r * dm + c);
    h.basis.push_back(std::move(phi));
  }
  std::vector<Matrix> act;
  for (std::size_t b = 0; b < d; ++b) {
    Matrix a(h.basis.size(), h.basis.size(), f);
    for (std::size_t k = 0; k < h.basis.size(); ++k) {
      Vector c = h.coords(n.action(b) * h.basis[k]);
      for (std::size_t r = 0; r < c.size(); ++r) a(r, k) = c[r];
    }
    act.push_back(std::move(a));
  }
  h.module = Module(m.algebra(), h.basis.size(), std::move(act));
  return h;
}

/// Hom(C, f) : Hom(C, A) -> Hom(C, B), post-composition.
inline Matrix hom_post(const HomSpace& from, const HomSpace& to, const Matrix& f) {
  Matrix out(to.module.dim(), from.module.dim(), f.field());
  for (std::size_t k = 0; k < from.basis.size(); ++k) {
    Vector c = to.coords(f * from.basis[k]);
    for (std::size_t r = 0; r < c.size(); ++r) out(r, k) = c[r];
  }
  return out;
}

/// Hom(f, Z) : Hom(B, Z) -> Hom(A, Z), pre-composition with f : A -> B.
inline Matrix hom_pre(const HomSpace& from, const HomSpace& to, const Matrix& f) {
  Matrix out(to.module.dim(), from.module.dim(), f.field());
  for (std::size_t k = 0; k < from.basis.size(); ++k) {
    Vector c = to.coords(from.basis[k] * f);
    for (std::size_t r = 0; r < c.size(); ++r) out(r, k) = c[r];
  }
  return out;
}

/// M (x)_R N with the canonical surjection from the F_p tensor product (index i*dim N + j).
struct TensorProduct {
  Module left, right;
  Module module;
  Matrix proj;  // dim T x (dim M * dim N)
  Matrix lift;  // (dim M * dim N) x dim T
};

inline TensorProduct tensor_module(const Module& m, const Module& n) {
  require_same_algebra(m, n);
  const Field& f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim(), d = m.algebra()->dim();
  if (is_regular(m)) {
    // R (x) N = N through r (x) n -> r n.
    Matrix proj(dn, d * dn, f), lift(d * dn, dn, f);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < dn; ++j) {
        Vector col = n.action(i).col(j);
        for (std::size_t r = 0; r < dn; ++r) proj(r, i * dn + j) = col[r];
        lift(i * dn + j, j) = m.algebra()->unit()[i];
      }
    return {m, n, n, std::move(proj), std::move(lift)};
  }
  Matrix rel(dm * dn, 0, f);
  for (std::size_t b = 0; b < d; ++b)
    rel = hstack(rel, kron(m.action(b), Matrix::identity(dn, f)) - kron(Matrix::identity(dm, f), n.action(b)));
  Quotient q = quotient_basis(image(rel));
  std::vector<Matrix> act;
  for (std::size_t b = 0; b < d; ++b) act.push_back(q.proj * kron(m.action(b), Matrix::identity(dn, f)) * q.lift);
  Module t(m.algebra(), q.proj.rows(), std::move(act));
  return {m, n, std::move(t), std::move(q.proj), std::move(q.lift)};
}

/// f (x) g : M (x) N -> M' (x) N'.
inline Matrix tensor_maps(const TensorProduct& src, const TensorProduct& dst, const Matrix& f, const Matrix& g) {
  return dst.proj * kron(f, g) * src.lift;
}

enum class IsoStatus { Isomorphic, NotIsomorphic, Undecided };

inline const char* to_string(IsoStatus s) {
  switch (s) {
    case IsoStatus::Isomorphic: return "isomorphic";
    case IsoStatus::NotIsomorphic: return "not-isomorphic";
    case IsoStatus::Undecided: return "undecided";
  }
  return "?";
}

struct IsoResult {
  IsoStatus status;
  std::optional<Matrix> witness;  // an invertible module map M -> N
};

/// Decides M = N: invariants first, then seeded random search in Hom(M, N),
/// then exhaustive search when |Hom(M, N)| <= 2^20.
inline IsoResult is_isomorphic(const Module& m, const Module& n, std::uint64_t seed = 0x5eed) {
  require_same_algebra(m, n);
  if (m.dim() != n.dim()) return {IsoStatus::NotIsomorphic, std::nullopt};
  if (m == n) return {IsoStatus::Isomorphic, Matrix::identity(m.dim(), m.field())};
  if (radical_submodule(m).dim() != radical_submodule(n).dim()) return {IsoStatus::NotIsomorphic, std::nullopt};
  HomSpace mn = hom_module(m, n);
  const std::size_t hdim = mn.basis.size();
  if (hdim != hom_module(m, m).basis.size() || hdim != hom_module(n, n).basis.size())
    return {IsoStatus::NotIsomorphic, std::nullopt};
  const Field& f = m.field();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Scalar> coef(0, f.p() - 1);
  for (int t = 0; t < 64; ++t) {
    Vector c(hdim);
    for (auto& x : c) x = coef(rng);
    Matrix phi = mn.element(c);
    if (is_invertible(phi)) return {IsoStatus::Isomorphic, phi};
  }
  double log2size = static_cast<double>(hdim) * std::log2(static_cast<double>(f.p()));
  if (log2size > 20.0) return {IsoStatus::Undecided, std::nullopt};
  Vector c(hdim, 0);
  while (true) {
    Matrix phi = mn.element(c);
    if (is_invertible(phi)) return {IsoStatus::Isomorphic, phi};
    std::size_t k = 0;
    while (k < hdim && ++c[k] == f.p()) c[k++] = 0;
    if (k == hdim) break;
  }
  return {IsoStatus::NotIsomorphic, std::nullopt};
}

/// R is Gorenstein (self-injective) iff dual(R) = R.
inline IsoStatus is_gorenstein(const AlgebraPtr& alg) {
  return is_isomorphic(dual_module(regular_module(alg)), regular_module(alg)).status;
}

}  // namespace stablehom

#endif  // STABLEHOM_ALGMOD_HPP
