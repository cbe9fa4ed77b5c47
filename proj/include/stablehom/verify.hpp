#ifndef STABLEHOM_VERIFY_HPP
#define STABLEHOM_VERIFY_HPP

// Theorem harness. Isomorphism statements are checked as exact complex maps; vanishing and balance
// statements are checked over declared sample sets, where the absence of a witness is reported as
// inconclusive and never as verified.

#include <array>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stablehom/io.hpp"
#include "stablehom/storengine.hpp"

namespace stablehom {

enum class Outcome { Verified, Refuted, Inconclusive };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Verified: return "verified";
    case Outcome::Refuted: return "refuted";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct Instance {
  std::string label;
  Outcome outcome = Outcome::Inconclusive;
  std::string detail;
  std::string witness;  // serialized inputs; always present on refuted outcomes
  std::vector<std::string> statuses;
};

struct TheoremReport {
  std::string theorem;
  std::vector<Instance> instances;

  std::size_t count(Outcome o) const {
    return std::size_t(std::count_if(instances.begin(), instances.end(), [o](const Instance& i) { return i.outcome == o; }));
  }
  Outcome overall() const {
    if (count(Outcome::Refuted)) return Outcome::Refuted;
    if (instances.empty() || count(Outcome::Inconclusive)) return Outcome::Inconclusive;
    return Outcome::Verified;
  }
  void merge(const TheoremReport& other) {
    instances.insert(instances.end(), other.instances.begin(), other.instances.end());
  }
};

struct HarnessParams {
  long lo = -4, hi = 4;
  long length = 16, depth = 16;
  std::size_t window = 3;
  std::size_t max_cell_dim = 4096;
  long horizon = 12;  // for dimension classification
  std::uint64_t seed = 1;
};

struct Sample {
  std::string label;
  Module module;
};

namespace detail {

inline Matrix selector(std::size_t rows, std::size_t offset, std::size_t total, const Field& f) {
  Matrix s(rows, total, f);
  for (std::size_t r = 0; r < rows; ++r) s(r, offset + r) = 1;
  return s;
}

inline Matrix embedding(std::size_t offset, std::size_t cols, std::size_t total, const Field& f) {
  return selector(cols, offset, total, f).transposed();
}

inline std::string witness_modules(const std::vector<std::pair<std::string, Module>>& ms) {
  std::ostringstream out;
  out << write_ring(*ms.front().second.algebra());
  for (auto& [name, m] : ms) out << "# " << name << "\n" << write_module(m);
  return out.str();
}

inline std::string witness_complexes(const std::vector<std::pair<std::string, Complex>>& cs) {
  std::ostringstream out;
  out << write_ring(*cs.front().second.algebra());
  for (auto& [name, c] : cs) out << "# " << name << "\n" << write_complex(c);
  return out.str();
}

inline std::string witness_tower(const Tower& t) {
  std::ostringstream out;
  out << "tower " << (t.direction == Direction::Inverse ? "inverse" : "direct") << "\n";
  for (std::size_t i = 0; i < t.transitions.size(); ++i) {
    out << "transition " << i << " " << t.transitions[i].rows() << " " << t.transitions[i].cols() << "\n";
    write_matrix(out, t.transitions[i], "  ");
  }
  return out.str();
}

inline std::string status_line(const std::string& what, const DegreeReport& d) {
  std::string v = d.has_dim() ? std::to_string(d.dim) : to_string(d.kind);
  return what + "_" + std::to_string(d.n) + " = " + v + " [" + to_string(d.status) + "]";
}

inline bool both_sides_empty(const Complex& a, const Complex& b) {
  auto zero = [](const Complex& c) {
    for (const auto& t : c.terms())
      if (t.dim()) return false;
    return true;
  };
  return zero(a) && zero(b);
}

}  // namespace detail

/// Splits a witness into its sections: "ring" first, then one entry per "# name" header.
inline std::vector<std::pair<std::string, std::string>> split_witness(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out = {{"ring", ""}};
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      out.push_back({line.substr(2), ""});
      continue;
    }
    out.back().second += line + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// associativity and adjunction of complexes

/// (X (x) Y) (x) Z -> X (x) (Y (x) Z), (x (x) y) (x) z -> x (x) (y (x) z). No sign is needed.
inline ComplexMap associator(const Complex& x, const Complex& y, const Complex& z) {
  const Field& f = x.field();
  TensorComplex xy = tensor_complex_full(x, y), yz = tensor_complex_full(y, z);
  TensorComplex l = tensor_complex_full(xy.complex, z), r = tensor_complex_full(x, yz.complex);
  ComplexMap out{l.complex, r.complex, l.complex.empty() ? 0 : l.complex.lo(), {}};
  if (l.complex.empty() || r.complex.empty()) return out;
  require(l.complex.lo() == r.complex.lo() && l.complex.hi() == r.complex.hi(), ErrorKind::InsufficientWindow,
          "associator: windows of the two triple products differ");
  for (long n = l.complex.lo(); n <= l.complex.hi(); ++n) {
    const BlockLayout& ll = l.layout_at(n);
    const BlockLayout& rl = r.layout_at(n);
    Matrix a(rl.total, ll.total, f);
    for (std::size_t k = 0; k < ll.index.size(); ++k) {
      const long j = ll.index[k];
      const TensorProduct& s = l.piece(n, k);
      const std::size_t dz = z.dim(n - j);
      const BlockLayout& wl = xy.layout_at(j);
      for (std::size_t u = 0; u < wl.index.size(); ++u) {
        const long i = wl.index[u], q = j - i;
        const TensorProduct& pin = xy.piece(j, u);
        auto t = rl.find(i);
        require(t && yz.complex.in_window(n - i), ErrorKind::InsufficientWindow, "associator target block");
        const BlockLayout& vl = yz.layout_at(n - i);
        auto v = vl.find(q);
        require(v.has_value(), ErrorKind::InsufficientWindow, "associator inner block");
        const TensorProduct& pyz = yz.piece(n - i, *v);
        const TensorProduct& tp = r.piece(n, *t);
        Matrix sel = detail::selector(pin.module.dim(), wl.offset[u], wl.total, f);
        Matrix emb = detail::embedding(vl.offset[*v], pyz.module.dim(), vl.total, f);
        Matrix blk = tp.proj * kron(Matrix::identity(x.dim(i), f), emb * pyz.proj) *
                     kron(pin.lift * sel, Matrix::identity(dz, f)) * s.lift;
        a.add_block(rl.offset[*t], ll.offset[k], blk);
      }
    }
    out.components.push_back(std::move(a));
  }
  return out;
}

/// rho : Hom(Y (x) X, Z) -> Hom(X, Hom(Y, Z)), rho(phi)(x)(y) = (-1)^{|x||y|} phi(y (x) x).
inline ComplexMap adjunction_map(const Complex& x, const Complex& y, const Complex& z) {
  const Field& f = x.field();
  TensorComplex yx = tensor_complex_full(y, x);
  HomComplex a = hom_complex_full(yx.complex, z);
  HomComplex hyz = hom_complex_full(y, z);
  HomComplex b = hom_complex_full(x, hyz.complex);
  ComplexMap out{a.complex, b.complex, a.complex.empty() ? 0 : a.complex.lo(), {}};
  if (a.complex.empty() || b.complex.empty()) return out;
  require(a.complex.lo() == b.complex.lo() && a.complex.hi() == b.complex.hi(), ErrorKind::InsufficientWindow,
          "adjunction: windows of the two Hom complexes differ");
  for (long n = a.complex.lo(); n <= a.complex.hi(); ++n) {
    const BlockLayout& al = a.layout_at(n);
    const BlockLayout& bl = b.layout_at(n);
    Matrix m(bl.total, al.total, f);
    for (std::size_t k = 0; k < al.index.size(); ++k) {
      const long j = al.index[k];
      const HomSpace& hs = a.piece(n, k);
      const BlockLayout& tl = yx.layout_at(j);
      for (std::size_t u = 0; u < tl.index.size(); ++u) {
        const long q = tl.index[u], i = j - q;
        const TensorProduct& tp = yx.piece(j, u);
        auto t = bl.find(i);
        require(t && hyz.complex.in_window(n + i), ErrorKind::InsufficientWindow, "adjunction target block");
        const HomSpace& hb = b.piece(n, *t);
        const BlockLayout& hl = hyz.layout_at(n + i);
        auto v = hl.find(q);
        require(v.has_value(), ErrorKind::InsufficientWindow, "adjunction inner block");
        const HomSpace& hv = hyz.piece(n + i, *v);
        const std::size_t dx = x.dim(i), dy = y.dim(q), dzz = z.dim(n + j);
        const Scalar sgn = f.sign(i * q);
        Matrix emb = detail::embedding(tl.offset[u], tp.module.dim(), tl.total, f) * tp.proj;
        for (std::size_t e = 0; e < hs.basis.size(); ++e) {
          Matrix qm = hs.basis[e] * emb;  // dim Z x (dim Y_q * dim X_i)
          Matrix g(hl.total, dx, f);
          for (std::size_t xa = 0; xa < dx; ++xa) {
            Matrix ma(dzz, dy, f);
            for (std::size_t r = 0; r < dzz; ++r)
              for (std::size_t yy = 0; yy < dy; ++yy) ma(r, yy) = f.mul(sgn, qm(r, yy * dx + xa));
            Vector c = hv.coords(ma);
            for (std::size_t r = 0; r < c.size(); ++r) g(hl.offset[*v] + r, xa) = c[r];
          }
          Vector cb = hb.coords(g);
          for (std::size_t r = 0; r < cb.size(); ++r) m(bl.offset[*t] + r, al.offset[k] + e) = cb[r];
        }
      }
    }
    out.components.push_back(std::move(m));
  }
  return out;
}

namespace detail {

inline Instance iso_instance(const std::string& label, const ComplexMap& map,
                             const std::vector<std::pair<std::string, Complex>>& inputs) {
  Instance inst;
  inst.label = label;
  if (map.components.empty()) {
    if (both_sides_empty(map.source, map.target)) {
      inst.outcome = Outcome::Verified;
      inst.detail = "both sides are zero";
      return inst;
    }
    inst.outcome = Outcome::Refuted;
    inst.detail = "one side is zero and the other is not";
    inst.witness = witness_complexes(inputs);
    return inst;
  }
  if (auto bad = map.source.validate(); bad) {
    inst.outcome = Outcome::Refuted;
    inst.detail = "source is not a complex: " + *bad;
  } else if (auto bad2 = map.target.validate(); bad2) {
    inst.outcome = Outcome::Refuted;
    inst.detail = "target is not a complex: " + *bad2;
  } else if (!map.is_chain_map()) {
    inst.outcome = Outcome::Refuted;
    inst.detail = "map does not commute with the differentials";
  } else if (!map.is_isomorphism()) {
    inst.outcome = Outcome::Refuted;
    inst.detail = "chain map is not bijective in some degree";
  } else {
    inst.outcome = Outcome::Verified;
    inst.detail = "complex isomorphism in degrees [" + std::to_string(map.lo) + ", " + std::to_string(map.hi()) + "]";
  }
  if (inst.outcome == Outcome::Refuted) inst.witness = witness_complexes(inputs);
  return inst;
}

}  // namespace detail

/// Bounded inputs: the stable tensor products vanish and the associator of the ordinary
/// tensor products is compared as a complex map.
inline TheoremReport verify_associativity(const Complex& x, const Complex& y, const Complex& z) {
  TheoremReport rep{"associativity", {}};
  require(y.empty() || (y.bounded_below() && y.bounded_above()), ErrorKind::Precondition,
          "associativity needs a bounded middle complex");
  rep.instances.push_back(detail::iso_instance("(X(x)Y)(x)Z -> X(x)(Y(x)Z)", associator(x, y, z),
                                               {{"X", x}, {"Y", y}, {"Z", z}}));
  return rep;
}

inline TheoremReport verify_adjointness(const Complex& x, const Complex& y, const Complex& z) {
  TheoremReport rep{"adjunction", {}};
  require(y.empty() || (y.bounded_below() && y.bounded_above()), ErrorKind::Precondition,
          "adjunction needs a bounded complex Y");
  rep.instances.push_back(detail::iso_instance("Hom(Y(x)X, Z) -> Hom(X, Hom(Y, Z))", adjunction_map(x, y, z),
                                               {{"X", x}, {"Y", y}, {"Z", z}}));
  return rep;
}

/// Direct sums of k, R, m and E of total dimension at most max_dim.
inline std::vector<Module> small_module_pool(const AlgebraPtr& alg, std::size_t max_dim = 4) {
  Module rr = regular_module(alg);
  std::vector<Module> base = {residue_module(alg), rr, dual_module(rr)};
  if (alg->radical().dim() > 1) base.push_back(submodule(rr, alg->radical()));
  std::vector<Module> pool;
  std::vector<Module> frontier = {zero_module(alg)};
  for (std::size_t round = 0; round < max_dim; ++round) {
    std::vector<Module> next;
    for (const Module& m : frontier)
      for (const Module& b : base)
        if (m.dim() + b.dim() <= max_dim) {
          Module s = direct_sum(m, b);
          if (std::find(pool.begin(), pool.end(), s) == pool.end()) {
            pool.push_back(s);
            next.push_back(s);
          }
        }
    frontier = std::move(next);
  }
  return pool;
}

/// A seeded triple of finite complexes: terms of dimension at most 4, windows of length at most 4,
/// lowest degree in [-2, 2].
template <class Rng>
std::array<Complex, 3> random_triple(const std::vector<Module>& pool, Rng& rng) {
  std::array<Complex, 3> out;
  for (auto& c : out) {
    long lo = long(rng() % 5) - 2;
    std::size_t len = 1 + rng() % 4;
    c = random_complex(pool, lo, len, 1, rng);
  }
  return out;
}

enum class ComplexTheorem { Associativity, Adjunction };

inline TheoremReport verify_random_triples(const AlgebraPtr& alg, ComplexTheorem which, std::size_t count,
                                           std::uint64_t seed) {
  TheoremReport rep{which == ComplexTheorem::Associativity ? "associativity" : "adjunction", {}};
  std::mt19937_64 rng(seed);
  std::vector<Module> pool = small_module_pool(alg);
  for (std::size_t t = 0; t < count; ++t) {
    auto [x, y, z] = random_triple(pool, rng);
    TheoremReport one = which == ComplexTheorem::Associativity ? verify_associativity(x, y, z)
                                                               : verify_adjointness(x, y, z);
    for (auto& inst : one.instances) inst.label = "triple " + std::to_string(t) + ": " + inst.label;
    rep.merge(one);
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------
// sample sets

inline Module syzygy(const Module& m) {
  ModuleMap cover = projective_cover(m);
  return submodule(cover.source, kernel(cover.matrix));
}

/// k, R, C, m, the first `depth` syzygies of k, and the duals of all of these, without repeats.
inline std::vector<Sample> sample_modules(const Module& c, long depth = 3) {
  const AlgebraPtr& alg = c.algebra();
  Module rr = regular_module(alg), k = residue_module(alg);
  std::vector<Sample> base = {{"k", k}, {"R", rr}, {"C", c}, {"m", submodule(rr, alg->radical())}};
  Module s = k;
  for (long i = 1; i <= depth; ++i) {
    s = syzygy(s);
    base.push_back({"syz" + std::to_string(i) + "(k)", s});
  }
  std::vector<Sample> out;
  auto add = [&out](Sample smp) {
    for (auto& o : out)
      if (o.module == smp.module) return;
    out.push_back(std::move(smp));
  };
  for (auto& b : base) add(b);
  for (auto& b : base) add({"dual(" + b.label + ")", dual_module(b.module)});
  return out;
}

// ---------------------------------------------------------------------------------------------
// engine-backed statements

namespace detail {

inline StorQuery make_stor(const SemidualizingCertificate& c, const Module& m, const Module& n,
                           const HarnessParams& p, long lo, long hi) {
  StorQuery q;
  q.c = c;
  q.m = m;
  q.n = n;
  q.lo = lo;
  q.hi = hi;
  q.length = p.length;
  q.depth = p.depth;
  q.window = p.window;
  q.max_cell_dim = p.max_cell_dim;
  return q;
}

/// Compares two per-degree values. Agreement counts when both statuses are at least heuristic;
/// disagreement refutes only when both are certified.
inline Instance compare_degrees(const std::string& label, const std::string& what_a, const DegreeReport& a,
                                const std::string& what_b, const DegreeReport& b, const std::string& witness) {
  Instance inst;
  inst.label = label;
  inst.statuses = {status_line(what_a, a), status_line(what_b, b)};
  bool usable = strength(a.status) >= 1 && strength(b.status) >= 1 && a.has_dim() && b.has_dim();
  if (!usable) {
    inst.outcome = Outcome::Inconclusive;
    inst.detail = "a side has no determined dimension";
    return inst;
  }
  if (a.dim == b.dim) {
    inst.outcome = Outcome::Verified;
    inst.detail = "both have dimension " + std::to_string(a.dim);
    return inst;
  }
  if (is_certified(a.status) && is_certified(b.status)) {
    inst.outcome = Outcome::Refuted;
    inst.detail = "certified dimensions " + std::to_string(a.dim) + " and " + std::to_string(b.dim) + " differ";
    inst.witness = witness;
    return inst;
  }
  inst.outcome = Outcome::Inconclusive;
  inst.detail = "dimensions differ at heuristic status";
  return inst;
}

inline bool certified_zero(const DegreeReport& d) {
  return is_certified(d.status) && d.has_dim() && d.dim == 0;
}
inline bool certified_nonzero(const DegreeReport& d) {
  return is_certified(d.status) && ((d.has_dim() && d.dim > 0) || d.kind == ValueKind::DimensionSequence);
}

}  // namespace detail

/// Stor computed from (P_C, I_C) resolutions against the Tor-side description through Hom(C, M) and C (x) N.
inline TheoremReport verify_balance(const SemidualizingCertificate& c, const Module& m, const Module& n,
                                   const HarnessParams& p = {}) {
  TheoremReport rep{"balance", {}};
  std::string witness = detail::witness_modules({{"C", c.c}, {"M", m}, {"N", n}});
  {
    Instance leg;
    leg.label = "P_C and F_C resolutions coincide";
    ProperResolution a = proper_pc_resolution(c.c, m, 4), b = proper_fc_resolution(c.c, m, 4);
    leg.outcome = a.complex() == b.complex() ? Outcome::Verified : Outcome::Refuted;
    leg.detail = leg.outcome == Outcome::Verified ? "identical complexes" : "complexes differ";
    if (leg.outcome == Outcome::Refuted) leg.witness = witness;
    rep.instances.push_back(std::move(leg));
  }
  auto [left, right] = stor_balanced_pair(detail::make_stor(c, m, n, p, p.lo, p.hi));
  for (long d = p.lo; d <= p.hi; ++d)
    rep.instances.push_back(detail::compare_degrees("degree " + std::to_string(d), "Stor", left.at(d),
                                                    "Tor-side", right.at(d), witness));
  return rep;
}

/// The cover 0 -> K -> P -> M' -> 0 (first argument) or envelope 0 -> N -> I -> K -> 0 (second
/// argument) from the proper (co)resolutions, and the degree shift of Stor it induces.
enum class ShiftSide { First, Second };

struct ShiftSequence {
  Module outer;   // M' or N
  Module middle;  // P or I
  Module k;       // the kernel or the cokernel
  bool exact = false;
};

inline ShiftSequence shift_sequence(const Module& c, const Module& m, ShiftSide side) {
  ShiftSequence s;
  s.outer = m;
  if (side == ShiftSide::First) {
    ProperResolution p = proper_pc_resolution(c, m, 1);
    s.middle = p.augmentation.source;
    s.k = submodule(s.middle, kernel(p.augmentation.matrix));
    s.exact = rank(p.augmentation.matrix) == m.dim();
  } else {
    ProperResolution p = proper_ic_coresolution(c, m, 1);
    s.middle = p.augmentation.target;
    s.k = quotient_module(s.middle, image(p.augmentation.matrix)).module;
    s.exact = rank(p.augmentation.matrix) == m.dim();
  }
  return s;
}

/// First side: Stor_n(M', M) = Stor_{n-1}(K, M). Second side: Stor_n(M, N) = Stor_{n+1}(M, K).
inline TheoremReport verify_dimension_shift(const SemidualizingCertificate& c, const Module& varied,
                                            const Module& fixed, ShiftSide side, const HarnessParams& p = {}) {
  TheoremReport rep{"dimension-shift", {}};
  ShiftSequence s = shift_sequence(c.c, varied, side);
  std::string witness = detail::witness_modules({{"C", c.c}, {"varied", varied}, {"fixed", fixed}});
  if (!s.exact) {
    rep.instances.push_back({"short exact sequence", Outcome::Inconclusive,
                             side == ShiftSide::First ? "the proper cover is not surjective"
                                                      : "the proper envelope is not injective",
                             "", {}});
    return rep;
  }
  StableReport a, b;
  if (side == ShiftSide::First) {
    a = stor(detail::make_stor(c, varied, fixed, p, p.lo, p.hi));
    b = stor(detail::make_stor(c, s.k, fixed, p, p.lo - 1, p.hi - 1));
  } else {
    a = stor(detail::make_stor(c, fixed, varied, p, p.lo, p.hi));
    b = stor(detail::make_stor(c, fixed, s.k, p, p.lo + 1, p.hi + 1));
  }
  long shift = side == ShiftSide::First ? -1 : 1;
  for (long d = p.lo; d <= p.hi; ++d)
    rep.instances.push_back(detail::compare_degrees("degree " + std::to_string(d), "Stor", a.at(d),
                                                    side == ShiftSide::First ? "Stor(K,-)" : "Stor(-,K)",
                                                    b.at(d + shift), witness));
  return rep;
}

/// Vanishing over the whole line for a finite relative dimension; for an infinite one, a search for a
/// partner witnessing nonvanishing in every degree of the relevant half-line inside [lo, hi].
enum class VanishingSide { First, Second };

inline TheoremReport verify_vanishing(const SemidualizingCertificate& c, const std::vector<Sample>& samples,
                                      VanishingSide side, const HarnessParams& p = {}) {
  TheoremReport rep{side == VanishingSide::First ? "vanishing-first" : "vanishing-second", {}};
  const ClassTag tag = side == VanishingSide::First ? ClassTag::PC : ClassTag::IC;
  auto run = [&](const Module& tested, const Module& partner, long lo, long hi) {
    return side == VanishingSide::First ? stor(detail::make_stor(c, tested, partner, p, lo, hi))
                                        : stor(detail::make_stor(c, partner, tested, p, lo, hi));
  };
  for (const Sample& s : samples) {
    RelativeDimension rd = relative_dimension(c.c, s.module, tag, p.horizon);
    if (rd.kind == DimensionKind::Finite) {
      for (const Sample& t : samples) {
        Instance inst;
        inst.label = s.label + " against " + t.label;
        StableReport r = run(s.module, t.module, p.lo, p.hi);
        bool all = true;
        for (auto& d : r.degrees) {
          inst.statuses.push_back(detail::status_line("Stor", d));
          all = all && d.kind == ValueKind::Vanished && d.status == StableStatus::ExactBounded;
        }
        inst.outcome = all ? Outcome::Verified : Outcome::Refuted;
        inst.detail = all ? "finite dimension " + std::to_string(rd.value) + ": vanishes exactly in every degree"
                          : "finite dimension but a degree does not vanish exactly";
        if (!all) inst.witness = detail::witness_modules({{"C", c.c}, {"tested", s.module}, {"partner", t.module}});
        rep.instances.push_back(std::move(inst));
      }
      continue;
    }
    Instance inst;
    inst.label = s.label + " (" + to_string(rd.kind) + ")";
    if (rd.kind == DimensionKind::UnknownAtHorizon) {
      inst.outcome = Outcome::Inconclusive;
      inst.detail = "relative dimension undecided: " + rd.reason;
      rep.instances.push_back(std::move(inst));
      continue;
    }
    long lo = side == VanishingSide::First ? std::max(0L, p.lo) : p.lo;
    long hi = side == VanishingSide::First ? p.hi : std::min(-1L, p.hi);
    std::vector<bool> witnessed(std::size_t(std::max(0L, hi - lo + 1)), false);
    for (const Sample& t : samples) {
      if (std::all_of(witnessed.begin(), witnessed.end(), [](bool b) { return b; })) break;
      StableReport r = run(s.module, t.module, lo, hi);
      for (long d = lo; d <= hi; ++d)
        if (!witnessed[d - lo] && detail::certified_nonzero(r.at(d))) {
          witnessed[d - lo] = true;
          inst.statuses.push_back(detail::status_line("Stor against " + t.label, r.at(d)));
        }
    }
    std::size_t found = std::size_t(std::count(witnessed.begin(), witnessed.end(), true));
    if (!witnessed.empty() && found == witnessed.size()) {
      inst.outcome = Outcome::Verified;
      inst.detail = "nonvanishing witnessed in every degree of [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    } else {
      inst.outcome = Outcome::Inconclusive;
      inst.detail = "witnesses found in " + std::to_string(found) + " of " + std::to_string(witnessed.size()) +
                    " degrees";
    }
    rep.instances.push_back(std::move(inst));
  }
  return rep;
}

/// Exact decisions of Gorensteinness and C = R, then symmetry (when both hold) or a search for a
/// pair breaking it (otherwise).
inline TheoremReport verify_symmetry(const SemidualizingCertificate& c, const std::vector<std::pair<Sample, Sample>>& pairs,
                                  const HarnessParams& p = {}) {
  TheoremReport rep{"symmetry", {}};
  const AlgebraPtr& alg = c.c.algebra();
  Module rr = regular_module(alg);
  IsoStatus gor = is_gorenstein(alg);
  bool socle_one = alg->socle().dim() == 1;
  {
    Instance inst;
    inst.label = "Gorenstein";
    inst.statuses.push_back("dual(R) = R: " + std::string(to_string(gor)));
    inst.statuses.push_back("socle dimension " + std::to_string(alg->socle().dim()));
    if (gor == IsoStatus::Undecided) {
      inst.outcome = Outcome::Inconclusive;
      inst.detail = "isomorphism test undecided";
    } else if ((gor == IsoStatus::Isomorphic) == socle_one) {
      inst.outcome = Outcome::Verified;
      inst.detail = gor == IsoStatus::Isomorphic ? "Gorenstein: yes" : "Gorenstein: no";
    } else {
      inst.outcome = Outcome::Refuted;
      inst.detail = "dual(R) test and socle dimension disagree";
      inst.witness = write_ring(*alg);
    }
    rep.instances.push_back(std::move(inst));
  }
  IsoStatus cr = is_isomorphic(c.c, rr).status;
  bool cyclic = c.c.dim() == rr.dim() && minimal_generators(c.c).module.dim() == 1;
  {
    Instance inst;
    inst.label = "C = R";
    inst.statuses.push_back("C = R: " + std::string(to_string(cr)));
    if (cr == IsoStatus::Undecided) {
      inst.outcome = Outcome::Inconclusive;
      inst.detail = "isomorphism test undecided";
    } else if ((cr == IsoStatus::Isomorphic) == cyclic) {
      inst.outcome = Outcome::Verified;
      inst.detail = cr == IsoStatus::Isomorphic ? "C is free of rank one" : "C is not free";
    } else {
      inst.outcome = Outcome::Refuted;
      inst.detail = "isomorphism test and generator count disagree";
      inst.witness = detail::witness_modules({{"C", c.c}});
    }
    rep.instances.push_back(std::move(inst));
  }
  if (gor == IsoStatus::Undecided || cr == IsoStatus::Undecided) return rep;
  const bool symmetric = gor == IsoStatus::Isomorphic && cr == IsoStatus::Isomorphic;
  if (symmetric) {
    for (auto& [m, n] : pairs) {
      StableReport a = stor(detail::make_stor(c, m.module, n.module, p, p.lo, p.hi));
      StableReport b = stor(detail::make_stor(c, n.module, m.module, p, p.lo, p.hi));
      std::string w = detail::witness_modules({{"C", c.c}, {"M", m.module}, {"N", n.module}});
      for (long d = p.lo; d <= p.hi; ++d)
        rep.instances.push_back(detail::compare_degrees("(" + m.label + ", " + n.label + ") degree " + std::to_string(d),
                                                        "Stor(M,N)", a.at(d), "Stor(N,M)", b.at(d), w));
    }
    return rep;
  }
  Instance search;
  search.label = "asymmetry search";
  for (auto& [m, n] : pairs) {
    StableReport a = stor(detail::make_stor(c, m.module, n.module, p, p.lo, p.hi));
    StableReport b = stor(detail::make_stor(c, n.module, m.module, p, p.lo, p.hi));
    for (long d = p.lo; d <= p.hi; ++d) {
      const DegreeReport& x = a.at(d);
      const DegreeReport& y = b.at(d);
      bool broken = (detail::certified_nonzero(x) && detail::certified_zero(y)) ||
                    (detail::certified_zero(x) && detail::certified_nonzero(y)) ||
                    (is_certified(x.status) && is_certified(y.status) && x.has_dim() && y.has_dim() && x.dim != y.dim);
      if (broken) {
        search.outcome = Outcome::Verified;
        search.detail = "symmetry fails at (" + m.label + ", " + n.label + ") in degree " + std::to_string(d);
        search.statuses = {detail::status_line("Stor(M,N)", x), detail::status_line("Stor(N,M)", y)};
        search.witness = detail::witness_modules({{"C", c.c}, {"M", m.module}, {"N", n.module}});
        rep.instances.push_back(std::move(search));
        return rep;
      }
    }
    search.statuses.push_back("(" + m.label + ", " + n.label + "): no certified asymmetry in [" +
                              std::to_string(p.lo) + ", " + std::to_string(p.hi) + "]");
  }
  search.outcome = Outcome::Inconclusive;
  search.detail = "no symmetry-breaking pair among the samples at this horizon";
  rep.instances.push_back(std::move(search));
  return rep;
}

/// Dimension of M attached to each sExt variant: flat (= projective) dimension, F_C-pd, injective
/// dimension, I_C-id.
inline RelativeDimension sext_dimension_class(const SemidualizingCertificate& c, const Module& m, SextVariant v,
                                              long horizon) {
  switch (v) {
    case SextVariant::F: return classify_resolution(minimal_free_resolution(m, horizon));
    case SextVariant::FC: return relative_dimension(c.c, m, ClassTag::FC, horizon);
    case SextVariant::I: return classify_resolution(minimal_free_resolution(dual_module(m), horizon));
    case SextVariant::IC: return relative_dimension(c.c, m, ClassTag::IC, horizon);
  }
  return {};
}

inline TheoremReport verify_sext_dimension(const SemidualizingCertificate& c, const std::vector<Sample>& samples,
                                           SextVariant v, const HarnessParams& p = {}) {
  TheoremReport rep{std::string("sext-dimension-") + to_string(v), {}};
  for (const Sample& s : samples) {
    Instance inst;
    RelativeDimension rd = sext_dimension_class(c, s.module, v, p.horizon);
    inst.label = s.label + " (" + to_string(rd.kind) + ")";
    if (rd.kind == DimensionKind::UnknownAtHorizon) {
      inst.detail = "dimension undecided: " + rd.reason;
      rep.instances.push_back(std::move(inst));
      continue;
    }
    SextQuery q;
    q.c = c;
    q.m = s.module;
    q.n = s.module;
    q.variant = v;
    q.lo = q.hi = 0;
    q.length = p.length;
    q.window = p.window;
    q.max_cell_dim = p.max_cell_dim;
    const DegreeReport d = sext(q).at(0);
    inst.statuses.push_back(detail::status_line("sExt", d));
    std::string w = detail::witness_modules({{"C", c.c}, {"M", s.module}});
    if (rd.kind == DimensionKind::Finite) {
      if (d.status == StableStatus::ExactBounded && d.has_dim() && d.dim == 0) {
        inst.outcome = Outcome::Verified;
        inst.detail = "finite dimension, sExt^0(M, M) = 0 exactly";
      } else if (detail::certified_nonzero(d)) {
        inst.outcome = Outcome::Refuted;
        inst.detail = "finite dimension but sExt^0(M, M) is nonzero";
        inst.witness = w;
      } else {
        inst.detail = "finite dimension but vanishing not reached at exact status";
      }
    } else {
      if (strength(d.status) >= 1 && ((d.has_dim() && d.dim > 0) || d.kind == ValueKind::DimensionSequence)) {
        inst.outcome = Outcome::Verified;
        inst.detail = "infinite dimension, sExt^0(M, M) is nonzero";
      } else if (detail::certified_zero(d)) {
        inst.outcome = Outcome::Refuted;
        inst.detail = "infinite dimension but sExt^0(M, M) vanishes";
        inst.witness = w;
      } else {
        inst.detail = "no determined value at degree 0";
      }
    }
    rep.instances.push_back(std::move(inst));
  }
  return rep;
}

/// Hom(C, -) and C (x) - carry the proper resolutions of each sample back to ordinary ones.
inline TheoremReport verify_resolution_transfer(const Module& c, const std::vector<Sample>& samples, long length = 4) {
  TheoremReport rep{"proper-resolution-transfer", {}};
  for (const Sample& s : samples) {
    std::vector<std::pair<std::string, ProperResolution>> rs;
    rs.emplace_back("P_C", proper_pc_resolution(c, s.module, length));
    rs.emplace_back("F_C", proper_fc_resolution(c, s.module, length));
    rs.emplace_back("I_C", proper_ic_coresolution(c, s.module, length));
    for (auto& [name, r] : rs) {
      Instance inst;
      inst.label = s.label + " " + name;
      bool ok = check_proper_converse(r, std::min<long>(length, 3));
      inst.outcome = ok ? Outcome::Verified : Outcome::Refuted;
      inst.detail = ok ? "canonical maps identify the transferred complex" : "transferred complex differs";
      if (!ok) inst.witness = detail::witness_modules({{"C", c}, {"M", s.module}});
      rep.instances.push_back(std::move(inst));
    }
  }
  return rep;
}

/// Filtration X >= m^{t_1} X_{<= a_1} >= ... with t nondecreasing and a nonincreasing, optionally
/// ending in zero.
struct FiltrationSpec {
  std::vector<std::pair<std::size_t, long>> steps;  // (t_s, a_s) for s >= 1
  bool ends_at_zero = false;
};

inline std::vector<Subspace> radical_truncation(const Complex& x, std::size_t t, long a) {
  std::vector<Subspace> out;
  for (long n = x.lo(); n <= x.hi(); ++n) {
    Subspace s = Subspace::full(x.dim(n), x.field());
    if (n > a) s = Subspace(x.dim(n), x.field());
    for (std::size_t i = 0; i < t && s.dim(); ++i) s = radical_of(x.term(n), s);
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<std::vector<Subspace>> build_filtration(const Complex& x, const FiltrationSpec& spec) {
  std::vector<std::vector<Subspace>> f = {radical_truncation(x, 0, x.hi())};
  for (auto [t, a] : spec.steps) f.push_back(radical_truncation(x, t, a));
  if (spec.ends_at_zero) f.push_back(radical_truncation(x, 0, x.lo() - 1));
  return f;
}

template <class Rng>
FiltrationSpec random_filtration_spec(const Complex& x, Rng& rng) {
  FiltrationSpec spec;
  std::size_t steps = 1 + rng() % 4;
  std::size_t t = 0;
  long a = x.hi();
  for (std::size_t s = 0; s < steps; ++s) {
    t += rng() % 2;
    a -= long(rng() % 2);
    spec.steps.push_back({t, a});
  }
  spec.ends_at_zero = rng() % 2;
  return spec;
}

inline TheoremReport verify_filtrations(const std::vector<AlgebraPtr>& rings, std::size_t count, std::uint64_t seed) {
  TheoremReport rep{"filtration-sequences", {}};
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const AlgebraPtr& alg = rings[t % rings.size()];
    std::vector<Module> pool = small_module_pool(alg);
    Complex x = random_complex(pool, long(rng() % 5) - 2, 2 + rng() % 3, 1, rng);
    FiltrationSpec spec = random_filtration_spec(x, rng);
    FiltrationReport r = verify_filtration_sequences(x, build_filtration(x, spec));
    Instance inst;
    std::ostringstream lbl;
    lbl << "filtration " << t << ":";
    for (auto [ti, ai] : spec.steps) lbl << " m^" << ti << "X<=" << ai;
    if (spec.ends_at_zero) lbl << " 0";
    inst.label = lbl.str();
    inst.outcome = r.exact ? Outcome::Verified : Outcome::Refuted;
    std::size_t lim1 = 0;
    for (auto& d : r.degrees) lim1 += d.lim1_sub;
    inst.detail = r.exact ? "four-term sequence exact in every degree (total lim^1 " + std::to_string(lim1) + ")"
                          : r.failure;
    if (spec.ends_at_zero) inst.detail += r.exact ? ", product sequence exact" : "";
    if (!r.exact) inst.witness = detail::witness_complexes({{"X", x}}) + "# filtration " + inst.label + "\n";
    rep.instances.push_back(std::move(inst));
  }
  return rep;
}

inline void partitions_of(std::size_t n, std::size_t max_part, std::vector<std::size_t>& cur,
                          std::vector<std::vector<std::size_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_of(n - p, p, cur, out);
    cur.pop_back();
  }
}

/// Block-diagonal nilpotent Jordan matrix with the given block sizes.
inline Matrix nilpotent_jordan(const std::vector<std::size_t>& blocks, const Field& f) {
  std::size_t n = 0;
  for (auto b : blocks) n += b;
  Matrix j(n, n, f);
  std::size_t off = 0;
  for (auto b : blocks) {
    for (std::size_t r = 0; r + 1 < b; ++r) j(off + r, off + r + 1) = 1;
    off += b;
  }
  return j;
}

/// One constant tower per nilpotent conjugacy class (Jordan type) of stage dimension 1..max_dim.
inline std::vector<std::pair<std::string, Tower>> nilpotent_constant_towers(const Field& f, std::size_t max_dim,
                                                                            std::size_t horizon) {
  auto k = Algebra::prime_field(f);
  std::vector<std::pair<std::string, Tower>> out;
  for (std::size_t n = 1; n <= max_dim; ++n) {
    std::vector<std::vector<std::size_t>> parts;
    std::vector<std::size_t> cur;
    partitions_of(n, n, cur, parts);
    for (auto& part : parts) {
      std::string label = "jordan";
      for (auto b : part) label += " " + std::to_string(b);
      Module v(k, n, {Matrix::identity(n, f)});
      out.push_back({label, constant_tower(v, nilpotent_jordan(part, f), horizon)});
    }
  }
  return out;
}

inline TheoremReport verify_dual_colimit_vanishing(const std::vector<std::pair<std::string, Tower>>& towers, std::size_t w = 3) {
  TheoremReport rep{"dual-colimit", {}};
  for (auto& [label, t] : towers) {
    FlagReport f = verify_dual_colimit_vanishing(t, w);
    Instance inst;
    inst.label = label;
    inst.outcome = f.flag == Flag::Verified ? Outcome::Verified
                                            : (f.flag == Flag::Refuted ? Outcome::Refuted : Outcome::Inconclusive);
    inst.detail = f.reason;
    if (inst.outcome == Outcome::Refuted) inst.witness = detail::witness_tower(t);
    rep.instances.push_back(std::move(inst));
  }
  return rep;
}

}  // namespace stablehom

#endif  // STABLEHOM_VERIFY_HPP
