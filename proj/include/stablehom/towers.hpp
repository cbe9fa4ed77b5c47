#ifndef STABLEHOM_TOWERS_HPP
#define STABLEHOM_TOWERS_HPP

// N-indexed inverse and direct systems of finite modules, observed on a finite
// horizon. Only stabilization-certified or period-certified answers are
// labelled as limits; everything else is reported as a dimension sequence or
// left undetermined.

#include <optional>
#include <string>
#include <vector>

#include "stablehom/chaincx.hpp"

namespace stablehom {

enum class Direction { Inverse, Direct };

/// Stage and transition data repeat with period q from index `start` on.
struct TowerPeriod {
  long start = 0;
  long period = 1;
};

struct Tower {
  Direction direction = Direction::Inverse;
  std::vector<Module> stages;       // 0..H-1
  std::vector<Matrix> transitions;  // inverse: [i] : stage i+1 -> stage i; direct: [i] : stage i -> stage i+1
  std::optional<TowerPeriod> period;

  std::size_t horizon() const { return stages.size(); }

  /// Inverse: stage j -> stage i. Direct: stage i -> stage j. Requires i <= j.
  Matrix composite(std::size_t i, std::size_t j) const {
    require(i <= j && j < stages.size(), ErrorKind::InvalidArgument, "tower composite indices");
    Matrix m = Matrix::identity(stages[direction == Direction::Inverse ? j : i].dim(), stages[i].field());
    if (direction == Direction::Inverse) {
      for (std::size_t k = j; k > i; --k) m = transitions[k - 1] * m;
    } else {
      for (std::size_t k = i; k < j; ++k) m = transitions[k] * m;
    }
    return m;
  }

  std::optional<std::string> validate() const {
    if (stages.empty()) return std::nullopt;
    if (transitions.size() + 1 != stages.size()) return "tower needs one transition per consecutive pair";
    for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
      const Module& src = direction == Direction::Inverse ? stages[i + 1] : stages[i];
      const Module& dst = direction == Direction::Inverse ? stages[i] : stages[i + 1];
      if (!ModuleMap{src, dst, transitions[i]}.is_homomorphism())
        return "transition " + std::to_string(i) + " is not a module map";
    }
    if (period) {
      const long s = period->start, q = period->period, h = long(stages.size());
      if (q < 1 || s + 3 * q > h - 1) return "period certificate needs 2q verified repetitions in the horizon";
      for (long i = s; i < s + 2 * q; ++i)
        if (!(stages[i] == stages[i + q]) || transitions[i] != transitions[i + q]) return "period certificate fails";
    }
    return std::nullopt;
  }
};

inline Tower constant_tower(const Module& v, const Matrix& f, std::size_t horizon, Direction dir = Direction::Inverse) {
  Tower t;
  t.direction = dir;
  t.stages.assign(horizon, v);
  t.transitions.assign(horizon > 0 ? horizon - 1 : 0, f);
  if (horizon >= 4) t.period = TowerPeriod{0, 1};
  return t;
}

/// Smallest (start, period) with bit-exact repetition verified twice inside the horizon.
inline std::optional<TowerPeriod> detect_tower_period(const Tower& t) {
  const long h = long(t.stages.size());
  for (long s = 0; s < h; ++s)
    for (long q = 1; s + 3 * q <= h - 1; ++q) {
      bool ok = true;
      for (long i = s; i < s + 2 * q && ok; ++i)
        ok = t.stages[i] == t.stages[i + q] && t.transitions[i] == t.transitions[i + q];
      if (ok) return TowerPeriod{s, q};
    }
  return std::nullopt;
}

inline Tower dual_tower(const Tower& t) {
  Tower d;
  d.direction = t.direction == Direction::Inverse ? Direction::Direct : Direction::Inverse;
  for (auto& s : t.stages) d.stages.push_back(dual_module(s));
  for (auto& m : t.transitions) d.transitions.push_back(m.transposed());
  d.period = t.period;
  return d;
}

enum class MLStatus { Certified, Undetermined, RefutedAtHorizon };
enum class LimKind { Module, DimensionSequence, Undetermined };
enum class Lim1Status { ZeroCertified, Undetermined };

inline const char* to_string(MLStatus s) {
  switch (s) {
    case MLStatus::Certified: return "certified";
    case MLStatus::Undetermined: return "undetermined";
    case MLStatus::RefutedAtHorizon: return "refuted-at-horizon";
  }
  return "?";
}
inline const char* to_string(LimKind k) {
  switch (k) {
    case LimKind::Module: return "module";
    case LimKind::DimensionSequence: return "dimension-sequence";
    case LimKind::Undetermined: return "undetermined";
  }
  return "?";
}
inline const char* to_string(Lim1Status s) { return s == Lim1Status::ZeroCertified ? "zero-certified" : "undetermined"; }

struct LimReport {
  LimKind kind = LimKind::Undetermined;
  std::optional<Module> lim;
  long stage = -1;        // index of the stage in which lim is realized
  Subspace realized;      // inverse: lim as a subspace of that stage; direct: kernel of stage -> colim
  std::vector<std::size_t> dims;
  Lim1Status lim1 = Lim1Status::Undetermined;
  MLStatus ml = MLStatus::Undetermined;
  bool periodic = false;  // answer derived from a period certificate (exact)
  long stabilized_from = -1;
  std::string route;

  bool is_zero() const { return kind == LimKind::Module && lim && lim->dim() == 0; }
};

inline Matrix matrix_power(const Matrix& g, std::size_t e) {
  Matrix out = Matrix::identity(g.rows(), g.field());
  for (std::size_t k = 0; k < e; ++k) out = g * out;
  return out;
}

/// Images I_{i,j} = Im(stage j -> stage i); returns the first j from which they stay constant
/// through the horizon, provided at least w further stages confirm it.
inline std::optional<std::size_t> image_stabilization(const Tower& t, std::size_t i, std::size_t w) {
  const std::size_t h = t.horizon();
  std::vector<Subspace> imgs;
  Matrix comp = Matrix::identity(t.stages[i].dim(), t.stages[i].field());
  for (std::size_t j = i; j < h; ++j) {
    if (j > i) comp = comp * t.transitions[j - 1];
    imgs.push_back(image(comp));
  }
  std::size_t j0 = h - 1;
  while (j0 > i && imgs[j0 - 1 - i] == imgs[h - 1 - i]) --j0;
  if (h - 1 - j0 < w) return std::nullopt;
  return j0;
}

/// Stages a horizon of h can judge: the first half, so late stages are not asked for spare room they cannot have.
inline std::size_t judged_stages(std::size_t h) { return h == 0 ? 0 : (h - 1) / 2 + 1; }

inline MLStatus detect_ml(const Tower& t, std::size_t w = 3) {
  require(t.direction == Direction::Inverse, ErrorKind::InvalidArgument, "Mittag-Leffler needs an inverse system");
  if (t.period) return MLStatus::Certified;
  const std::size_t h = t.horizon();
  if (h <= w) return MLStatus::Undetermined;
  for (std::size_t i = 0; i < judged_stages(h); ++i)
    if (!image_stabilization(t, i, w)) return MLStatus::Undetermined;
  return MLStatus::Certified;
}

inline LimReport lim_lim1(const Tower& t, std::size_t w = 3) {
  require(t.direction == Direction::Inverse, ErrorKind::InvalidArgument, "lim needs an inverse system");
  LimReport rep;
  const std::size_t h = t.horizon();
  for (auto& s : t.stages) rep.dims.push_back(s.dim());
  if (h == 0) return rep;
  if (t.period) {
    // Fitting route: lim is the part of the period composite on which it is invertible.
    const std::size_t s = t.period->start, q = t.period->period;
    Matrix g = t.composite(s, s + q);
    Subspace stable = image(matrix_power(g, t.stages[s].dim()));
    rep.kind = LimKind::Module;
    rep.lim = submodule(t.stages[s], stable);
    rep.stage = long(s);
    rep.realized = stable;
    rep.ml = MLStatus::Certified;
    rep.lim1 = Lim1Status::ZeroCertified;
    rep.periodic = true;
    rep.stabilized_from = long(s);
    rep.route = "Fitting decomposition of the period composite";
    return rep;
  }
  rep.ml = detect_ml(t, w);
  rep.lim1 = rep.ml == MLStatus::Certified ? Lim1Status::ZeroCertified : Lim1Status::Undetermined;
  // stable images J_i for the prefix of stabilized stages
  std::vector<Subspace> j;
  for (std::size_t i = 0; i < judged_stages(h); ++i) {
    auto j0 = image_stabilization(t, i, w);
    if (!j0) break;
    j.push_back(image(t.composite(i, h - 1)));
  }
  if (j.empty()) {
    rep.route = "no stage stabilizes within the horizon";
    return rep;
  }
  const std::size_t m = j.size() - 1;
  // the transitions J_{i+1} -> J_i are surjective; equal dimensions make them bijective
  std::size_t i0 = m;
  while (i0 > 0 && j[i0 - 1].dim() == j[i0].dim()) --i0;
  if (m - i0 >= w) {
    rep.kind = LimKind::Module;
    rep.lim = submodule(t.stages[i0], j[i0]);
    rep.stage = long(i0);
    rep.realized = j[i0];
    rep.stabilized_from = long(i0);
    rep.route = "stable images eventually isomorphic";
    return rep;
  }
  std::vector<std::size_t> jd;
  for (auto& s : j) jd.push_back(s.dim());
  bool growing = jd.size() > w;
  for (std::size_t i = 1; i < jd.size() && growing; ++i) growing = jd[i] > jd[i - 1];
  if (growing) {
    rep.kind = LimKind::DimensionSequence;
    rep.dims = jd;
    rep.route = "stable images grow through the horizon";
    return rep;
  }
  rep.route = "stable images neither settle nor grow";
  return rep;
}

/// Direct systems: colim via stabilized kernels K_i = ker(stage i -> stage j), j large.
inline LimReport colim(const Tower& t, std::size_t w = 3) {
  require(t.direction == Direction::Direct, ErrorKind::InvalidArgument, "colim needs a direct system");
  LimReport rep;
  const std::size_t h = t.horizon();
  for (auto& s : t.stages) rep.dims.push_back(s.dim());
  if (h == 0) return rep;
  if (t.period) {
    const std::size_t s = t.period->start, q = t.period->period;
    Matrix g = t.composite(s, s + q);
    Subspace k = kernel(matrix_power(g, t.stages[s].dim()));
    rep.kind = LimKind::Module;
    rep.lim = quotient_module(t.stages[s], k).module;
    rep.stage = long(s);
    rep.realized = k;
    rep.periodic = true;
    rep.ml = MLStatus::Certified;
    rep.lim1 = Lim1Status::ZeroCertified;
    rep.stabilized_from = long(s);
    rep.route = "Fitting decomposition of the period composite";
    return rep;
  }
  std::vector<Subspace> ks;
  for (std::size_t i = 0; i < judged_stages(h); ++i) {
    std::vector<Subspace> chain;
    for (std::size_t jj = i; jj < h; ++jj) chain.push_back(kernel(t.composite(i, jj)));
    std::size_t j0 = h - 1;
    while (j0 > i && chain[j0 - 1 - i] == chain[h - 1 - i]) --j0;
    if (h - 1 - j0 < w) break;
    ks.push_back(chain.back());
  }
  if (ks.empty()) {
    rep.route = "no stage stabilizes within the horizon";
    return rep;
  }
  const std::size_t m = ks.size() - 1;
  auto qdim = [&](std::size_t i) { return t.stages[i].dim() - ks[i].dim(); };
  // Q_i = stage_i / K_i injects into Q_{i+1}; equal dimensions make it bijective
  std::size_t i0 = m;
  while (i0 > 0 && qdim(i0 - 1) == qdim(i0)) --i0;
  rep.ml = MLStatus::Certified;
  rep.lim1 = Lim1Status::ZeroCertified;
  if (m - i0 >= w) {
    rep.kind = LimKind::Module;
    rep.lim = quotient_module(t.stages[i0], ks[i0]).module;
    rep.stage = long(i0);
    rep.realized = ks[i0];
    rep.stabilized_from = long(i0);
    rep.route = "stabilized quotients eventually isomorphic";
    return rep;
  }
  std::vector<std::size_t> qd;
  for (std::size_t i = 0; i <= m; ++i) qd.push_back(qdim(i));
  bool growing = qd.size() > w;
  for (std::size_t i = 1; i < qd.size() && growing; ++i) growing = qd[i] > qd[i - 1];
  if (growing) {
    rep.kind = LimKind::DimensionSequence;
    rep.dims = qd;
    rep.route = "stabilized quotients grow through the horizon";
    return rep;
  }
  rep.route = "stabilized quotients neither settle nor grow";
  return rep;
}

enum class Flag { Verified, Refuted, Inconclusive };

inline const char* to_string(Flag f) {
  switch (f) {
    case Flag::Verified: return "verified";
    case Flag::Refuted: return "refuted";
    case Flag::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct FlagReport {
  Flag flag = Flag::Inconclusive;
  std::string reason;
};

/// ML and lim = 0 for an inverse tower force colim of the dual system to vanish.
inline FlagReport verify_dual_colimit_vanishing(const Tower& t, std::size_t w = 3) {
  LimReport l = lim_lim1(t, w);
  if (l.ml != MLStatus::Certified) return {Flag::Inconclusive, "Mittag-Leffler not certified"};
  if (!l.is_zero()) return {Flag::Inconclusive, "lim is not certified zero"};
  LimReport c = colim(dual_tower(t), w);
  if (c.kind == LimKind::Module && c.periodic == l.periodic)
    return c.is_zero() ? FlagReport{Flag::Verified, "colim of the dual system vanishes"}
                       : FlagReport{Flag::Refuted, "colim of the dual system has dimension " +
                                                       std::to_string(c.lim->dim())};
  if (l.periodic && c.kind == LimKind::Module)
    return c.is_zero() ? FlagReport{Flag::Inconclusive, "dual colim vanishes only at a weaker certification level"}
                       : FlagReport{Flag::Refuted, "colim of the dual system is nonzero"};
  return {Flag::Inconclusive, "dual colim not determined at matching level"};
}

/// 1 - nu : prod_{i=0}^{m} T_i -> prod_{i=0}^{m-1} T_i, (x_i) -> (x_i - nu(x_{i+1})). For towers that are
/// constant with identity transitions from m on, kernel and cokernel are lim and lim^1 exactly.
inline Matrix one_minus_nu(const Tower& t, std::size_t m) {
  require(t.direction == Direction::Inverse, ErrorKind::InvalidArgument, "1 - nu needs an inverse system");
  require(m < t.horizon(), ErrorKind::InsufficientWindow, "finite model beyond the horizon");
  const Field& f = t.stages.front().field();
  std::vector<std::size_t> off(m + 2, 0);
  for (std::size_t i = 0; i <= m; ++i) off[i + 1] = off[i] + t.stages[i].dim();
  Matrix out(off[m], off[m + 1], f);
  for (std::size_t i = 0; i < m; ++i) {
    out.set_block(off[i], off[i], Matrix::identity(t.stages[i].dim(), f));
    out.add_block(off[i], off[i + 1], t.transitions[i].scaled(f.neg(1)));
  }
  return out;
}

struct FiltrationReport {
  bool exact = true;
  std::string failure;
  struct Degree {
    long n;
    std::size_t lim_sub, x, lim_quot, lim1_sub, lim1_quot;
    bool two_products_exact;
  };
  std::vector<Degree> degrees;
};

/// Checks 0 -> lim X^i -> X -> lim X/X^i -> lim^1 X^i -> 0 degreewise for a finite filtration
/// X = X^0 >= X^1 >= ... >= X^m extended constantly, with every term computed from 1 - nu.
/// When X^m = 0 it also checks that 1 - epsilon on the finite product model is bijective.
inline FiltrationReport verify_filtration_sequences(const Complex& x, const std::vector<std::vector<Subspace>>& filtration) {
  require(!filtration.empty(), ErrorKind::NotFiltration, "empty filtration");
  const std::size_t m = filtration.size() - 1;
  for (std::size_t i = 0; i <= m; ++i)
    require(is_subcomplex(x, filtration[i]), ErrorKind::NotFiltration, "filtration step " + std::to_string(i) +
                                                                            " is not a subcomplex");
  for (long n = x.lo(); n <= x.hi(); ++n) {
    require(filtration[0][n - x.lo()].dim() == x.dim(n), ErrorKind::NotFiltration, "filtration must start at X");
    for (std::size_t i = 1; i <= m; ++i)
      require(filtration[i - 1][n - x.lo()].contains(filtration[i][n - x.lo()]), ErrorKind::NotFiltration,
              "filtration is not descending");
  }
  FiltrationReport rep;
  const Field& f = x.field();
  for (long n = x.lo(); n <= x.hi(); ++n) {
    const Module xn = x.term(n);
    std::vector<Subspace> a;
    for (std::size_t i = 0; i <= m; ++i) a.push_back(filtration[i][n - x.lo()]);
    // towers (one extra constant stage makes the identity tail explicit)
    Tower ta, tb;
    std::vector<SubQuotient> qb;
    for (std::size_t i = 0; i <= m + 1; ++i) {
      const Subspace& ai = a[std::min(i, m)];
      ta.stages.push_back(submodule(xn, ai));
      qb.push_back(quotient_module(xn, ai));
      tb.stages.push_back(qb.back().module);
    }
    for (std::size_t i = 0; i <= m; ++i) {
      const Subspace& hi = a[std::min(i + 1, m)];
      const Subspace& lo = a[i];
      ta.transitions.push_back(lo.coords_of_columns(hi.basis_columns()));
      tb.transitions.push_back(qb[i].classes_of_columns(qb[i + 1].representatives()));
    }
    Matrix na = one_minus_nu(ta, m + 1), nb = one_minus_nu(tb, m + 1);
    Subspace ka = kernel(na), kb = kernel(nb);
    const std::size_t ca = na.rows() - rank(na), cb = nb.rows() - rank(nb);
    // offsets in the products
    std::vector<std::size_t> oa{0}, ob{0};
    for (std::size_t i = 0; i <= m + 1; ++i) {
      oa.push_back(oa.back() + ta.stages[i].dim());
      ob.push_back(ob.back() + tb.stages[i].dim());
    }
    // alpha : lim X^i -> X, thread -> x_0
    Matrix alpha(xn.dim(), ka.dim(), f);
    for (std::size_t k = 0; k < ka.dim(); ++k) {
      Vector th = ka.vec(k);
      Vector c0(th.begin() + oa[0], th.begin() + oa[1]);
      Vector v = a[0].basis_columns().apply(c0);
      for (std::size_t r = 0; r < v.size(); ++r) alpha(r, k) = v[r];
    }
    // beta : X -> lim X/X^i, x -> (class of x)_i, in kernel coordinates
    Matrix beta_full(ob.back(), xn.dim(), f);
    for (std::size_t i = 0; i <= m + 1; ++i) beta_full.set_block(ob[i], 0, qb[i].classes_of_columns(Matrix::identity(xn.dim(), f)));
    Matrix beta = kb.coords_of_columns(beta_full);
    // gamma : lim X/X^i -> lim^1 X^i, lift each b_i and take consecutive differences
    Quotient qa = quotient_basis(image(na));
    Matrix gamma(ca, kb.dim(), f);
    for (std::size_t k = 0; k < kb.dim(); ++k) {
      Vector th = kb.vec(k);
      std::vector<Vector> lifts;
      for (std::size_t i = 0; i <= m + 1; ++i) {
        Vector bi(th.begin() + ob[i], th.begin() + ob[i + 1]);
        lifts.push_back(qb[i].representatives().apply(bi));
      }
      Vector diffs(na.rows(), 0);
      for (std::size_t i = 0; i <= m; ++i) {
        Vector d(xn.dim());
        for (std::size_t r = 0; r < d.size(); ++r) d[r] = f.sub(lifts[i][r], lifts[i + 1][r]);
        Vector c = a[std::min(i, m)].coords(d);
        if (!a[std::min(i, m)].contains(d)) {
          rep.exact = false;
          rep.failure = "connecting map leaves the filtration in degree " + std::to_string(n);
        }
        for (std::size_t r = 0; r < c.size(); ++r) diffs[oa[i] + r] = c[r];
      }
      Vector cls = qa.proj.apply(diffs);
      for (std::size_t r = 0; r < cls.size(); ++r) gamma(r, k) = cls[r];
    }
    bool ok = kernel(alpha).dim() == 0 && image(alpha) == kernel(beta) && image(beta) == kernel(gamma) &&
              rank(gamma) == ca && cb == 0;
    bool two = true;
    if (a[m].dim() == 0) two = ka.dim() == 0 && ca == 0;
    rep.degrees.push_back({n, ka.dim(), xn.dim(), kb.dim(), ca, cb, two});
    if (!ok || !two) {
      rep.exact = false;
      if (rep.failure.empty()) rep.failure = "sequence not exact in degree " + std::to_string(n);
    }
  }
  return rep;
}

}  // namespace stablehom

#endif  // STABLEHOM_TOWERS_HPP
