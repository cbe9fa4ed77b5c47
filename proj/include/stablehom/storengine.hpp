#ifndef STABLEHOM_STORENGINE_HPP
#define STABLEHOM_STORENGINE_HPP

// Stable homology Stor_n(M, N) = H_{n+1}(X ~(x) Y) and stable cohomology sExt^n(M, N).
//
// Stor: with X a proper P_C-resolution of M and Y a proper I_C-coresolution of N (sup Y = 0),
// Stor_n = lim_i S_i where S_i = colim_L H_n(X_{<=L} (x) Y_{<=-i}); the lim^1 term vanishes because
// every stage is finite. The colimit in L is reached at L = n + i + 1: the quotient
// X_{<=L+1}/X_{<=L} tensored with Y_{<=-i} is a sum of copies of (C (x) Y)_{<=-i}, and C (x) Y is an
// injective resolution, so the quotient is acyclic in degrees n and n+1 once L >= n + i + 1.
//
// sExt (F variant): sExt^n = colim_i H_{-n} Hom(F_{<=L}, F'_{>=i}); the lim in L is reached at
// L = n + i + 1 by the same argument, using that F' is acyclic above degree i.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "stablehom/semidual.hpp"
#include "stablehom/towers.hpp"

namespace stablehom {

enum class StableStatus { ExactBounded, CertifiedPeriodic, StabilizedHeuristic, Inconclusive };
enum class ValueKind { Count, DimensionSequence, Vanished, Unknown };

inline const char* to_string(StableStatus s) {
  switch (s) {
    case StableStatus::ExactBounded: return "exact-bounded";
    case StableStatus::CertifiedPeriodic: return "certified-periodic";
    case StableStatus::StabilizedHeuristic: return "stabilized-heuristic";
    case StableStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}
inline const char* to_string(ValueKind k) {
  switch (k) {
    case ValueKind::Count: return "count";
    case ValueKind::DimensionSequence: return "dimension-sequence";
    case ValueKind::Vanished: return "vanished";
    case ValueKind::Unknown: return "unknown";
  }
  return "?";
}

/// Rank of statuses, strongest first; used to compare certification levels.
inline int strength(StableStatus s) {
  switch (s) {
    case StableStatus::ExactBounded: return 3;
    case StableStatus::CertifiedPeriodic: return 2;
    case StableStatus::StabilizedHeuristic: return 1;
    case StableStatus::Inconclusive: return 0;
  }
  return 0;
}
inline bool is_certified(StableStatus s) { return strength(s) >= 2; }

struct TableCell {
  long L = 0;
  long i = 0;
  long dim = -1;  // -1: not computed (window or budget)
};

struct DegreeReport {
  long n = 0;
  ValueKind kind = ValueKind::Unknown;
  std::size_t dim = 0;
  std::vector<std::size_t> sequence;
  StableStatus status = StableStatus::Inconclusive;
  std::string reason;
  std::vector<TableCell> table;
  std::vector<std::size_t> stage_dims;  // dims of the tower (Stor) or direct system (sExt) in i
  std::optional<TowerPeriod> tower_period;

  bool has_dim() const { return kind == ValueKind::Count || kind == ValueKind::Vanished; }
};

struct StableReport {
  std::string quantity;  // "stor" or "sext"
  std::string variant;   // "PC-IC" for stor; F, FC, I, IC for sext
  long lo = 0, hi = 0;
  long length = 0, depth = 0;
  std::size_t window = 3;
  std::size_t max_cell_dim = 0;
  std::string left_route, right_route;
  long left_dimension = -2, right_dimension = -2;  // finite (co)resolution length, -1 zero, -2 unknown
  std::optional<PeriodCertificate> left_period, right_period;
  std::string scheme;
  std::vector<DegreeReport> degrees;

  const DegreeReport& at(long n) const {
    require(n >= lo && n <= hi, ErrorKind::InvalidArgument, "degree outside the report");
    return degrees[n - lo];
  }
};

struct StorQuery {
  SemidualizingCertificate c;
  Module m, n;
  long lo = -4, hi = 4;
  long length = 16, depth = 16;
  std::size_t window = 3;
  std::size_t max_cell_dim = 4096;
  ResolutionOptions opt{};
};

enum class SextVariant { F, FC, I, IC };

inline const char* to_string(SextVariant v) {
  switch (v) {
    case SextVariant::F: return "F";
    case SextVariant::FC: return "FC";
    case SextVariant::I: return "I";
    case SextVariant::IC: return "IC";
  }
  return "?";
}

inline std::size_t engine_threads() {
  if (const char* s = std::getenv("STABLEHOM_THREADS")) {
    long v = std::strtol(s, nullptr, 10);
    if (v >= 1) return std::size_t(v);
  }
  return 1;
}

namespace detail {

struct Key {
  long a = 0, b = 0;
  friend bool operator<(const Key& x, const Key& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; }
  friend bool operator==(const Key& x, const Key& y) { return x.a == y.a && x.b == y.b; }
};

/// One total degree of a truncated double complex: an ordered list of blocks.
struct Blocks {
  std::vector<Key> keys;
  std::vector<std::size_t> offset, size;
  std::size_t total = 0;

  void add(Key k, std::size_t s) {
    keys.push_back(k);
    offset.push_back(total);
    size.push_back(s);
    total += s;
  }
  long find(Key k) const {
    for (std::size_t t = 0; t < keys.size(); ++t)
      if (keys[t] == k) return long(t);
    return -1;
  }
};

/// Identity on the blocks shared by src and dst; inclusions and projections of truncations.
inline Matrix coordinate_map(const Blocks& src, const Blocks& dst, const Field& f) {
  Matrix out(dst.total, src.total, f);
  for (std::size_t t = 0; t < src.keys.size(); ++t) {
    long u = dst.find(src.keys[t]);
    if (u < 0) continue;
    for (std::size_t r = 0; r < src.size[t]; ++r) out(dst.offset[u] + r, src.offset[t] + r) = 1;
  }
  return out;
}

/// A homologically graded double complex, truncated by two parameters (L, i).
class DoubleModel {
 public:
  virtual ~DoubleModel() = default;
  virtual const Field& field() const = 0;
  /// Blocks in total degree m of the (L, i) truncation; nullopt when the computed window cannot supply them.
  virtual std::optional<Blocks> blocks(long m, long L, long i) const = 0;
  /// Adds the differential from total degree m (src) to m - 1 (dst).
  virtual void differential(Matrix& out, const Blocks& src, const Blocks& dst, long m) const = 0;
};

struct ChunkHomology {
  long L = 0, i = 0;
  Blocks mid;
  SubQuotient h;
};

inline std::optional<ChunkHomology> chunk_homology(const DoubleModel& model, const AlgebraPtr& k, long deg, long L,
                                                   long i, std::size_t budget) {
  auto top = model.blocks(deg + 1, L, i), mid = model.blocks(deg, L, i), bot = model.blocks(deg - 1, L, i);
  if (!top || !mid || !bot) return std::nullopt;
  if (std::max({top->total, mid->total, bot->total}) > budget) return std::nullopt;
  const Field& f = model.field();
  Matrix d1(mid->total, top->total, f), d0(bot->total, mid->total, f);
  model.differential(d1, *top, *mid, deg + 1);
  model.differential(d0, *mid, *bot, deg);
  ChunkHomology out;
  out.L = L;
  out.i = i;
  out.mid = *mid;
  out.h = subquotient(k, {}, kernel(d0), image(d1));
  return out;
}

/// Map on homology induced by the coordinate map between two truncations.
inline Matrix induced(const ChunkHomology& src, const ChunkHomology& dst, const Field& f) {
  Matrix p = coordinate_map(src.mid, dst.mid, f);
  return dst.h.classes_of_columns(p * src.h.representatives());
}

/// X (x) Y with X of free type over base C in degrees >= 0 and Y of free type over base H in degrees <= 0;
/// block (p, q) is T^{r_p s_q} with T = C (x) H.
class TensorModel : public DoubleModel {
 public:
  TensorModel(FreeTypeComplex x, FreeTypeComplex y, Module t) : x_(std::move(x)), y_(std::move(y)), t_(std::move(t)) {}
  const Field& field() const override { return t_.field(); }

  std::optional<Blocks> blocks(long m, long L, long i) const override {
    Blocks b;
    const long top = std::min(L, x_.hi());
    for (long p = std::max(0L, m + i); p <= top; ++p) {
      const long q = m - p;
      if (q < y_.lo) {
        // the term exists but lies beyond the computed coresolution
        if (!y_.bounded_below) return std::nullopt;
        continue;
      }
      b.add({p, q}, x_.rank(p) * y_.rank(q) * t_.dim());
    }
    if (L > x_.hi() && !x_.bounded_above) return std::nullopt;
    return b;
  }

  void differential(Matrix& out, const Blocks& src, const Blocks& dst, long) const override {
    const Field& f = field();
    for (std::size_t s = 0; s < src.keys.size(); ++s) {
      const long p = src.keys[s].a, q = src.keys[s].b;
      if (src.size[s] == 0) continue;
      long u = dst.find({p - 1, q});
      if (u >= 0 && dst.size[u] > 0)
        out.add_block(dst.offset[u], src.offset[s], kron_identity_right(x_.d(p), y_.rank(q)).act_on(t_));
      u = dst.find({p, q - 1});
      if (u >= 0 && dst.size[u] > 0)
        out.add_block(dst.offset[u], src.offset[s], kron_identity_left(x_.rank(p), y_.d(q)).act_on(t_).scaled(f.sign(p)));
    }
  }

 private:
  FreeTypeComplex x_, y_;
  Module t_;
};

/// Hom(F, F') with both of free type over R in degrees >= 0; block (p, r) in total degree r - p holds
/// the b'_r x b_p matrices over R, vectorized column-major.
class HomModel : public DoubleModel {
 public:
  HomModel(FreeTypeComplex f, FreeTypeComplex g) : f_(std::move(f)), g_(std::move(g)), r_(f_.base) {}
  const Field& field() const override { return r_.field(); }

  std::optional<Blocks> blocks(long m, long L, long i) const override {
    Blocks b;
    const long top = std::min(L, f_.hi());
    for (long p = std::max(0L, i - m); p <= top; ++p) {
      const long r = p + m;
      if (r > g_.hi()) {
        if (!g_.bounded_above) return std::nullopt;
        continue;
      }
      b.add({p, r}, f_.rank(p) * g_.rank(r) * r_.dim());
    }
    if (L > f_.hi() && !f_.bounded_above) return std::nullopt;
    return b;
  }

  void differential(Matrix& out, const Blocks& src, const Blocks& dst, long m) const override {
    const Field& fl = field();
    const Scalar s = fl.neg(hom_sign(fl, m));
    for (std::size_t t = 0; t < src.keys.size(); ++t) {
      const long p = src.keys[t].a, r = src.keys[t].b;
      if (src.size[t] == 0) continue;
      long u = dst.find({p, r - 1});
      if (u >= 0 && dst.size[u] > 0)
        out.add_block(dst.offset[u], src.offset[t], kron_identity_left(f_.rank(p), g_.d(r)).act_on(r_));
      u = dst.find({p + 1, r});
      if (u >= 0 && dst.size[u] > 0)
        out.add_block(dst.offset[u], src.offset[t],
                      kron_identity_right(f_.d(p + 1).transposed(), g_.rank(r)).act_on(r_).scaled(s));
    }
  }

 private:
  FreeTypeComplex f_, g_;
  Module r_;
};

struct SystemInput {
  const DoubleModel* model = nullptr;
  long deg = 0;                         // homological degree of the chunk
  std::function<long(long)> stable_L;   // L at which stage i is provably stable
  Direction direction = Direction::Inverse;
  std::optional<TowerPeriod> period;    // predicted repetition of the chunk data in i
  std::size_t window = 3;
  std::size_t budget = 4096;
  long max_i = 0;
};

inline long lcm_positive(long a, long b) { return a / std::gcd(a, b) * b; }

/// Builds the i-system of stably truncated homologies and evaluates it.
inline DegreeReport evaluate_system(const SystemInput& in) {
  const Field& f = in.model->field();
  AlgebraPtr k = Algebra::prime_field(f);
  DegreeReport rep;
  Tower tower;
  tower.direction = in.direction;
  std::optional<ChunkHomology> aux_prev;
  std::optional<ChunkHomology> stage_prev;
  std::string stop = "reached the largest index the computed window supports";
  for (long i = 0; i <= in.max_i; ++i) {
    const long li = in.stable_L(i);
    auto stage = chunk_homology(*in.model, k, in.deg, li, i, in.budget);
    if (!stage) {
      stop = "stage " + std::to_string(i) + " exceeds the window or the cell budget";
      break;
    }
    if (i > 0) {
      // transition between stage i-1 and stage i through aux_{i-1} = H(L_{i-1} + 1, i-1) = H(L_i, i-1)
      const ChunkHomology& aux = *aux_prev;
      const ChunkHomology& prev = *stage_prev;
      if (in.direction == Direction::Inverse) {
        Matrix j = induced(prev, aux, f);   // stage_{i-1} -> aux, an isomorphism
        Matrix kk = induced(*stage, aux, f);  // stage_i -> aux
        if (!is_invertible(j)) {
          rep.reason = "L-stabilization check failed at i = " + std::to_string(i - 1);
          rep.status = StableStatus::Inconclusive;
          return rep;
        }
        tower.transitions.push_back(inverse(j) * kk);
      } else {
        Matrix j = induced(aux, prev, f);   // aux -> stage_{i-1}
        Matrix kk = induced(aux, *stage, f);  // aux -> stage_i
        if (!is_invertible(j)) {
          rep.reason = "L-stabilization check failed at i = " + std::to_string(i - 1);
          rep.status = StableStatus::Inconclusive;
          return rep;
        }
        tower.transitions.push_back(kk * inverse(j));
      }
    }
    tower.stages.push_back(stage->h.module);
    rep.table.push_back({li, i, long(stage->h.module.dim())});
    // the audit cells L_i + 1, ..., L_i + w - 1; the first of them is needed for the next transition
    bool more = true;
    for (long e = 1; e < long(std::max<std::size_t>(in.window, 2)); ++e) {
      auto cell = chunk_homology(*in.model, k, in.deg, li + e, i, in.budget);
      rep.table.push_back({li + e, i, cell ? long(cell->h.module.dim()) : -1});
      if (cell && cell->h.module.dim() != stage->h.module.dim()) {
        rep.reason = "L-stabilization audit failed at (L, i) = (" + std::to_string(li + e) + ", " +
                     std::to_string(i) + ")";
        rep.status = StableStatus::Inconclusive;
        return rep;
      }
      if (e == 1) {
        if (!cell) more = false;
        aux_prev = std::move(cell);
      }
    }
    stage_prev = std::move(stage);
    if (!more) {
      stop = "auxiliary cell for index " + std::to_string(i) + " exceeds the window or the cell budget";
      break;
    }
  }
  for (auto& s : tower.stages) rep.stage_dims.push_back(s.dim());
  if (tower.stages.empty()) {
    rep.reason = stop;
    return rep;
  }
  if (in.period) {
    tower.period = in.period;
    if (tower.validate()) tower.period.reset();
  }
  rep.tower_period = tower.period;
  LimReport l = in.direction == Direction::Inverse ? lim_lim1(tower, in.window) : colim(tower, in.window);
  if (l.kind == LimKind::Module) {
    rep.kind = ValueKind::Count;
    rep.dim = l.lim->dim();
    rep.status = l.periodic ? StableStatus::CertifiedPeriodic : StableStatus::StabilizedHeuristic;
    rep.reason = l.route;
  } else if (l.kind == LimKind::DimensionSequence) {
    rep.kind = ValueKind::DimensionSequence;
    rep.sequence = l.dims;
    rep.status = StableStatus::StabilizedHeuristic;
    rep.reason = l.route;
  } else {
    rep.reason = l.route + "; " + stop;
  }
  return rep;
}

template <class Fn>
void parallel_for(long lo, long hi, Fn fn) {
  const std::size_t threads = std::min<std::size_t>(engine_threads(), std::size_t(std::max(0L, hi - lo + 1)));
  if (threads <= 1) {
    for (long n = lo; n <= hi; ++n) fn(n);
    return;
  }
  std::atomic<long> next{lo};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (long n = next++; n <= hi; n = next++) fn(n);
    });
  for (auto& th : pool) th.join();
}

inline void fill_vanished(StableReport& rep, const std::string& why) {
  for (long n = rep.lo; n <= rep.hi; ++n) {
    DegreeReport d;
    d.n = n;
    d.kind = ValueKind::Vanished;
    d.status = StableStatus::ExactBounded;
    d.reason = why;
    rep.degrees.push_back(d);
  }
}

inline void cap_status(StableReport& rep, const SemidualizingCertificate& c) {
  if (c.status == SemidualStatus::Certified) return;
  for (auto& d : rep.degrees)
    if (d.status == StableStatus::CertifiedPeriodic) {
      d.status = StableStatus::StabilizedHeuristic;
      d.reason += "; semidualizing property only verified up to the horizon";
    }
}

/// Predicted period of the i-system: both resolutions periodic, chunk data repeat once every index is past
/// both starts. For stor the vertical sign (-1)^p needs an even shift outside characteristic 2.
inline std::optional<TowerPeriod> predicted_period(const std::optional<PeriodCertificate>& a,
                                                   const std::optional<PeriodCertificate>& b, long shift_a,
                                                   bool needs_even, const Field& f) {
  if (!a || !b || a->period < 1 || b->period < 1) return std::nullopt;
  long q = lcm_positive(a->period, b->period);
  if (needs_even && f.p() != 2 && q % 2) q *= 2;
  long s = std::max({0L, a->start - shift_a + 1, b->start});
  return TowerPeriod{s, q};
}

}  // namespace detail

/// H_n(X_{<=L} (x) Y_{<=-i}) with its comparison maps to the neighbouring truncations.
struct TruncatedHomology {
  Module module;                 // over the prime field
  std::optional<Matrix> to_i_minus_1;  // induced by Y_{<=-i} inside Y_{<=-i+1}
  std::optional<Matrix> to_L_plus_1;   // induced by X_{<=L} inside X_{<=L+1}
};

inline TruncatedHomology truncated_tensor_homology(const ProperResolution& x, const ProperResolution& y, long n,
                                                   long i, long L, std::size_t budget = 1u << 14) {
  require(x.tag != ClassTag::IC && y.tag == ClassTag::IC, ErrorKind::InvalidArgument,
          "expects a resolution and a coresolution");
  TensorProduct t = tensor_module(x.c, y.ftc.base);
  detail::TensorModel model(x.ftc, y.ftc, t.module);
  AlgebraPtr k = Algebra::prime_field(x.c.field());
  auto h = detail::chunk_homology(model, k, n, L, i, budget);
  require(h.has_value(), ErrorKind::InsufficientWindow, "truncation outside the computed window");
  TruncatedHomology out{h->h.module, std::nullopt, std::nullopt};
  if (i > 0)
    if (auto g = detail::chunk_homology(model, k, n, L, i - 1, budget))
      out.to_i_minus_1 = detail::induced(*h, *g, x.c.field());
  if (auto g = detail::chunk_homology(model, k, n, L + 1, i, budget))
    out.to_L_plus_1 = detail::induced(*h, *g, x.c.field());
  return out;
}

inline StableReport stor(const StorQuery& q) {
  require(q.c.status != SemidualStatus::Refuted, ErrorKind::Precondition, "C is not semidualizing");
  require(q.lo <= q.hi, ErrorKind::InvalidArgument, "empty degree range");
  require_same_algebra(q.c.c, q.m);
  require_same_algebra(q.c.c, q.n);
  const Module& c = q.c.c;
  StableReport rep;
  rep.quantity = "stor";
  rep.variant = "PC-IC";
  rep.lo = q.lo;
  rep.hi = q.hi;
  rep.length = q.length;
  rep.depth = q.depth;
  rep.window = q.window;
  rep.max_cell_dim = q.max_cell_dim;
  rep.scheme = "S_i = H_n(X_{<=n+i+1} (x) Y_{<=-i}), exact in L; lim over i";
  // short probes first, alternating sides: a bounded side settles every degree without the
  // long computations
  ProperResolution x = proper_pc_resolution(c, q.m, std::min(q.length, 2L), q.opt);
  std::optional<ProperResolution> yp;
  for (long probe : {2L, 6L}) {
    if (probe > 2 && q.length > 2) x = proper_pc_resolution(c, q.m, std::min(q.length, probe), q.opt);
    if (x.provenance.exhausted) break;
    yp = proper_ic_coresolution(c, q.n, std::min(q.depth, probe), q.opt);
    if (yp->provenance.exhausted) break;
  }
  if (!x.provenance.exhausted && !yp->provenance.exhausted) {
    if (q.length > 6) x = proper_pc_resolution(c, q.m, q.length, q.opt);
    if (q.depth > 6) yp = proper_ic_coresolution(c, q.n, q.depth, q.opt);
  }
  rep.left_route = "proper P_C-resolution C (x) F, F minimal free resolution of Hom(C, M)";
  rep.right_route = "proper I_C-coresolution Hom(C, I), I minimal injective resolution of C (x) N";
  rep.left_dimension = x.provenance.finite_dimension();
  rep.left_period = x.provenance.period;
  if (yp) {
    rep.right_dimension = yp->provenance.finite_dimension();
    rep.right_period = yp->provenance.period;
  }
  if (x.provenance.exhausted || yp->provenance.exhausted) {
    detail::fill_vanished(rep, x.provenance.exhausted ? "bounded P_C-resolution" : "bounded I_C-coresolution");
    return rep;
  }
  const ProperResolution& y = *yp;
  TensorProduct t = tensor_module(c, y.ftc.base);
  const bool evaluation_ok = t.module.dim() == c.algebra()->dim();
  detail::TensorModel model(x.ftc, y.ftc, t.module);
  rep.degrees.resize(std::size_t(q.hi - q.lo + 1));
  detail::parallel_for(q.lo, q.hi, [&](long n) {
    DegreeReport d;
    if (!evaluation_ok) {
      d.reason = "C (x) Hom(C, E) differs from E; the L-bound does not apply";
    } else {
      detail::SystemInput in;
      in.model = &model;
      in.deg = n;
      in.stable_L = [n](long i) { return n + i + 1; };
      in.direction = Direction::Inverse;
      in.period = detail::predicted_period(x.provenance.period, y.provenance.period, n, true, c.field());
      in.window = q.window;
      in.budget = q.max_cell_dim;
      in.max_i = std::max(q.length, q.depth);
      d = detail::evaluate_system(in);
    }
    d.n = n;
    rep.degrees[std::size_t(n - q.lo)] = std::move(d);
  });
  detail::cap_status(rep, q.c);
  return rep;
}

/// Both sides of the balance isomorphism: the engine on (M, N) and, with C = R, on (Hom(C, M), C (x) N).
inline std::pair<StableReport, StableReport> stor_balanced_pair(const StorQuery& q) {
  StableReport left = stor(q);
  StorQuery r = q;
  r.c = verify_semidualizing(regular_module(q.c.c.algebra()));
  r.m = hom_module(q.c.c, q.m).module;
  r.n = tensor_module(q.c.c, q.n).module;
  return {std::move(left), stor(r)};
}

struct SextQuery {
  SemidualizingCertificate c;
  Module m, n;
  SextVariant variant = SextVariant::F;
  long lo = -4, hi = 4;
  long length = 16;
  std::size_t window = 3;
  std::size_t max_cell_dim = 4096;
  ResolutionOptions opt{};
};

namespace detail {

/// The F computation: colim_i H_{-n} Hom(F_{<=L}, F'_{>=i}) for minimal free resolutions F of a, F' of b.
inline StableReport sext_free(const Module& a, const Module& b, const SextQuery& q, const std::string& route) {
  StableReport rep;
  rep.quantity = "sext";
  rep.variant = to_string(q.variant);
  rep.lo = q.lo;
  rep.hi = q.hi;
  rep.length = q.length;
  rep.depth = q.length;
  rep.window = q.window;
  rep.max_cell_dim = q.max_cell_dim;
  rep.scheme = "colim over i of H_{-n} Hom(F_{<=n+i+1}, F'_{>=i}), exact in L";
  const long probe = 6;
  Resolution f = minimal_free_resolution(a, std::min(q.length, probe), q.opt);
  Resolution g = f.exhausted ? f : minimal_free_resolution(b, std::min(q.length, probe), q.opt);
  if (!f.exhausted && !g.exhausted && q.length > probe) {
    f = minimal_free_resolution(a, q.length, q.opt);
    g = minimal_free_resolution(b, q.length, q.opt);
  }
  rep.left_route = route + ": minimal free resolution of the first argument";
  rep.right_route = route + ": minimal free resolution of the second argument";
  rep.left_dimension = f.finite_dimension();
  rep.right_dimension = g.finite_dimension();
  rep.left_period = f.period;
  rep.right_period = g.period;
  if (f.exhausted || g.exhausted) {
    fill_vanished(rep, f.exhausted ? "bounded resolution of the first argument"
                                   : "bounded resolution of the second argument");
    return rep;
  }
  HomModel model(f.ftc, g.ftc);
  rep.degrees.resize(std::size_t(q.hi - q.lo + 1));
  parallel_for(q.lo, q.hi, [&](long n) {
    SystemInput in;
    in.model = &model;
    in.deg = -n;
    in.stable_L = [n](long i) { return n + i + 1; };
    in.direction = Direction::Direct;
    in.period = predicted_period(f.period, g.period, n, false, a.field());
    in.window = q.window;
    in.budget = q.max_cell_dim;
    in.max_i = q.length;
    DegreeReport d = evaluate_system(in);
    d.n = n;
    rep.degrees[std::size_t(n - q.lo)] = std::move(d);
  });
  return rep;
}

}  // namespace detail

/// Stable cohomology. FC runs F on (Hom(C, M), Hom(C, N)); I runs F on (dual N, dual M) by Matlis duality;
/// IC runs I on (C (x) M, C (x) N).
inline StableReport sext(const SextQuery& q) {
  require(q.lo <= q.hi, ErrorKind::InvalidArgument, "empty degree range");
  require_same_algebra(q.m, q.n);
  const bool needs_c = q.variant == SextVariant::FC || q.variant == SextVariant::IC;
  if (needs_c) {
    require(q.c.status != SemidualStatus::Refuted, ErrorKind::Precondition, "C is not semidualizing");
    require_same_algebra(q.c.c, q.m);
  }
  StableReport rep;
  switch (q.variant) {
    case SextVariant::F:
      rep = detail::sext_free(q.m, q.n, q, "F");
      break;
    case SextVariant::FC:
      rep = detail::sext_free(hom_module(q.c.c, q.m).module, hom_module(q.c.c, q.n).module, q, "F on Hom(C, -)");
      break;
    case SextVariant::I:
      rep = detail::sext_free(dual_module(q.n), dual_module(q.m), q, "F on Matlis duals");
      break;
    case SextVariant::IC:
      rep = detail::sext_free(dual_module(tensor_module(q.c.c, q.n).module),
                              dual_module(tensor_module(q.c.c, q.m).module), q, "F on duals of C (x) -");
      break;
  }
  if (needs_c) detail::cap_status(rep, q.c);
  return rep;
}

}  // namespace stablehom

#endif  // STABLEHOM_STORENGINE_HPP
