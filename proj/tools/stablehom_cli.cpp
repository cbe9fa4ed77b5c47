// stablehom: batch front end. Every command prints one JSON report on stdout.
//
// exit status: 0 computed or verified, 1 refuted or axiom violation, 2 parse or usage error,
// 3 inconclusive results only, 4 internal error.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stablehom.hpp"

using namespace stablehom;

namespace {

struct Options {
  std::string degrees = "-4:4";
  long length = 16, depth = 16, horizon = 12;
  std::size_t window = 3, max_cell_dim = 4096, count = 0;
  std::string variant = "F", side = "first";
  std::uint64_t seed = 1;
  bool timing = false, injective = false, tables = true;
};

std::pair<long, long> parse_degrees(const std::string& s) {
  auto sep = s.find("..") != std::string::npos ? s.find("..") : s.find(':');
  std::size_t skip = s.find("..") != std::string::npos ? 2 : 1;
  try {
    if (sep == std::string::npos || sep == 0) throw std::invalid_argument("");
    long lo = std::stol(s.substr(0, sep)), hi = std::stol(s.substr(sep + skip));
    if (lo > hi) throw std::invalid_argument("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw ParseError("--degrees", 1, 1, "expected LO:HI with LO <= HI, found '" + s + "'");
  }
}

SextVariant parse_variant(const std::string& s) {
  if (s == "F") return SextVariant::F;
  if (s == "FC") return SextVariant::FC;
  if (s == "I") return SextVariant::I;
  if (s == "IC") return SextVariant::IC;
  throw ParseError("--variant", 1, 1, "expected F, FC, I or IC, found '" + s + "'");
}

HarnessParams harness(const Options& o) {
  HarnessParams p;
  std::tie(p.lo, p.hi) = parse_degrees(o.degrees);
  p.length = o.length;
  p.depth = o.depth;
  p.window = o.window;
  p.max_cell_dim = o.max_cell_dim;
  p.horizon = o.horizon;
  p.seed = o.seed;
  return p;
}

Json files_echo(const std::vector<std::string>& files) { return Json(files); }

void emit(Json& j, const Options& o, std::chrono::steady_clock::time_point start) {
  if (o.timing)
    j["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  std::cout << j.dump(2) << "\n";
}

int cmd_check(const std::string& ring_path, const Options& o) {
  auto start = std::chrono::steady_clock::now();
  Json j = report_envelope("check");
  j["ring_file"] = ring_path;
  auto [alg, failure] = check_ring_text(detail::read_file(ring_path), ring_path);
  if (failure) {
    j["axioms"] = "violated";
    j["failure"] = Json{{"axiom", failure->axiom}, {"basis_indices", failure->basis_indices}, {"message", failure->message}};
    emit(j, o, start);
    return 1;
  }
  j["axioms"] = "ok";
  j["ring"] = to_json(*alg);
  j["radical_basis"] = subspace_basis(alg->radical(), *alg);
  j["socle_dimension"] = alg->socle().dim();
  IsoStatus g = is_gorenstein(alg);
  j["gorenstein"] = g == IsoStatus::Isomorphic ? "yes" : (g == IsoStatus::NotIsomorphic ? "no" : "undecided");
  emit(j, o, start);
  return g == IsoStatus::Undecided ? 3 : 0;
}

int cmd_semidualizing(const std::vector<std::string>& files, const Options& o) {
  auto start = std::chrono::steady_clock::now();
  AlgebraPtr alg = load_ring(files.at(0));
  Module c = load_module(files.at(1), alg);
  SemidualizingCertificate cert = verify_semidualizing(c, o.horizon);
  Json j = report_envelope("semidualizing");
  j["files"] = files_echo(files);
  j["certificate"] = to_json(cert);
  emit(j, o, start);
  switch (cert.status) {
    case SemidualStatus::Certified: return 0;
    case SemidualStatus::Refuted: return 1;
    case SemidualStatus::UpToHorizon: return 3;
  }
  return 3;
}

int cmd_resolve(const std::vector<std::string>& files, const Options& o) {
  auto start = std::chrono::steady_clock::now();
  AlgebraPtr alg = load_ring(files.at(0));
  Module m = load_module(files.at(1), alg);
  Resolution r = o.injective ? injective_coresolution(m, o.length) : minimal_free_resolution(m, o.length);
  Json j = report_envelope("resolve");
  j["files"] = files_echo(files);
  j["resolution"] = to_json(r);
  j["dimension"] = to_json(classify_resolution(o.injective ? minimal_free_resolution(dual_module(m), o.length) : r));
  emit(j, o, start);
  return 0;
}

int cmd_stable(const std::string& which, const std::vector<std::string>& files, const Options& o) {
  auto start = std::chrono::steady_clock::now();
  AlgebraPtr alg = load_ring(files.at(0));
  Module c = load_module(files.at(1), alg), m = load_module(files.at(2), alg), n = load_module(files.at(3), alg);
  auto [lo, hi] = parse_degrees(o.degrees);
  SemidualizingCertificate cert = verify_semidualizing(c, o.horizon);
  StableReport r;
  if (which == "stor") {
    StorQuery q;
    q.c = cert;
    q.m = m;
    q.n = n;
    q.lo = lo;
    q.hi = hi;
    q.length = o.length;
    q.depth = o.depth;
    q.window = o.window;
    q.max_cell_dim = o.max_cell_dim;
    r = stor(q);
  } else {
    SextQuery q;
    q.c = cert;
    q.m = m;
    q.n = n;
    q.variant = parse_variant(o.variant);
    q.lo = lo;
    q.hi = hi;
    q.length = o.length;
    q.window = o.window;
    q.max_cell_dim = o.max_cell_dim;
    r = sext(q);
  }
  Json j = report_envelope(which);
  j["files"] = files_echo(files);
  j["semidualizing"] = to_json(cert);
  j["result"] = to_json(r, o.tables);
  emit(j, o, start);
  return exit_code(r);
}

std::vector<std::pair<Sample, Sample>> default_pairs(const Module& c) {
  const AlgebraPtr& alg = c.algebra();
  Module rr = regular_module(alg), k = residue_module(alg), m = submodule(rr, alg->radical());
  std::vector<std::pair<Sample, Sample>> out = {
      {{"C", c}, {"k", k}}, {{"C", c}, {"m", m}}, {{"k", k}, {"k", k}}, {{"k", k}, {"R", rr}}, {{"R", rr}, {"k", k}}};
  return out;
}

int cmd_verify(const std::string& theorem, const std::vector<std::string>& files, const Options& o) {
  auto start = std::chrono::steady_clock::now();
  HarnessParams p = harness(o);
  Json j = report_envelope("verify");
  j["theorem"] = theorem;
  j["files"] = files_echo(files);
  j["parameters"] = Json{{"degrees", {p.lo, p.hi}}, {"length", p.length}, {"depth", p.depth}, {"window", p.window},
                         {"horizon", p.horizon}, {"seed", p.seed}};
  auto need = [&](std::size_t k) {
    if (files.size() < k)
      throw ParseError("verify", 1, 1, theorem + " needs " + std::to_string(k) + " input file(s)");
  };
  TheoremReport rep;
  if (theorem == "towers") {
    Field f(2);
    if (!files.empty()) f = load_ring(files[0])->field();
    std::size_t max_dim = o.count ? o.count : 6;
    rep = verify_dual_colimit_vanishing(nilpotent_constant_towers(f, max_dim, 3 * max_dim + 6), o.window);
  } else {
    need(1);
    AlgebraPtr alg = load_ring(files[0]);
    auto module_at = [&](std::size_t i) { return load_module(files.at(i), alg); };
    if (theorem == "associativity" || theorem == "adjunction") {
      rep = verify_random_triples(alg, theorem == "associativity" ? ComplexTheorem::Associativity : ComplexTheorem::Adjunction,
                                  o.count ? o.count : 200, p.seed);
    } else if (theorem == "filtrations") {
      rep = verify_filtrations({alg}, o.count ? o.count : 50, p.seed);
    } else {
      need(2);
      Module c = module_at(1);
      SemidualizingCertificate cert = verify_semidualizing(c, p.horizon);
      j["semidualizing"] = to_json(cert);
      if (cert.status == SemidualStatus::Refuted) throw Error(ErrorKind::Precondition, "C is not semidualizing");
      if (theorem == "balance") {
        need(4);
        rep = verify_balance(cert, module_at(2), module_at(3), p);
      } else if (theorem == "dimension-shift") {
        need(4);
        bool first = o.side == "first";
        if (!first && o.side != "second") throw ParseError("--side", 1, 1, "expected first or second");
        Module m = module_at(2), n = module_at(3);
        rep = first ? verify_dimension_shift(cert, m, n, ShiftSide::First, p)
                    : verify_dimension_shift(cert, n, m, ShiftSide::Second, p);
      } else if (theorem == "vanishing") {
        bool first = o.side == "first";
        if (!first && o.side != "second") throw ParseError("--side", 1, 1, "expected first or second");
        rep = verify_vanishing(cert, sample_modules(c), first ? VanishingSide::First : VanishingSide::Second, p);
      } else if (theorem == "symmetry") {
        auto pairs = default_pairs(c);
        if (files.size() >= 4) pairs = {{{"M", module_at(2)}, {"N", module_at(3)}}};
        rep = verify_symmetry(cert, pairs, p);
      } else if (theorem == "sext-dimension") {
        rep = verify_sext_dimension(cert, sample_modules(c, 1), parse_variant(o.variant), p);
      } else if (theorem == "resolution-transfer") {
        rep = verify_resolution_transfer(c, sample_modules(c, 1));
      } else {
        throw ParseError("verify", 1, 1, "unknown theorem '" + theorem + "'");
      }
    }
  }
  j["report"] = to_json(rep);
  emit(j, o, start);
  return exit_code(rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable homology and cohomology with respect to a semidualizing module"};
  app.require_subcommand(1);
  Options o;
  std::string ring, theorem;
  std::vector<std::string> files;

  auto common = [&](CLI::App* s) {
    s->add_option("--degrees", o.degrees, "degree range LO:HI")->capture_default_str();
    s->add_option("--length", o.length, "length of P_C resolutions")->capture_default_str();
    s->add_option("--depth", o.depth, "depth of I_C coresolutions")->capture_default_str();
    s->add_option("--window", o.window, "stabilization window")->capture_default_str();
    s->add_option("--max-cell-dim", o.max_cell_dim, "F_p-dimension budget of a single cell")->capture_default_str();
    s->add_option("--horizon", o.horizon, "Ext horizon for certificates and dimension checks")->capture_default_str();
    s->add_flag("--timing", o.timing, "add wall-clock time to the report");
  };

  auto* check = app.add_subcommand("check", "validate a ring file");
  check->add_option("ring", ring, "ring file")->required();
  check->add_flag("--timing", o.timing, "add wall-clock time to the report");

  auto* sd = app.add_subcommand("semidualizing", "certify a module as semidualizing");
  sd->add_option("files", files, "RING C")->required()->expected(2);
  common(sd);

  auto* rs = app.add_subcommand("resolve", "minimal free resolution or injective coresolution");
  rs->add_option("files", files, "RING M")->required()->expected(2);
  rs->add_flag("--injective", o.injective, "injective coresolution instead of free resolution");
  common(rs);

  auto* st = app.add_subcommand("stor", "stable homology Stor_n(M, N) relative to C");
  st->add_option("files", files, "RING C M N")->required()->expected(4);
  st->add_flag("!--no-tables", o.tables, "omit the per-cell provenance tables");
  common(st);

  auto* se = app.add_subcommand("sext", "stable cohomology sExt^n(M, N)");
  se->add_option("files", files, "RING C M N")->required()->expected(4);
  se->add_option("--variant", o.variant, "F, FC, I or IC")->capture_default_str();
  se->add_flag("!--no-tables", o.tables, "omit the per-cell provenance tables");
  common(se);

  auto* vf = app.add_subcommand("verify", "run a theorem check");
  vf->add_option("theorem", theorem,
                 "associativity | adjunction | balance | dimension-shift | vanishing | symmetry | sext-dimension | "
                 "resolution-transfer | filtrations | towers")
      ->required();
  vf->add_option("files", files, "RING [C [M N]]");
  vf->add_option("--seed", o.seed, "seed of the random generator")->capture_default_str();
  vf->add_option("--count", o.count, "number of random instances (towers: largest stage dimension)");
  vf->add_option("--side", o.side, "first or second argument")->capture_default_str();
  vf->add_option("--variant", o.variant, "F, FC, I or IC")->capture_default_str();
  common(vf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(ring, o);
    if (*sd) return cmd_semidualizing(files, o);
    if (*rs) return cmd_resolve(files, o);
    if (*st) return cmd_stable("stor", files, o);
    if (*se) return cmd_stable("sext", files, o);
    if (*vf) return cmd_verify(theorem, files, o);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ErrorKind::AxiomViolation || e.kind() == ErrorKind::Precondition ? 1 : 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
