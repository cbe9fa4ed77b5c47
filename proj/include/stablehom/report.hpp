#ifndef STABLEHOM_REPORT_HPP
#define STABLEHOM_REPORT_HPP

// Structured reports. Field order is fixed (ordered_json) so that golden files stay byte-stable.

#include <string>

#include <json.hpp>

#include "stablehom/verify.hpp"

namespace stablehom {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json report_envelope(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

inline Json to_json(const Algebra& a) {
  Json j;
  j["characteristic"] = a.field().p();
  j["dimension"] = a.dim();
  j["basis"] = a.labels();
  return j;
}

inline Json matrix_rows(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json subspace_basis(const Subspace& s, const Algebra& a) {
  // each basis vector written as a linear combination of the ring basis labels
  Json out = Json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    Vector v = s.vec(i);
    std::string term;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k]) continue;
      if (!term.empty()) term += " + ";
      term += (v[k] == 1 ? "" : std::to_string(v[k]) + "*") + a.labels()[k];
    }
    out.push_back(term);
  }
  return out;
}

inline Json to_json(const std::optional<PeriodCertificate>& p) {
  if (!p) return nullptr;
  return Json{{"start", p->start}, {"period", p->period}};
}

inline Json to_json(const SemidualizingCertificate& c) {
  Json j;
  j["status"] = to_string(c.status);
  j["route"] = c.route;
  j["horizon"] = c.horizon;
  j["ext_dimensions"] = c.ext_dims;
  j["refuted_degree"] = c.refuted_degree ? Json(*c.refuted_degree) : Json(nullptr);
  j["unit_map_bijective"] = c.hom_iso.has_value();
  return j;
}

inline Json to_json(const Resolution& r) {
  Json j;
  j["kind"] = r.kind == ResolutionKind::Free ? "free" : "injective";
  j["requested"] = r.requested;
  j["computed"] = r.computed;
  j["exhausted"] = r.exhausted;
  j["budget_hit"] = r.budget_hit;
  j["finite_dimension"] = r.exhausted ? Json(r.finite_dimension()) : Json(nullptr);
  j["betti"] = r.betti;
  j["period"] = to_json(r.period);
  return j;
}

inline Json to_json(const RelativeDimension& d) {
  Json j;
  j["kind"] = to_string(d.kind);
  j["value"] = d.kind == DimensionKind::Finite ? Json(d.value) : Json(nullptr);
  j["reason"] = d.reason;
  return j;
}

inline Json to_json(const DegreeReport& d, bool with_tables = true) {
  Json j;
  j["degree"] = d.n;
  j["kind"] = to_string(d.kind);
  j["dimension"] = d.has_dim() ? Json(d.dim) : Json(nullptr);
  if (d.kind == ValueKind::DimensionSequence) j["sequence"] = d.sequence;
  j["status"] = to_string(d.status);
  j["reason"] = d.reason;
  j["stage_dimensions"] = d.stage_dims;
  j["tower_period"] = d.tower_period ? Json{{"start", d.tower_period->start}, {"period", d.tower_period->period}}
                                     : Json(nullptr);
  if (with_tables) {
    Json t = Json::array();
    for (auto& c : d.table) t.push_back(Json{{"L", c.L}, {"i", c.i}, {"dim", c.dim < 0 ? Json(nullptr) : Json(c.dim)}});
    j["table"] = std::move(t);
  }
  return j;
}

inline Json to_json(const StableReport& r, bool with_tables = true) {
  Json j;
  j["quantity"] = r.quantity;
  j["variant"] = r.variant;
  j["parameters"] = Json{{"degrees", {r.lo, r.hi}},
                         {"length", r.length},
                         {"depth", r.depth},
                         {"window", r.window},
                         {"max_cell_dim", r.max_cell_dim}};
  j["scheme"] = r.scheme;
  j["left"] = Json{{"route", r.left_route},
                   {"dimension", r.left_dimension == -2 ? Json(nullptr) : Json(r.left_dimension)},
                   {"period", to_json(r.left_period)}};
  j["right"] = Json{{"route", r.right_route},
                    {"dimension", r.right_dimension == -2 ? Json(nullptr) : Json(r.right_dimension)},
                    {"period", to_json(r.right_period)}};
  Json ds = Json::array();
  for (auto& d : r.degrees) ds.push_back(to_json(d, with_tables));
  j["degrees"] = std::move(ds);
  return j;
}

inline Json to_json(const TheoremReport& r) {
  Json j;
  j["theorem"] = r.theorem;
  j["overall"] = to_string(r.overall());
  j["counts"] = Json{{"verified", r.count(Outcome::Verified)},
                     {"refuted", r.count(Outcome::Refuted)},
                     {"inconclusive", r.count(Outcome::Inconclusive)}};
  Json is = Json::array();
  for (auto& i : r.instances) {
    Json x;
    x["label"] = i.label;
    x["outcome"] = to_string(i.outcome);
    x["detail"] = i.detail;
    x["statuses"] = i.statuses;
    if (!i.witness.empty()) x["witness"] = i.witness;
    is.push_back(std::move(x));
  }
  j["instances"] = std::move(is);
  return j;
}

/// Exit status as a function of report content: 0 computed or verified, 1 refuted, 3 inconclusive only.
inline int exit_code(const TheoremReport& r) {
  switch (r.overall()) {
    case Outcome::Verified: return 0;
    case Outcome::Refuted: return 1;
    case Outcome::Inconclusive: return r.count(Outcome::Verified) ? 0 : 3;
  }
  return 3;
}

inline int exit_code(const StableReport& r) {
  bool any = false;
  for (auto& d : r.degrees) any = any || d.status != StableStatus::Inconclusive;
  return any ? 0 : 3;
}

}  // namespace stablehom

#endif  // STABLEHOM_REPORT_HPP
