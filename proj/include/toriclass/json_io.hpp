#pragma once

// JSON and CSV serializations used by the command-line tool.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "toriclass/catalog.hpp"
#include "toriclass/code.hpp"
#include "toriclass/equiv.hpp"
#include "toriclass/gf.hpp"
#include "toriclass/lattice.hpp"
#include "toriclass/minkowski.hpp"

namespace toriclass {

using Json = nlohmann::ordered_json;

inline Json to_json(const FieldSpec& F) {
  return Json{{"p", F.p()}, {"m", F.m()}, {"modulus", F.modulus()}, {"generator", F.generator()}};
}

inline Json to_json(const BoundReport& r) {
  return Json{{"L", r.L},
              {"A", to_string(r.A)},
              {"variant", to_string(r.variant)},
              {"q_threshold", to_string(r.q_threshold)},
              {"bound", r.bound_value}};
}

inline Json to_json(const MonomialWitness& w) { return Json{{"scale", w.scale}, {"perm", w.perm}}; }

inline MonomialWitness witness_from_json(const Json& j) {
  MonomialWitness w;
  try {
    w.scale = j.at("scale").get<std::vector<FieldElement>>();
    w.perm = j.at("perm").get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad witness JSON: ") + e.what());
  }
  return w;
}

inline Json to_json(const EquivalenceVerdict& v) {
  Json j{{"verdict", to_string(v.kind)}, {"certificate", v.certificate}};
  if (!v.value1.empty() || !v.value2.empty()) j["values"] = Json::array({v.value1, v.value2});
  j["evaluations"] = v.evaluations;
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

// Nonzero coefficients, descending weight: [{"weight":36,"count":7206}, ...].
inline Json enumerator_json(const WeightDistribution& W) {
  Json a = Json::array();
  for (std::size_t i = W.A.size(); i-- > 0;)
    if (W.A[i] != 0) a.push_back(Json{{"weight", i}, {"count", W.A[i]}});
  return a;
}

inline Json points_json(const LatticePolytope& P) {
  Json a = Json::array();
  for (const auto& p : P.points()) a.push_back(Json::array({p.x, p.y}));
  return a;
}

// Metadata sidecar for the shipped catalog file.
inline Json catalog_entry_json(const CatalogEntry& e) {
  Json j{{"id", to_string(e.id)}, {"k", e.id.k}, {"points", points_json(e.polytope)}};
  if (e.construction)
    j["construction"] = Json{{"base", to_string(e.construction->base)},
                             {"added", Json::array({e.construction->added.x, e.construction->added.y})}};
  if (e.distance) {
    Json d{{"formula", e.distance->text}, {"interval", e.distance->interval}};
    d["validity"] = e.distance->q_min == 0 ? "all q" : "q >= " + std::to_string(e.distance->q_min);
    d["q_min"] = e.distance->q_min;
    j["distance"] = d;
  }
  if (e.minkowski_L) j["L"] = *e.minkowski_L;
  if (e.obstruction) j["exceptional_obstruction"] = *e.obstruction;
  if (e.exceptional_subpolygon) j["exceptional_subpolygon"] = *e.exceptional_subpolygon;
  return j;
}

inline Json catalog_json(const Catalog& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries()) entries.push_back(catalog_entry_json(e));
  Json pairs = Json::array();
  for (const auto& p : exceptional_pairs()) pairs.push_back(Json{{"a", to_string(p.a)}, {"b", to_string(p.b)}, {"q", p.q}});
  return Json{{"entries", entries}, {"equivalent_pairs", pairs}};
}

inline std::string code_csv_header() { return "id,q,n,k,d,n1,n2,n3"; }

inline std::string code_csv_row(const std::string& id, std::int64_t q, const WeightDistribution& W, std::size_t k) {
  const auto s = special_weight_counts(W, q);
  const std::int64_t n = static_cast<std::int64_t>(W.A.size()) - 1;
  return id + "," + std::to_string(q) + "," + std::to_string(n) + "," + std::to_string(k) + "," +
         std::to_string(W.min_distance()) + "," + std::to_string(s.n1) + "," + std::to_string(s.n2) + "," +
         std::to_string(s.n3);
}

inline Json error_json(const Error& e) {
  Json j{{"error", e.kind()}, {"message", e.what()}};
  if (const auto* d = dynamic_cast<const DoesNotFit*>(&e)) j["q_min"] = d->q_min();
  if (const auto* t = dynamic_cast<const TooLarge*>(&e)) {
    j["required"] = t->required();
    j["budget"] = t->budget();
  }
  if (const auto* t = dynamic_cast<const ThresholdNotMet*>(&e))
    j["q_threshold"] = std::to_string(t->threshold_num()) + "/" + std::to_string(t->threshold_den());
  return j;
}

}  // namespace toriclass
