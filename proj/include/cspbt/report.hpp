// JSON renderings of proof traces, denotations, relations and harness reports.
#pragma once

#include "json.hpp"

#include "cspbt/canonical.hpp"
#include "cspbt/fdmodel.hpp"
#include "cspbt/harness.hpp"

namespace cspbt {

using Json = nlohmann::ordered_json;

inline Json to_json(const ProofStep& s) {
  Json j;
  j["axiom"] = s.axiom;
  j["path"] = s.path;
  j["direction"] = direction_name(s.direction);
  if (s.witness) j["witness"] = unparse(*s.witness);
  return j;
}

inline Json to_json(const ProofTrace& t) {
  Json j = Json::array();
  for (const auto& s : t) j.push_back(to_json(s));
  return j;
}

/// Inverse of to_json for traces; witnesses are parsed back into terms.
inline ProofTrace trace_from_json(const Json& j) {
  ProofTrace t;
  for (const auto& e : j) {
    ProofStep s;
    s.axiom = e.at("axiom").get<std::string>();
    s.path = e.at("path").get<Path>();
    const auto dir = e.at("direction").get<std::string>();
    if (dir == "right-to-left")
      s.direction = Direction::RightToLeft;
    else if (dir != "left-to-right")
      throw std::invalid_argument("unknown direction: " + dir);
    if (e.contains("witness")) s.witness = parse(e.at("witness").get<std::string>());
    t.push_back(std::move(s));
  }
  return t;
}

inline Json to_json(const ActionSet& s) { return Json(std::vector<Action>(s.begin(), s.end())); }

/// Explicit view of a denotation: traces up to `depth`, each with its maximal refusals,
/// plus the minimal divergences.
inline Json to_json(const FdDenotation& d, std::size_t depth) {
  Json j;
  j["alphabet"] = d.alphabet;
  Json divs = Json::array(), fails = Json::array();
  bool complete = d.for_each_trace(depth, [&](const Trace& t, std::size_t n) {
    if (d.nodes[n].divergent) {
      divs.push_back(t);
      return;
    }
    Json refusals = Json::array();
    for (auto r : d.nodes[n].refusals) refusals.push_back(to_json(d.set_of(r)));
    fails.push_back(Json{{"trace", t}, {"maximal_refusals", refusals}});
  });
  j["minimal_divergences"] = divs;
  j["failures"] = fails;
  j["complete"] = complete;
  return j;
}

inline Json to_json(const SimRelation& r) {
  Json j = Json::array();
  for (auto [s, t] : r.pairs()) j.push_back(Json::array({s, t}));
  return j;
}

/// Reads an array of [source, target] state pairs over an LTS with `n` states.
inline SimRelation relation_from_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw std::invalid_argument("relation must be an array of pairs");
  SimRelation r(n);
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("relation entry is not a pair");
    auto s = e[0].get<std::size_t>(), t = e[1].get<std::size_t>();
    if (s >= n || t >= n) throw std::invalid_argument("relation mentions a state out of range");
    r.insert(s, t);
  }
  return r;
}

inline Json to_json(const Violation& v) {
  return Json{{"source", v.source}, {"target", v.target}, {"clause", clause_name(v.clause)}};
}

inline Json to_json(const AxiomReport& a) {
  Json j;
  j["axiom"] = a.name;
  j["tier"] = tier_name(a.tier);
  j["instances"] = a.instances;
  j["holds"] = a.ok();
  Json vs = Json::array();
  for (const auto& v : a.violations)
    vs.push_back(Json{{"check", v.check}, {"index", v.index}, {"lhs", unparse(v.lhs)},
                      {"rhs", unparse(v.rhs)}});
  j["violations"] = vs;
  if (!a.error.empty()) j["error"] = a.error;
  return j;
}

inline Json to_json(const NormalForm& n);

inline Json to_json(const std::vector<NfBranch>& bs) {
  Json j = Json::array();
  for (const auto& b : bs) j.push_back(Json{{"action", b.action}, {"body", to_json(b.body)}});
  return j;
}

inline Json to_json(const NormalForm& n) {
  Json j;
  j["div"] = n.div_top;
  j["branches"] = to_json(n.branches);
  if (n.has_slide()) {
    Json s = Json::array();
    for (const auto& d : n.slide) s.push_back(Json{{"div", d.div}, {"branches", to_json(d.branches)}});
    j["slide"] = s;
  }
  return j;
}

}  // namespace cspbt
