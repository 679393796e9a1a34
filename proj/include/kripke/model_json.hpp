#pragma once

// Model JSON, exact schema:
//   {"mode": "modal|intuitionistic|visser", "worlds": [...],
//    "relation": [[w,w'],...], "domains": {w: [...]},
//    "interpretation": [{"world": w, "letter": "P", "tuple": ["a"]}]}
// Unknown keys are rejected on input.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "kripke/model.hpp"

namespace kripke {

inline nlohmann::ordered_json model_to_json(const Model& m) {
  nlohmann::ordered_json j;
  j["mode"] = mode_name(m.mode);
  j["worlds"] = m.frame().worlds;
  auto rel = nlohmann::ordered_json::array();
  for (const auto& [a, b] : m.frame().relation) rel.push_back({a, b});
  j["relation"] = rel;
  auto doms = nlohmann::ordered_json::object();
  for (const auto& w : m.frame().worlds) doms[w] = m.domain(w);
  j["domains"] = doms;
  auto interp = nlohmann::ordered_json::array();
  for (const auto& [key, tuples] : m.interpretation)
    for (const auto& t : tuples)
      interp.push_back({{"world", key.first}, {"letter", key.second}, {"tuple", t}});
  j["interpretation"] = interp;
  return j;
}

inline Model model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("model json: expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "mode" && key != "worlds" && key != "relation" && key != "domains" &&
        key != "interpretation")
      throw std::invalid_argument("model json: unknown key '" + key + "'");
  }
  for (const char* key : {"mode", "worlds", "relation", "domains", "interpretation"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("model json: missing key '") + key + "'");

  Model m;
  std::string mode = j.at("mode").get<std::string>();
  if (mode == "modal") m.mode = Mode::Modal;
  else if (mode == "intuitionistic") m.mode = Mode::Intuitionistic;
  else if (mode == "visser") m.mode = Mode::Visser;
  else throw std::invalid_argument("model json: unknown mode '" + mode + "'");

  for (const auto& w : j.at("worlds")) m.frame().add_world(w.get<std::string>());
  for (const auto& e : j.at("relation")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("model json: relation entries must be pairs");
    m.frame().add_edge(e[0].get<std::string>(), e[1].get<std::string>());
  }
  for (const auto& [w, d] : j.at("domains").items()) {
    std::set<Individual> dom;
    for (const auto& x : d) dom.insert(x.get<std::string>());
    if (!m.frame().has_world(w))
      throw std::invalid_argument("model json: domain for unknown world '" + w + "'");
    m.pf.domains[w] = std::move(dom);
  }
  for (const auto& entry : j.at("interpretation")) {
    if (!entry.is_object()) throw std::invalid_argument("model json: interpretation entries must be objects");
    for (const auto& [key, value] : entry.items()) {
      (void)value;
      if (key != "world" && key != "letter" && key != "tuple")
        throw std::invalid_argument("model json: unknown interpretation key '" + key + "'");
    }
    Tuple t;
    for (const auto& x : entry.at("tuple")) t.push_back(x.get<std::string>());
    m.set_true(entry.at("world").get<std::string>(), entry.at("letter").get<std::string>(),
               std::move(t));
  }
  return m;
}

}  // namespace kripke
