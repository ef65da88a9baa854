#include "metageo/json_io.hpp"

#include <nlohmann/json.hpp>

namespace metageo {

using nlohmann::json;

void to_json(json& j, const LatticeEdge& e) {
  j = json{{"base", e.base}, {"axis", e.axis}};
}

void from_json(const json& j, LatticeEdge& e) {
  j.at("base").get_to(e.base);
  j.at("axis").get_to(e.axis);
}

void to_json(json& j, const WalkInstance& inst) {
  j = json{{"start", inst.start}, {"targets", inst.targets}, {"end", inst.end}};
}

void from_json(const json& j, WalkInstance& inst) {
  j.at("start").get_to(inst.start);
  j.at("targets").get_to(inst.targets);
  j.at("end").get_to(inst.end);
}

void to_json(json& j, const WalkSolution& sol) {
  j = json{{"length", sol.length}, {"order", sol.order}};
}

void from_json(const json& j, WalkSolution& sol) {
  j.at("length").get_to(sol.length);
  j.at("order").get_to(sol.order);
}

void to_json(json& j, const SteinerInstance& inst) { j = json{{"terminals", inst.terminals}}; }

void from_json(const json& j, SteinerInstance& inst) { j.at("terminals").get_to(inst.terminals); }

void to_json(json& j, const GroupSteinerInstance& inst) { j = json{{"groups", inst.groups}}; }

void from_json(const json& j, GroupSteinerInstance& inst) { j.at("groups").get_to(inst.groups); }

void to_json(json& j, const TreeResult& tree) {
  j = json{{"length", tree.total_length}, {"edges", tree.edges}};
}

void from_json(const json& j, TreeResult& tree) {
  j.at("length").get_to(tree.total_length);
  j.at("edges").get_to(tree.edges);
}

void to_json(json& j, const Flow& f) {
  json edges = json::array();
  for (const auto& [e, v] : f.values) {
    edges.push_back(json{{"base", e.base}, {"axis", e.axis}, {"value", v}});
  }
  j = json{{"rank", f.rank}, {"endpoint", f.endpoint}, {"edges", std::move(edges)}};
}

void from_json(const json& j, Flow& f) {
  f.values.clear();
  j.at("rank").get_to(f.rank);
  j.at("endpoint").get_to(f.endpoint);
  for (const auto& entry : j.at("edges")) {
    LatticeEdge e;
    entry.at("base").get_to(e.base);
    entry.at("axis").get_to(e.axis);
    std::int64_t v = entry.at("value").get<std::int64_t>();
    if (v != 0) f.values.emplace(std::move(e), v);
  }
}

json wreath_element_to_json(const WreathElement& g) {
  json support = json::array();
  for (const auto& [pos, val] : g.support) {
    support.push_back(json{{"position", pos}, {"lamps", val.exponents}});
  }
  return json{{"cursor", g.cursor}, {"support", std::move(support)}};
}

}  // namespace metageo
