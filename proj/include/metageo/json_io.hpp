#pragma once

#include <nlohmann/json_fwd.hpp>

#include "metageo/lattice.hpp"
#include "metageo/lattice_tsp.hpp"
#include "metageo/metabelian.hpp"
#include "metageo/steiner.hpp"
#include "metageo/wreath.hpp"

// JSON schemas, one object per line on the wire:
//   walk instance  {"start":[...], "targets":[[...],...], "end":[...]}
//   walk solution  {"length":n, "order":[indices]}
//   steiner        {"terminals":[[...],...]} or {"groups":[[[...],...],...]}
//   tree result    {"length":n, "edges":[{"base":[...],"axis":k},...]}
//   flow           {"rank":r, "endpoint":[...], "edges":[{"base":[...],"axis":k,"value":v},...]}
//   wreath element {"cursor":[...], "support":[{"position":[...],"lamps":[...]},...]}

namespace metageo {

void to_json(nlohmann::json& j, const LatticeEdge& e);
void from_json(const nlohmann::json& j, LatticeEdge& e);

void to_json(nlohmann::json& j, const WalkInstance& inst);
void from_json(const nlohmann::json& j, WalkInstance& inst);
void to_json(nlohmann::json& j, const WalkSolution& sol);
void from_json(const nlohmann::json& j, WalkSolution& sol);

void to_json(nlohmann::json& j, const SteinerInstance& inst);
void from_json(const nlohmann::json& j, SteinerInstance& inst);
void to_json(nlohmann::json& j, const GroupSteinerInstance& inst);
void from_json(const nlohmann::json& j, GroupSteinerInstance& inst);
void to_json(nlohmann::json& j, const TreeResult& tree);
void from_json(const nlohmann::json& j, TreeResult& tree);

void to_json(nlohmann::json& j, const Flow& f);
void from_json(const nlohmann::json& j, Flow& f);

nlohmann::json wreath_element_to_json(const WreathElement& g);

}  // namespace metageo
