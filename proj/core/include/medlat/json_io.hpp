#pragma once

#include <nlohmann/json.hpp>

#include "medlat/checkers.hpp"

namespace medlat {

using json = nlohmann::json;

// Poset: {"n": int, "labels": [str], "leq": [[0|1]]}
json poset_to_json(const Poset& p);
Poset poset_from_json(const json& j, BuildOptions opts = {});

json structure_report_to_json(const StructureReport& r);

// Relation: {"ground": [names], "pairs": [[i,j], ...]} (ordered pairs in R)
json rel_to_json(const GroundSet& g, const BinRel& r);
BinRel rel_from_json(const GroundSet& g, const json& j);

// Space descriptor: {"flavor": str, "ground": [names]}
json space_to_json(const RelationSpace& sp);
GroundSet ground_from_json(const json& j);

// Profile: {"space": descriptor, "votes": [index | relation, ...]}
json profile_to_json(const RelationSpace& sp, std::span<const int> profile);
std::vector<int> profile_from_json(const RelationSpace& sp, const json& j);

// Filter family: {"<m position>": [basis bitmask, ...], ...}
json family_to_json(const FilterFamily& fam);
FilterFamily family_from_json(const MedianContext& ctx, int n_agents, const json& j);

json family_tags_to_json(const FamilyTags& t);

// Rule table: {"n": agents, "size": |X|, "outcomes": [...]} with profiles in
// mixed-radix order, agent 0 least significant.
json table_to_json(const RuleTable& t);
RuleTable table_from_json(const json& j);

// Rule: {"variant": name, ...parameters}. Parsing needs the context (and the
// population size for filter-based variants); lattice-filter variants also
// need the space for their offset relations.
json rule_to_json(const RuleSpec& r, const RelationSpace* space = nullptr);
RuleSpec rule_from_json(const MedianContext& ctx, int n_agents, const json& j,
                        const RelationSpace* space = nullptr);

json tiebreak_to_json(const TieBreak& t);
TieBreak tiebreak_from_json(const MedianContext& ctx, const json& j);

json witness_to_json(const Witness& w);
json report_to_json(const CheckReport& r);

}  // namespace medlat
