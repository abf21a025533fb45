#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "medlat/context.hpp"
#include "medlat/relations.hpp"

namespace medlat {

using Coalition = std::uint32_t;  // bitmask over agents 0..n-1

// Upward-closed family of coalitions, stored by its antichain of minimal
// members. Membership is "contains some basis member".
struct OrderFilter {
  int n = 0;
  std::vector<Coalition> basis;  // antichain, ascending

  bool contains(Coalition c) const {
    for (Coalition b : basis)
      if ((b & c) == b) return true;
    return false;
  }
  bool empty_filter() const { return basis.empty(); }

  static OrderFilter from_basis(int n, std::vector<Coalition> members);
  static OrderFilter all_of_size_at_least(int n, int q);

  bool operator==(const OrderFilter&) const = default;
};

// One order filter per meet-irreducible, aligned with ctx.meet_irr.
struct FilterFamily {
  std::vector<OrderFilter> per_m;
  bool operator==(const FilterFamily&) const = default;
};

// A linear order on space elements used only to break remoteness ties;
// order[k] is the element with priority k (earlier = preferred).
struct TieBreak {
  std::vector<int> order;
  std::vector<int> pos;

  static TieBreak identity(int n);
  static TieBreak reversed(int n);
  static TieBreak from_order(std::vector<int> order);  // validates a permutation

  int least(std::span<const int> candidates) const;
};

// Dense profile -> outcome map. Profiles are mixed-radix numbers with agent 0
// as the least significant digit.
struct RuleTable {
  int n_agents = 0;
  int size = 0;  // |X|
  std::vector<std::int32_t> out;

  std::int64_t num_profiles() const { return static_cast<std::int64_t>(out.size()); }
  std::int64_t index(std::span<const int> profile) const;
  void decode(std::int64_t idx, std::span<int> profile) const;
  int eval(std::span<const int> profile) const;

  bool operator==(const RuleTable&) const = default;
};

struct RuleSpec;

struct SponsorshipRule {
  FilterFamily family;
};
struct CoMajorityRule {};
struct QuotaRule {
  std::vector<int> q;  // one per meet-irreducible, or a single broadcast value
};
struct GeneralizedCkRule {
  TieBreak tiebreak;  // empty => canonical index order
};
struct StrictCkRule {
  TieBreak tiebreak;
};
// f(R_N) = MEET over basis coalitions S of ((union_{i in S} R_i) union R_S).
struct LatticeFilterRule {
  OrderFilter filter;
  std::vector<BinRel> offsets;  // aligned with filter.basis
};
// Dual form: JOIN over basis of ((intersection_{i in S} R_i) intersection R_S).
struct LatticeDualFilterRule {
  OrderFilter filter;
  std::vector<BinRel> offsets;
};
struct MajorityLatticeRule {};
struct DictatorRule {
  int agent = 0;
};
struct ConstantRule {
  int element = 0;
};
struct TabulatedRule {
  std::shared_ptr<const RuleTable> table;
};
// Evaluates the inner rule, then deletes a minimum number of ordered pairs so
// that no cycle runs through a strictly-preferred pair.
struct RetractRule {
  std::shared_ptr<const RuleSpec> inner;
};

struct RuleSpec {
  std::variant<SponsorshipRule, CoMajorityRule, QuotaRule, GeneralizedCkRule, StrictCkRule,
               LatticeFilterRule, LatticeDualFilterRule, MajorityLatticeRule, DictatorRule,
               ConstantRule, TabulatedRule, RetractRule>
      v;
  std::string name() const;
};

// Evaluation environment: every rule needs the context, relation-level rules
// (strict CK, lattice filters, retracts) also need the space.
struct RuleEnv {
  const MedianContext* ctx = nullptr;
  const RelationSpace* space = nullptr;

  static RuleEnv of(const MedianContext& c) { return RuleEnv{&c, nullptr}; }
  static RuleEnv of(const RelationSpace& s) { return RuleEnv{&s.ctx, &s}; }
};

int eval_rule(const RuleEnv& env, const RuleSpec& rule, std::span<const int> profile);
RuleTable tabulate(const RuleEnv& env, const RuleSpec& rule, int n_agents);

// f(x_N) = meet of { m in M_X : {i : x_i <= m} in F_m }; empty set yields top.
int sponsorship_eval(const MedianContext& ctx, const FilterFamily& family,
                     std::span<const int> profile);

// Meet over majority coalitions of the joins of their members' proposals.
int co_majority(const MedianContext& ctx, std::span<const int> profile);

// Locally m-winning coalitions of a tabulated rule, reduced to minimal bases.
// Reproduces strategy-proof rules exactly through sponsorship_eval.
FilterFamily extract_filters(const MedianContext& ctx, const RuleTable& table);

FilterFamily quota_family(const MedianContext& ctx, int n_agents, const std::vector<int>& q);
FilterFamily uniform_quota_family(const MedianContext& ctx, int n_agents, int q);

struct FamilyTags {
  bool quorum_system = false;   // every filter transversal
  bool inclusive = false;       // basis members jointly cover N
  bool collegial = false;       // some filter demands a fixed nonempty core
  bool outcome_biased = false;  // some filter empty
  bool weakly_neutral = false;  // equal filters whenever the irreducibles meet
  bool quota = false;           // every filter threshold-shaped
  std::vector<int> quota_values;  // per meet-irreducible when quota
};

FamilyTags classify_family(const MedianContext& ctx, const FilterFamily& family);

// All minimizers of the profile's remoteness (sum of covering-graph distances).
std::vector<int> remoteness_minimizers(const MedianContext& ctx, std::span<const int> profile);
long long remoteness(const MedianContext& ctx, int candidate, std::span<const int> profile);

// Tie-broken remoteness minimizer over the whole space / over linear orders.
int generalized_ck(const MedianContext& ctx, std::span<const int> profile, const TieBreak& tb);
int strict_ck(const RelationSpace& space, std::span<const int> profile, const TieBreak& tb);

int lattice_filter_eval(const RelationSpace& space, const OrderFilter& filter,
                        std::span<const BinRel> offsets, bool dual,
                        std::span<const int> profile);
// Reference evaluation over the full upward closure with inherited offsets;
// used to validate that the basis-only path is exact.
int lattice_filter_eval_full(const RelationSpace& space, const OrderFilter& filter,
                             std::span<const BinRel> offsets, bool dual,
                             std::span<const int> profile);

int minimal_monotonic_retract(const RelationSpace& space, const RuleSpec& inner,
                              std::span<const int> profile);

bool has_cycle_through_strict_pair(const BinRel& r);

}  // namespace medlat
