#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "medlat/rules.hpp"

namespace medlat {

// A voter's preorder over space elements ("preferences on preferences").
// geq[u] is the set {v : u is at least as good as v}.
struct OutcomePreference {
  int n = 0;
  std::vector<Bitset> geq;

  bool pref(int u, int v) const { return geq[u].test(v); }          // u >= v
  bool strict(int u, int v) const { return pref(u, v) && !pref(v, u); }
};

// Counterexample payload. Unused fields stay at -1 / empty.
struct Witness {
  std::vector<int> profile;
  std::vector<int> profile2;
  int agent = -1;
  int deviation = -1;   // element the agent reports instead
  int pref_param = -1;  // w of the canonical preference built from (x_i, w)
  int m_index = -1;     // position in ctx.meet_irr
  int elem_a = -1;
  int elem_b = -1;
  std::string note;
};

struct CheckReport {
  std::string predicate;
  bool verdict = false;
  std::optional<Witness> witness;
  std::string info;
};

// Interval membership I(x,y), precomputed for the inner loops of the
// strategy-proofness and monotonicity scans.
class IntervalTable {
 public:
  explicit IntervalTable(const MedianContext& ctx);
  const Bitset& at(int x, int y) const { return rows_[static_cast<std::size_t>(x) * n_ + y]; }
  int n() const { return n_; }

 private:
  int n_;
  std::vector<Bitset> rows_;
};

// The three-class preorder with top {x}, middle I(x,y) \ {x} and everything
// else at the bottom; locally unimodal, with upper contour I(x,y) at y. The
// family over all (x,y) is a rich single-peaked domain.
OutcomePreference canonical_lu_preorder(const MedianContext& ctx, int x, int y);

// Unique-top plus compromise condition: anything strictly between the top and
// y is not worse than y.
CheckReport is_locally_unimodal(const MedianContext& ctx, const OutcomePreference& pref);

// No agent with a canonical single-peaked preference ever gains by deviating.
// Cross-validated against betweenness monotonicity on every run; the two
// verdicts disagreeing is an internal invariant violation.
CheckReport is_strategy_proof(const MedianContext& ctx, const RuleTable& table);

// f(x_N) lies in I(x_i, f(deviation)) for every agent and deviation.
CheckReport is_bmu_monotonic(const MedianContext& ctx, const RuleTable& table);

// Growing {i : x_i <= m} preserves f(x_N) <= m. The default scan quantifies
// single-agent upgrades (equivalent by chaining); full_pairs switches to the
// literal two-profile form and is gated by size.
CheckReport is_monotonic_m_independent(const MedianContext& ctx, const RuleTable& table,
                                       bool full_pairs = false);
CheckReport is_m_independent(const MedianContext& ctx, const RuleTable& table,
                             bool full_pairs = false);
CheckReport is_isotonic(const MedianContext& ctx, const RuleTable& table,
                        bool full_pairs = false);

enum class Axiom {
  Inclusive,
  Anonymous,
  Idempotent,
  Sovereign,
  NeutralGroundset,
  BiIdempotent,
  BasicPareto,
  WeakCondorcet,
  MonotonicIia,
  Iia,
};

std::string to_string(Axiom a);
Axiom axiom_from_string(const std::string& s);

// Exhaustive check of one axiom. Relation-level axioms (basic-pareto,
// weak-condorcet, monotonic-iia, iia, neutral-groundset) need env.space.
CheckReport check_axiom(const RuleEnv& env, const RuleTable& table, Axiom which);

// First pairwise-independence violation between two specific profiles, if
// any: a ground pair (u,v) with identical per-agent stances but different
// social stances.
std::optional<std::pair<int, int>> iia_violation(const RelationSpace& space,
                                                 const RuleTable& table,
                                                 std::span<const int> p1,
                                                 std::span<const int> p2);

// Re-evaluates a failed report's witness through the public operations.
// True means the witness still demonstrates the violation.
bool recheck_witness(const RuleEnv& env, const RuleTable& table, const CheckReport& report);

struct NamedRule {
  std::string name;
  RuleTable table;
};

// Deterministic test corpus: co-majority, dictators, constants, quota
// variants (10 structured rules), then seeded uniform-random tables.
std::vector<NamedRule> standard_corpus(const RuleEnv& env, int n_agents, std::uint64_t seed,
                                       int n_random);

// Three-way equivalence of strategy-proofness, betweenness monotonicity and
// monotone irreducible-independence over a rule corpus.
CheckReport verify_theorem1(const MedianContext& ctx, std::span<const NamedRule> corpus);

// Extracted filters reproduce every strategy-proof corpus rule exactly.
CheckReport verify_corollary1(const MedianContext& ctx, std::span<const NamedRule> corpus);

// Anonymity + bi-idempotence + strategy-proofness single out co-majority.
CheckReport verify_prop1(const RuleEnv& env, int n_agents, std::uint64_t seed = kDefaultSeed);

// Odd-size profiles: the remoteness minimizer is unique, equals co-majority,
// and the tie-broken minimizer is tie-break independent. For even sizes the
// expected outcome is a tie, reported as such.
CheckReport verify_prop3(const RelationSpace& space, int n_agents,
                         std::uint64_t seed = kDefaultSeed, int sample = 10000);

// On the relation lattices with odd-size profiles: majority rule, co-majority
// and the tie-broken remoteness minimizer coincide.
CheckReport verify_prop5(const RelationSpace& space, int n_agents,
                         std::uint64_t seed = kDefaultSeed, int sample = 10000);

// Structural claims on one space: gradedness, the rank valuation, rank metric
// = covering-graph distance, betweenness nesting (with equality on
// distributive lattices) and the comparison of the rank metric with the
// symmetric-difference (Kemeny) distance.
std::vector<CheckReport> verify_claims(const RelationSpace& space);

}  // namespace medlat
