#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "medlat/context.hpp"

namespace medlat {

// Families of binary relations on a small ground set, each embedded as a
// MedianContext under set inclusion.
//
//   TotalPreorder   reflexive, transitive, connected; join = transitive
//                   closure of the union
//   WeakTournament  reflexive, connected; join = union
//   StrictTournament irreflexive, connected; join = union
//   ReflexiveRel    reflexive; join = union, meet = intersection
//   IrreflexiveRel  irreflexive; likewise
//   WeakOrderDual   asymmetric-part images of total preorders, ordered by
//                   reverse inclusion; produced by iso_maps only
enum class RelFlavor {
  TotalPreorder,
  WeakTournament,
  StrictTournament,
  ReflexiveRel,
  IrreflexiveRel,
  WeakOrderDual,
};

std::string to_string(RelFlavor f);
RelFlavor flavor_from_string(const std::string& s);

struct GroundSet {
  int m = 0;
  std::vector<std::string> names;

  static GroundSet of(std::vector<std::string> names);
  static GroundSet letters(int m);  // a, b, c, ...
};

// Binary relation as an m*m bit matrix, row-major, diagonal included.
struct BinRel {
  int m = 0;
  std::uint32_t bits = 0;

  bool contains(int i, int j) const { return (bits >> (i * m + j)) & 1u; }
  void add(int i, int j) { bits |= std::uint32_t{1} << (i * m + j); }
  void remove(int i, int j) { bits &= ~(std::uint32_t{1} << (i * m + j)); }

  bool operator==(const BinRel&) const = default;
};

std::uint32_t diagonal_mask(int m);
std::uint32_t full_mask(int m);

bool is_reflexive(const BinRel& r);
bool is_irreflexive(const BinRel& r);
bool is_connected(const BinRel& r);  // every pair related in at least one direction
bool is_transitive(const BinRel& r);
bool is_antisymmetric(const BinRel& r);

BinRel rel_union(const BinRel& a, const BinRel& b);
BinRel rel_intersection(const BinRel& a, const BinRel& b);
BinRel transitive_closure(BinRel r);
BinRel asymmetric_part(const BinRel& r);

// |R delta R'| over ordered pairs.
int kemeny_distance(const BinRel& a, const BinRel& b);

// {x : x R y for all y}.
std::vector<int> top_set(const BinRel& r);

// The alternative strictly majority-preferred to every other, if any.
// Majority threshold is floor((n+2)/2).
std::optional<int> condorcet_winner(const GroundSet& ground, std::span<const BinRel> profile);

// Indifference classes of a total preorder, best class first.
std::vector<std::vector<int>> indifference_classes(const BinRel& preorder);

struct SpaceOptions {
  bool allow_large = false;
};

struct RelationSpace {
  RelFlavor flavor = RelFlavor::TotalPreorder;
  GroundSet ground;
  std::vector<BinRel> elems;  // canonical enumeration order
  MedianContext ctx;

  int size() const { return static_cast<int>(elems.size()); }
  const BinRel& rel(int i) const { return elems[i]; }
  int index_of(const BinRel& r) const;  // BadInput when not in the space

  // Flavor join on matrices; agrees with ctx.join on indices.
  BinRel join_rel(const BinRel& a, const BinRel& b) const;
  int join_rel(int a, int b) const;

  // Meet-irreducibles of the total-preorder space: two-indifference-class
  // preorders, one per ordered two-block partition of the ground set.
  std::vector<int> two_block_irreducibles() const;

  std::vector<int> linear_orders() const;  // antisymmetric elements (preorder space)

  // Bracket notation for preorders ("x[yz]"), pair list otherwise.
  std::string render(int i) const;
  std::string render(const BinRel& r) const;

  // Repopulates the bits -> index lookup from elems; builders call this.
  void rebuild_index();

 private:
  std::unordered_map<std::uint32_t, int> index_;
};

// Canonical deterministic enumeration (see README for the exact orders),
// with the context built and classified.
RelationSpace enumerate_space(RelFlavor flavor, GroundSet ground, SpaceOptions opts = {});

// Order/join isomorphisms between paired spaces: weak -> strict tournaments
// and reflexive -> irreflexive (both drop the diagonal), total preorders ->
// weak orders (asymmetric part, reverse inclusion). The bijection is checked
// mechanically at construction.
struct IsoMap {
  RelationSpace target;
  std::vector<int> forward;
  std::vector<int> inverse;
  BinRel map(const BinRel& r) const;
};

IsoMap iso_maps(const RelationSpace& space);

int majority_threshold(int n);  // floor((n+2)/2)

}  // namespace medlat
