#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "medlat/bitset.hpp"
#include "medlat/errors.hpp"

namespace medlat {

// Dense n-by-n tables are kept up to kDenseLimit elements. Larger structures
// (up to kHardLimit) must be requested explicitly and fall back to on-demand
// BFS for the covering-graph metric.
inline constexpr int kDenseLimit = 2048;
inline constexpr int kHardLimit = 4096;

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

struct BuildOptions {
  bool allow_large = false;
};

// Finite partial order on elements 0..n-1.
// up[x] = {y : x <= y} (row of the incidence matrix), down[x] = {y : y <= x}.
struct Poset {
  int n = 0;
  std::vector<Bitset> up;
  std::vector<Bitset> down;
  std::vector<std::string> labels;  // optional display strings, may be empty

  bool leq(int x, int y) const { return up[x].test(y); }
  std::string label(int x) const {
    return labels.empty() ? std::to_string(x) : labels[x];
  }
};

// Validates reflexivity, antisymmetry and transitivity; throws NotReflexive /
// NotAntisymmetric / NotTransitive with a witness, or SizeLimit.
Poset build_poset(int n, const std::vector<Bitset>& leq_rows,
                  std::vector<std::string> labels = {}, BuildOptions opts = {});
Poset build_poset(const std::vector<std::vector<std::uint8_t>>& leq,
                  std::vector<std::string> labels = {}, BuildOptions opts = {});

struct StructureReport {
  bool is_poset = false;
  bool is_join_semilattice = false;
  bool is_upper_distributive = false;
  bool is_meet_helly = false;
  bool is_median = false;
  bool is_graded = false;
  bool is_distributive_lattice = false;
  bool is_coatomistic = false;
  bool is_atomistic = false;
};

// Exhaustive, definition-level classification. Never throws for structural
// failures; flags simply come back false.
StructureReport classify(const Poset& p);

// Same, starting from a raw incidence matrix that may not even be a poset.
StructureReport classify_matrix(int n, const std::vector<Bitset>& leq_rows);

}  // namespace medlat
