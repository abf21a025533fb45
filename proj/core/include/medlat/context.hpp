#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "medlat/poset.hpp"

namespace medlat {

// A finite join-semilattice with every derived table the rest of the library
// needs: join (total), meet (partial), irreducibles, covers, rank and the
// covering-graph metric. Immutable after construction; all queries are pure.
class MedianContext {
 public:
  Poset poset;

  int top = -1;
  int bottom = -1;  // -1 when the semilattice has no universal lower bound

  std::vector<int> meet_irr;  // canonical (index) order
  std::vector<int> join_irr;
  std::vector<int> coatoms;
  std::vector<int> atoms;  // empty unless bottom exists

  std::vector<std::vector<int>> covers_up;   // y in covers_up[x]  <=>  x covered by y
  std::vector<std::vector<int>> cover_adj;   // undirected covering graph

  StructureReport report;

  int n() const { return poset.n; }
  bool leq(int x, int y) const { return poset.leq(x, y); }

  int join(int x, int y) const { return join_[idx(x, y)]; }

  // -1 when x and y have no common lower bound.
  int meet(int x, int y) const { return meet_[idx(x, y)]; }

  bool graded() const { return report.is_graded; }

  // Normalized rank; throws NotGraded when the context admits no rank function.
  int rank(int x) const;

  // Shortest-path distance on the covering graph. Dense table for small
  // contexts, per-query BFS above kDenseLimit.
  int dist(int x, int y) const;
  bool dense_dist() const { return dense_dist_; }

  // Internal accessors used by builders.
  std::vector<std::int32_t>& join_table() { return join_; }
  std::vector<std::int32_t>& meet_table() { return meet_; }
  const std::vector<std::int32_t>& join_table() const { return join_; }
  const std::vector<std::int32_t>& meet_table() const { return meet_; }
  std::vector<std::int32_t>& rank_table() { return rank_; }
  std::vector<std::int32_t>& dist_table() { return dist_; }
  void set_dense_dist(bool v) { dense_dist_ = v; }

 private:
  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(x) * poset.n + y;
  }

  std::vector<std::int32_t> join_;
  std::vector<std::int32_t> meet_;
  std::vector<std::int32_t> rank_;
  std::vector<std::int32_t> dist_;  // empty when !dense_dist_
  bool dense_dist_ = true;
};

// Builds every table. Throws NotJoinSemilattice(x, y) when a join is missing.
// A context that fails the median or gradedness checks is still returned (its
// report says what failed); the operations below refuse it where required.
MedianContext build_context(Poset p);

// mu(x,y,z) = (x v y) ^ (y v z) ^ (x v z). Requires a median context.
int median(const MedianContext& ctx, int x, int y, int z);

// {z : mu(x,y,z) = z}, ascending. Requires a median context.
std::vector<int> interval(const MedianContext& ctx, int x, int y);
Bitset interval_set(const MedianContext& ctx, int x, int y);

enum class BetweennessKind { Median, Interval, Metric };

// Is z between x and y?  Median: z = mu(x,y,z).  Interval: z <= x v y, and
// x ^ y <= z when the meet exists (x <= z or y <= z otherwise).  Metric:
// d(x,z) + d(z,y) = d(x,y) on the covering graph.
bool betweenness(const MedianContext& ctx, BetweennessKind kind, int x, int z, int y);

// d_r(x,y) = 2 r(x v y) - r(x) - r(y). Requires a graded context.
int dist_rank(const MedianContext& ctx, int x, int y);

// Greatest lower bound of a set; the empty meet is the top element. Throws
// MeetUndefined naming a pair with no common lower bound.
int meet_of_set(const MedianContext& ctx, std::span<const int> elems);

// All minimizers of z -> sum_i dist(z, profile[i]), ascending.
std::vector<int> metric_median_set(const MedianContext& ctx, std::span<const int> profile);

}  // namespace medlat
