#pragma once

// Shared test fixtures and independent oracles. Everything here recomputes
// expectations straight from definitions (matrix scans, BFS, enumeration),
// never through the tables the library builds.

#include <functional>
#include <queue>
#include <vector>

#include "medlat/checkers.hpp"
#include "medlat/json_io.hpp"

namespace testutil {

using namespace medlat;

inline BinRel linear_order(int m, const std::vector<int>& ranking) {
  std::vector<int> pos(m);
  for (int k = 0; k < m; ++k) pos[ranking[k]] = k;
  BinRel r{m, 0};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (pos[i] <= pos[j]) r.add(i, j);
  return r;
}

inline BinRel preorder_of_blocks(int m, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> cls(m, -1);
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
    for (int e : blocks[b]) cls[e] = b;
  BinRel r{m, 0};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (cls[i] <= cls[j]) r.add(i, j);
  return r;
}

// Covering graph BFS recomputed from the raw order matrix.
inline std::vector<std::vector<int>> oracle_cover_adj(const Poset& p) {
  std::vector<std::vector<int>> adj(p.n);
  for (int x = 0; x < p.n; ++x)
    for (int y = 0; y < p.n; ++y) {
      if (x == y || !p.leq(x, y)) continue;
      bool cover = true;
      for (int z = 0; z < p.n && cover; ++z)
        if (z != x && z != y && p.leq(x, z) && p.leq(z, y)) cover = false;
      if (cover) {
        adj[x].push_back(y);
        adj[y].push_back(x);
      }
    }
  return adj;
}

inline int oracle_bfs_dist(const std::vector<std::vector<int>>& adj, int s, int t) {
  if (s == t) return 0;
  std::vector<int> d(adj.size(), -1);
  std::queue<int> q;
  q.push(s);
  d[s] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v]) {
      if (d[w] >= 0) continue;
      d[w] = d[v] + 1;
      if (w == t) return d[w];
      q.push(w);
    }
  }
  return -1;
}

// Least upper bound by scanning the order matrix; -1 when absent.
inline int oracle_lub(const Poset& p, int x, int y) {
  int best = -1;
  for (int z = 0; z < p.n; ++z) {
    if (!p.leq(x, z) || !p.leq(y, z)) continue;
    bool least = true;
    for (int w = 0; w < p.n && least; ++w)
      if (p.leq(x, w) && p.leq(y, w) && !p.leq(z, w)) least = false;
    if (least) {
      best = z;
      break;
    }
  }
  return best;
}

inline int oracle_glb(const Poset& p, int x, int y) {
  for (int z = 0; z < p.n; ++z) {
    if (!p.leq(z, x) || !p.leq(z, y)) continue;
    bool greatest = true;
    for (int w = 0; w < p.n && greatest; ++w)
      if (p.leq(w, x) && p.leq(w, y) && !p.leq(w, z)) greatest = false;
    if (greatest) return z;
  }
  return -1;
}

// Median recomputed from oracle bounds only.
inline int oracle_median(const Poset& p, int x, int y, int z) {
  int a = oracle_lub(p, x, y);
  int b = oracle_lub(p, y, z);
  int c = oracle_lub(p, x, z);
  if (a < 0 || b < 0 || c < 0) return -1;
  int ab = oracle_glb(p, a, b);
  if (ab < 0) return -1;
  return oracle_glb(p, ab, c);
}

// Ordered set partitions of an m-set, by recursion over the top block:
// count(m) = sum_s C(m,s) * count(m-s).
inline long long oracle_ordered_partition_count(int m) {
  if (m == 0) return 1;
  long long total = 0;
  for (int s = 1; s <= m; ++s) {
    long long c = 1;
    for (int i = 0; i < s; ++i) c = c * (m - i) / (i + 1);
    total += c * oracle_ordered_partition_count(m - s);
  }
  return total;
}

// Count all m x m relations passing `keep`, scanning every bit matrix.
inline int oracle_matrix_count(int m, const std::function<bool(const BinRel&)>& keep) {
  int count = 0;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << (m * m)); ++bits) {
    BinRel r{m, bits};
    if (keep(r)) ++count;
  }
  return count;
}

// All relations passing `keep`, as raw bit patterns.
inline std::vector<std::uint32_t> oracle_matrix_filter(
    int m, const std::function<bool(const BinRel&)>& keep) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << (m * m)); ++bits) {
    BinRel r{m, bits};
    if (keep(r)) out.push_back(bits);
  }
  return out;
}

inline bool is_total_preorder(const BinRel& r) {
  return is_reflexive(r) && is_transitive(r) && is_connected(r);
}

// Small named posets as incidence matrices.
inline Poset chain(int n) {
  std::vector<std::vector<std::uint8_t>> leq(n, std::vector<std::uint8_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) leq[i][j] = 1;
  return build_poset(leq);
}

// bottom, k incomparable middles, top
inline Poset diamond(int mids) {
  int n = mids + 2;
  std::vector<std::vector<std::uint8_t>> leq(n, std::vector<std::uint8_t>(n, 0));
  for (int i = 0; i < n; ++i) leq[i][i] = 1;
  for (int i = 1; i <= mids; ++i) {
    leq[0][i] = 1;
    leq[i][n - 1] = 1;
  }
  leq[0][n - 1] = 1;
  return build_poset(leq);
}

// 0 < a < c < 1 and 0 < b < 1 (the pentagon)
inline Poset pentagon() {
  std::vector<std::vector<std::uint8_t>> leq(5, std::vector<std::uint8_t>(5, 0));
  auto le = [&](int x, int y) { leq[x][y] = 1; };
  for (int i = 0; i < 5; ++i) le(i, i);
  // 0 bottom, 4 top, a=1, c=2, b=3
  le(0, 1); le(0, 2); le(0, 3); le(0, 4);
  le(1, 2); le(1, 4); le(2, 4); le(3, 4);
  return build_poset(leq);
}

// Boolean cube on subsets of {0,..,k-1}
inline Poset boolean_cube(int k) {
  int n = 1 << k;
  std::vector<std::vector<std::uint8_t>> leq(n, std::vector<std::uint8_t>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((a & ~b) == 0) leq[a][b] = 1;
  return build_poset(leq);
}

// Two maximal elements over a shared bottom; not a join-semilattice.
inline Poset bowtie() {
  std::vector<std::vector<std::uint8_t>> leq(3, std::vector<std::uint8_t>(3, 0));
  for (int i = 0; i < 3; ++i) leq[i][i] = 1;
  leq[0][1] = leq[0][2] = 1;
  return build_poset(leq);
}

}  // namespace testutil
