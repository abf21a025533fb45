#include "medlat/context.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace medlat {

namespace {

struct Tables {
  int n = 0;
  std::vector<std::int32_t> join, meet;  // -1 where undefined
  bool joins_total = true;
  int miss_x = -1, miss_y = -1;  // witness pair when joins are not total
  bool meets_total = true;
  std::vector<int> upc, dnc;
};

// Least element of a nonempty subset S: the member with the largest up-set,
// provided S sits inside that up-set. Dually for the greatest element.
int least_of(const Bitset& s, const std::vector<Bitset>& up, const std::vector<int>& upc) {
  int best = -1;
  s.for_each([&](int v) {
    if (best < 0 || upc[v] > upc[best]) best = v;
  });
  if (best >= 0 && !s.is_subset_of(up[best])) return -1;
  return best;
}

Tables compute_tables(const Poset& p) {
  const int n = p.n;
  Tables t;
  t.n = n;
  t.join.assign(static_cast<std::size_t>(n) * n, -1);
  t.meet.assign(static_cast<std::size_t>(n) * n, -1);
  t.upc.resize(n);
  t.dnc.resize(n);
  for (int x = 0; x < n; ++x) {
    t.upc[x] = p.up[x].count();
    t.dnc[x] = p.down[x].count();
  }
  auto at = [n](int x, int y) { return static_cast<std::size_t>(x) * n + y; };

  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      int j, m;
      if (p.leq(x, y)) {
        j = y;
        m = x;
      } else if (p.leq(y, x)) {
        j = x;
        m = y;
      } else {
        Bitset ub = p.up[x] & p.up[y];
        j = ub.any() ? least_of(ub, p.up, t.upc) : -1;
        Bitset lb = p.down[x] & p.down[y];
        // Greatest of lb = member with the largest down-set covering lb.
        m = -1;
        if (lb.any()) {
          int best = -1;
          lb.for_each([&](int v) {
            if (best < 0 || t.dnc[v] > t.dnc[best]) best = v;
          });
          if (best >= 0 && lb.is_subset_of(p.down[best])) m = best;
        }
      }
      t.join[at(x, y)] = t.join[at(y, x)] = j;
      t.meet[at(x, y)] = t.meet[at(y, x)] = m;
      if (j < 0 && t.joins_total) {
        t.joins_total = false;
        t.miss_x = x;
        t.miss_y = y;
      }
      if (m < 0) t.meets_total = false;
    }
  }
  return t;
}

// Filter-relative lub/glb for the literal classification path on posets that
// are not join-semilattices (global and filter-relative bounds can differ
// there). Only used for desk-scale inputs.
int glb_within(const Poset& p, const std::vector<int>& dnc, const Bitset& filter, int y, int z) {
  Bitset lb = p.down[y] & p.down[z];
  lb &= filter;
  if (lb.none()) return -1;
  int best = -1;
  lb.for_each([&](int v) {
    if (best < 0 || dnc[v] > dnc[best]) best = v;
  });
  return lb.is_subset_of(p.down[best]) ? best : -1;
}

bool upper_distributive_fast(const Poset& p, const Tables& t) {
  const int n = p.n;
  auto at = [n](int x, int y) { return static_cast<std::size_t>(x) * n + y; };
  for (int y = 0; y < n; ++y) {
    for (int z = y + 1; z < n; ++z) {
      int myz = t.meet[at(y, z)];
      if (myz < 0) continue;  // no triple through {y,z} has a common lower bound
      // comparable pairs satisfy the law identically: y <= z gives
      // x v (y ^ z) = x v y = (x v y) ^ (x v z)
      if (myz == y || myz == z) continue;
      for (int x = 0; x < n; ++x) {
        if (t.meet[at(x, myz)] < 0) continue;  // {x,y,z} unbounded below
        int lhs = t.join[at(x, myz)];
        int rhs = t.meet[at(t.join[at(x, y)], t.join[at(x, z)])];
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

bool upper_distributive_literal(const Poset& p, const Tables& t) {
  const int n = p.n;
  auto at = [n](int x, int y) { return static_cast<std::size_t>(x) * n + y; };
  for (int u = 0; u < n; ++u) {
    const Bitset& f = p.up[u];
    std::vector<int> elems;
    f.for_each([&](int v) { elems.push_back(v); });
    for (std::size_t a = 0; a < elems.size(); ++a) {
      for (std::size_t b = a + 1; b < elems.size(); ++b) {
        int y = elems[a], z = elems[b];
        int myz = glb_within(p, t.dnc, f, y, z);
        if (myz < 0) return false;  // the principal filter is not a lattice
        for (int x : elems) {
          int jxy = t.join[at(x, y)];
          int jxz = t.join[at(x, z)];
          if (jxy < 0 || jxz < 0) return false;
          int lhs = t.join[at(x, myz)];
          int rhs = glb_within(p, t.dnc, f, jxy, jxz);
          if (lhs < 0 || lhs != rhs) return false;
        }
      }
    }
  }
  return true;
}

bool meet_helly_fast(const Tables& t) {
  const int n = t.n;
  auto at = [n](int x, int y) { return static_cast<std::size_t>(x) * n + y; };
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      int mxy = t.meet[at(x, y)];
      if (mxy < 0) continue;
      // a comparable pair already forces the triple meet (the smaller
      // element's pairwise meet with the third element works), so only
      // pairwise-incomparable triples can fail
      if (mxy == x || mxy == y) continue;
      for (int z = y + 1; z < n; ++z) {
        int myz = t.meet[at(y, z)];
        int mxz = t.meet[at(x, z)];
        if (myz < 0 || mxz < 0) continue;
        if (myz == y || myz == z || mxz == x || mxz == z) continue;
        if (t.meet[at(mxy, z)] < 0) return false;
      }
    }
  return true;
}

bool meet_helly_literal(const Poset& p, const Tables& t) {
  const int n = p.n;
  auto at = [n](int x, int y) { return static_cast<std::size_t>(x) * n + y; };
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (t.meet[at(x, y)] < 0) continue;
      for (int z = y + 1; z < n; ++z) {
        if (t.meet[at(y, z)] < 0 || t.meet[at(x, z)] < 0) continue;
        Bitset lb = p.down[x] & p.down[y];
        lb &= p.down[z];
        if (lb.none()) return false;
        int best = -1;
        lb.for_each([&](int v) {
          if (best < 0 || t.dnc[v] > t.dnc[best]) best = v;
        });
        if (!lb.is_subset_of(p.down[best])) return false;
      }
    }
  return true;
}

struct CoverData {
  std::vector<std::vector<int>> covers_up, cover_adj;
};

CoverData compute_covers(const Poset& p) {
  const int n = p.n;
  CoverData c;
  c.covers_up.resize(n);
  c.cover_adj.resize(n);
  for (int x = 0; x < n; ++x) {
    Bitset strict = p.up[x];
    strict.reset(x);
    strict.for_each([&](int y) {
      // y covers x iff nothing in (x, y) strictly: down[y] meets strict only at y.
      Bitset between = p.down[y] & strict;
      between.reset(y);
      if (between.none()) {
        c.covers_up[x].push_back(y);
        c.cover_adj[x].push_back(y);
        c.cover_adj[y].push_back(x);
      }
    });
  }
  return c;
}

}  // namespace

StructureReport classify_matrix(int n, const std::vector<Bitset>& leq_rows) {
  StructureReport rep;
  try {
    Poset p = build_poset(n, leq_rows, {}, BuildOptions{.allow_large = true});
    return classify(p);
  } catch (const Error&) {
    return rep;  // not even a poset; everything stays false
  }
}

StructureReport classify(const Poset& p) {
  StructureReport rep;
  rep.is_poset = true;

  Tables t = compute_tables(p);
  rep.is_join_semilattice = t.joins_total;
  rep.is_upper_distributive =
      t.joins_total ? upper_distributive_fast(p, t) : upper_distributive_literal(p, t);
  rep.is_meet_helly = t.joins_total ? meet_helly_fast(t) : meet_helly_literal(p, t);
  rep.is_median = rep.is_join_semilattice && rep.is_upper_distributive && rep.is_meet_helly;
  rep.is_distributive_lattice = t.joins_total && t.meets_total && rep.is_upper_distributive;

  // Irreducibility via the bound of the strict up-set (down-set): x is
  // meet-reducible exactly when every common lower bound of its strict
  // up-set lies below x, i.e. x itself is that meet.
  std::vector<int> meet_irr, join_irr;
  for (int x = 0; x < p.n; ++x) {
    Bitset lb(p.n);
    lb.set_all();
    Bitset strict_up = p.up[x];
    strict_up.reset(x);
    strict_up.for_each([&](int s) { lb &= p.down[s]; });
    if (!lb.is_subset_of(p.down[x])) meet_irr.push_back(x);

    Bitset ub(p.n);
    ub.set_all();
    Bitset strict_dn = p.down[x];
    strict_dn.reset(x);
    strict_dn.for_each([&](int s) { ub &= p.up[s]; });
    if (!ub.is_subset_of(p.up[x])) join_irr.push_back(x);
  }

  if (t.joins_total) {
    CoverData cov = compute_covers(p);
    int top = -1, bottom = -1;
    for (int x = 0; x < p.n; ++x) {
      if (t.upc[x] == 1) top = x;
      if (t.upc[x] == p.n) bottom = x;
    }
    std::vector<int> coatoms;
    for (int x = 0; x < p.n; ++x)
      if (top >= 0 && std::find(cov.covers_up[x].begin(), cov.covers_up[x].end(), top) !=
                          cov.covers_up[x].end())
        coatoms.push_back(x);
    rep.is_coatomistic = (coatoms == meet_irr);
    if (bottom >= 0) {
      std::vector<int> atoms = cov.covers_up[bottom];
      std::sort(atoms.begin(), atoms.end());
      rep.is_atomistic = (atoms == join_irr);
    }

    // Longest chain to the top; graded iff every cover raises it by one.
    std::vector<int> order(p.n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return t.upc[a] < t.upc[b]; });
    std::vector<int> len(p.n, 0);
    for (int x : order)
      for (int y : cov.covers_up[x]) len[x] = std::max(len[x], len[y] + 1);
    rep.is_graded = true;
    for (int x = 0; x < p.n && rep.is_graded; ++x)
      for (int y : cov.covers_up[x])
        if (len[x] != len[y] + 1) {
          rep.is_graded = false;
          break;
        }
  }
  return rep;
}

MedianContext build_context(Poset p) {
  Tables t = compute_tables(p);
  if (!t.joins_total) throw NotJoinSemilattice(t.miss_x, t.miss_y);

  MedianContext ctx;
  const int n = p.n;

  ctx.report.is_poset = true;
  ctx.report.is_join_semilattice = true;
  ctx.report.is_upper_distributive = upper_distributive_fast(p, t);
  ctx.report.is_meet_helly = meet_helly_fast(t);
  ctx.report.is_median = ctx.report.is_upper_distributive && ctx.report.is_meet_helly;
  ctx.report.is_distributive_lattice = t.meets_total && ctx.report.is_upper_distributive;

  for (int x = 0; x < n; ++x) {
    if (t.upc[x] == 1) ctx.top = x;
    if (t.upc[x] == n) ctx.bottom = x;
  }
  if (ctx.top < 0) throw InternalInvariantViolation("join-semilattice without a top element");

  for (int x = 0; x < n; ++x) {
    Bitset lb(n);
    lb.set_all();
    Bitset strict_up = p.up[x];
    strict_up.reset(x);
    strict_up.for_each([&](int s) { lb &= p.down[s]; });
    if (!lb.is_subset_of(p.down[x])) ctx.meet_irr.push_back(x);

    Bitset ub(n);
    ub.set_all();
    Bitset strict_dn = p.down[x];
    strict_dn.reset(x);
    strict_dn.for_each([&](int s) { ub &= p.up[s]; });
    if (!ub.is_subset_of(p.up[x])) ctx.join_irr.push_back(x);
  }

  CoverData cov = compute_covers(p);
  ctx.covers_up = std::move(cov.covers_up);
  ctx.cover_adj = std::move(cov.cover_adj);

  for (int x = 0; x < n; ++x)
    if (std::find(ctx.covers_up[x].begin(), ctx.covers_up[x].end(), ctx.top) !=
        ctx.covers_up[x].end())
      ctx.coatoms.push_back(x);
  ctx.report.is_coatomistic = (ctx.coatoms == ctx.meet_irr);
  if (ctx.bottom >= 0) {
    ctx.atoms = ctx.covers_up[ctx.bottom];
    std::sort(ctx.atoms.begin(), ctx.atoms.end());
    ctx.report.is_atomistic = (ctx.atoms == ctx.join_irr);
  }

  // Rank normalized so the longest chain below the top starts at zero.
  {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return t.upc[a] < t.upc[b]; });
    std::vector<int> len(n, 0);
    for (int x : order)
      for (int y : ctx.covers_up[x]) len[x] = std::max(len[x], len[y] + 1);
    ctx.report.is_graded = true;
    for (int x = 0; x < n && ctx.report.is_graded; ++x)
      for (int y : ctx.covers_up[x])
        if (len[x] != len[y] + 1) {
          ctx.report.is_graded = false;
          break;
        }
    if (ctx.report.is_graded) {
      int lmax = *std::max_element(len.begin(), len.end());
      ctx.rank_table().resize(n);
      for (int x = 0; x < n; ++x) ctx.rank_table()[x] = lmax - len[x];
    }
  }

  ctx.join_table() = std::move(t.join);
  ctx.meet_table() = std::move(t.meet);

  ctx.set_dense_dist(n <= kDenseLimit);
  if (ctx.dense_dist()) {
    auto& d = ctx.dist_table();
    d.assign(static_cast<std::size_t>(n) * n, -1);
    std::vector<int> q(n);
    for (int s = 0; s < n; ++s) {
      auto row = d.begin() + static_cast<std::size_t>(s) * n;
      int head = 0, tail = 0;
      q[tail++] = s;
      row[s] = 0;
      while (head < tail) {
        int v = q[head++];
        for (int w : ctx.cover_adj[v])
          if (row[w] < 0) {
            row[w] = row[v] + 1;
            q[tail++] = w;
          }
      }
    }
  }

  ctx.poset = std::move(p);
  return ctx;
}

int MedianContext::rank(int x) const {
  if (!report.is_graded) throw NotGraded();
  return rank_[x];
}

int MedianContext::dist(int x, int y) const {
  if (dense_dist_) return dist_[idx(x, y)];
  if (x == y) return 0;
  std::vector<std::int32_t> d(poset.n, -1);
  std::vector<int> q(poset.n);
  int head = 0, tail = 0;
  q[tail++] = x;
  d[x] = 0;
  while (head < tail) {
    int v = q[head++];
    for (int w : cover_adj[v]) {
      if (d[w] < 0) {
        d[w] = d[v] + 1;
        if (w == y) return d[w];
        q[tail++] = w;
      }
    }
  }
  return -1;
}

namespace {
void require_median(const MedianContext& ctx) {
  if (!ctx.report.is_median) {
    std::string why = !ctx.report.is_upper_distributive ? "upper distributivity fails"
                                                        : "co-coronation (meet-Helly) fails";
    throw NotMedian(why);
  }
}
}  // namespace

int median(const MedianContext& ctx, int x, int y, int z) {
  require_median(ctx);
  int a = ctx.join(x, y);
  int b = ctx.join(y, z);
  int c = ctx.join(x, z);
  int m = ctx.meet(a, b);
  if (m < 0) throw InternalInvariantViolation("median meet failed");
  int r = ctx.meet(m, c);
  if (r < 0) throw InternalInvariantViolation("median meet failed");
  return r;
}

std::vector<int> interval(const MedianContext& ctx, int x, int y) {
  require_median(ctx);
  std::vector<int> out;
  for (int z = 0; z < ctx.n(); ++z)
    if (median(ctx, x, y, z) == z) out.push_back(z);
  return out;
}

Bitset interval_set(const MedianContext& ctx, int x, int y) {
  require_median(ctx);
  Bitset out(ctx.n());
  for (int z = 0; z < ctx.n(); ++z)
    if (median(ctx, x, y, z) == z) out.set(z);
  return out;
}

bool betweenness(const MedianContext& ctx, BetweennessKind kind, int x, int z, int y) {
  switch (kind) {
    case BetweennessKind::Median:
      return median(ctx, x, y, z) == z;
    case BetweennessKind::Interval: {
      if (!ctx.leq(z, ctx.join(x, y))) return false;
      // z must dominate the meet of the endpoints when they have one; the
      // one-sided condition is the meet-free reading of the same interval.
      int m = ctx.meet(x, y);
      return m >= 0 ? ctx.leq(m, z) : (ctx.leq(x, z) || ctx.leq(y, z));
    }
    case BetweennessKind::Metric:
      if (!ctx.graded()) throw NotGraded();
      return ctx.dist(x, z) + ctx.dist(z, y) == ctx.dist(x, y);
  }
  return false;
}

int dist_rank(const MedianContext& ctx, int x, int y) {
  if (!ctx.graded()) throw NotGraded();
  return 2 * ctx.rank(ctx.join(x, y)) - ctx.rank(x) - ctx.rank(y);
}

int meet_of_set(const MedianContext& ctx, std::span<const int> elems) {
  if (elems.empty()) return ctx.top;  // vacuous constraint: the empty meet is the top
  Bitset lb(ctx.n());
  lb.set_all();
  for (int e : elems) lb &= ctx.poset.down[e];
  if (lb.none()) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = i + 1; j < elems.size(); ++j)
        if (!ctx.poset.down[elems[i]].intersects(ctx.poset.down[elems[j]]))
          throw MeetUndefined(elems[i], elems[j]);
    throw MeetUndefined(elems.front(), elems.back(),
                        "the set has no common lower bound (pairwise bounds exist)");
  }
  int best = -1, bestc = -1;
  lb.for_each([&](int v) {
    int c = ctx.poset.down[v].count();
    if (c > bestc) {
      best = v;
      bestc = c;
    }
  });
  if (!lb.is_subset_of(ctx.poset.down[best]))
    throw InternalInvariantViolation("lower-bound set without a greatest element");
  return best;
}

std::vector<int> metric_median_set(const MedianContext& ctx, std::span<const int> profile) {
  require_median(ctx);
  if (!ctx.graded()) throw NotGraded();
  std::vector<int> out;
  long long best = std::numeric_limits<long long>::max();
  for (int z = 0; z < ctx.n(); ++z) {
    long long s = 0;
    for (int x : profile) s += ctx.dist(z, x);
    if (s < best) {
      best = s;
      out.clear();
    }
    if (s == best) out.push_back(z);
  }
  return out;
}

}  // namespace medlat
