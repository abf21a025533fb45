#include "medlat/relations.hpp"

#include <algorithm>
#include <array>

namespace medlat {

std::string to_string(RelFlavor f) {
  switch (f) {
    case RelFlavor::TotalPreorder: return "total-preorder";
    case RelFlavor::WeakTournament: return "weak-tournament";
    case RelFlavor::StrictTournament: return "strict-tournament";
    case RelFlavor::ReflexiveRel: return "reflexive";
    case RelFlavor::IrreflexiveRel: return "irreflexive";
    case RelFlavor::WeakOrderDual: return "weak-order-dual";
  }
  return "?";
}

RelFlavor flavor_from_string(const std::string& s) {
  if (s == "total-preorder") return RelFlavor::TotalPreorder;
  if (s == "weak-tournament") return RelFlavor::WeakTournament;
  if (s == "strict-tournament") return RelFlavor::StrictTournament;
  if (s == "reflexive") return RelFlavor::ReflexiveRel;
  if (s == "irreflexive") return RelFlavor::IrreflexiveRel;
  if (s == "weak-order-dual") return RelFlavor::WeakOrderDual;
  throw BadInput("unknown flavor '" + s + "'");
}

GroundSet GroundSet::of(std::vector<std::string> names) {
  GroundSet g;
  g.m = static_cast<int>(names.size());
  g.names = std::move(names);
  if (g.m < 2) throw BadInput("ground set needs at least two alternatives");
  if (g.m > 5) throw SizeLimit("ground sets beyond five alternatives are not supported");
  for (int i = 0; i < g.m; ++i)
    for (int j = i + 1; j < g.m; ++j)
      if (g.names[i] == g.names[j]) throw BadInput("duplicate alternative name " + g.names[i]);
  return g;
}

GroundSet GroundSet::letters(int m) {
  std::vector<std::string> names;
  for (int i = 0; i < m; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return of(std::move(names));
}

std::uint32_t diagonal_mask(int m) {
  std::uint32_t d = 0;
  for (int i = 0; i < m; ++i) d |= std::uint32_t{1} << (i * m + i);
  return d;
}

std::uint32_t full_mask(int m) {
  return m * m == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << (m * m)) - 1;
}

bool is_reflexive(const BinRel& r) { return (r.bits & diagonal_mask(r.m)) == diagonal_mask(r.m); }
bool is_irreflexive(const BinRel& r) { return (r.bits & diagonal_mask(r.m)) == 0; }

bool is_connected(const BinRel& r) {
  for (int i = 0; i < r.m; ++i)
    for (int j = i + 1; j < r.m; ++j)
      if (!r.contains(i, j) && !r.contains(j, i)) return false;
  return true;
}

bool is_transitive(const BinRel& r) {
  for (int i = 0; i < r.m; ++i)
    for (int j = 0; j < r.m; ++j) {
      if (!r.contains(i, j)) continue;
      for (int k = 0; k < r.m; ++k)
        if (r.contains(j, k) && !r.contains(i, k)) return false;
    }
  return true;
}

bool is_antisymmetric(const BinRel& r) {
  for (int i = 0; i < r.m; ++i)
    for (int j = i + 1; j < r.m; ++j)
      if (r.contains(i, j) && r.contains(j, i)) return false;
  return true;
}

BinRel rel_union(const BinRel& a, const BinRel& b) {
  if (a.m != b.m) throw BadInput("relations on different ground sets");
  return BinRel{a.m, a.bits | b.bits};
}

BinRel rel_intersection(const BinRel& a, const BinRel& b) {
  if (a.m != b.m) throw BadInput("relations on different ground sets");
  return BinRel{a.m, a.bits & b.bits};
}

BinRel transitive_closure(BinRel r) {
  // Warshall on row masks.
  std::array<std::uint32_t, 5> row{};
  const std::uint32_t rowmask = (std::uint32_t{1} << r.m) - 1;
  for (int i = 0; i < r.m; ++i) row[i] = (r.bits >> (i * r.m)) & rowmask;
  for (int k = 0; k < r.m; ++k)
    for (int i = 0; i < r.m; ++i)
      if ((row[i] >> k) & 1u) row[i] |= row[k];
  BinRel out{r.m, 0};
  for (int i = 0; i < r.m; ++i) out.bits |= row[i] << (i * r.m);
  return out;
}

BinRel asymmetric_part(const BinRel& r) {
  BinRel out{r.m, 0};
  for (int i = 0; i < r.m; ++i)
    for (int j = 0; j < r.m; ++j)
      if (r.contains(i, j) && !r.contains(j, i)) out.add(i, j);
  return out;
}

int kemeny_distance(const BinRel& a, const BinRel& b) {
  if (a.m != b.m) throw BadInput("relations on different ground sets");
  return std::popcount(a.bits ^ b.bits);
}

std::vector<int> top_set(const BinRel& r) {
  std::vector<int> out;
  for (int x = 0; x < r.m; ++x) {
    bool top = true;
    for (int y = 0; y < r.m && top; ++y)
      if (!r.contains(x, y)) top = false;
    if (top) out.push_back(x);
  }
  return out;
}

int majority_threshold(int n) { return (n + 2) / 2; }

std::optional<int> condorcet_winner(const GroundSet& ground, std::span<const BinRel> profile) {
  const int t = majority_threshold(static_cast<int>(profile.size()));
  for (int x = 0; x < ground.m; ++x) {
    bool wins = true;
    for (int y = 0; y < ground.m && wins; ++y) {
      if (y == x) continue;
      int tally = 0;
      for (const BinRel& r : profile)
        if (r.contains(x, y) && !r.contains(y, x)) ++tally;
      if (tally < t) wins = false;
    }
    if (wins) return x;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> indifference_classes(const BinRel& r) {
  std::vector<std::vector<int>> blocks;
  std::vector<int> rest;
  for (int i = 0; i < r.m; ++i) rest.push_back(i);
  while (!rest.empty()) {
    std::vector<int> block, next;
    for (int x : rest) {
      bool best = true;
      for (int y : rest)
        if (!r.contains(x, y)) best = false;
      (best ? block : next).push_back(x);
    }
    if (block.empty())
      throw BadInput("relation is not a total preorder; no best class");
    blocks.push_back(std::move(block));
    rest = std::move(next);
  }
  return blocks;
}

namespace {

// Nonempty subsets of rest[from..] in lexicographic order of their sorted
// element lists (the empty prefix first makes [r0] precede [r0,r1]).
void gen_subsets(const std::vector<int>& rest, std::size_t from, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
  if (!cur.empty()) out.push_back(cur);
  for (std::size_t i = from; i < rest.size(); ++i) {
    cur.push_back(rest[i]);
    gen_subsets(rest, i + 1, cur, out);
    cur.pop_back();
  }
}

void gen_partitions(const std::vector<int>& remaining, std::vector<std::vector<int>>& blocks,
                    std::vector<std::vector<std::vector<int>>>& out) {
  if (remaining.empty()) {
    out.push_back(blocks);
    return;
  }
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  gen_subsets(remaining, 0, cur, subsets);
  for (const auto& block : subsets) {
    std::vector<int> rest;
    std::set_difference(remaining.begin(), remaining.end(), block.begin(), block.end(),
                        std::back_inserter(rest));
    blocks.push_back(block);
    gen_partitions(rest, blocks, out);
    blocks.pop_back();
  }
}

BinRel preorder_from_blocks(int m, const std::vector<std::vector<int>>& blocks) {
  std::array<int, 5> cls{};
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
    for (int e : blocks[b]) cls[e] = b;
  BinRel r{m, 0};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (cls[i] <= cls[j]) r.add(i, j);
  return r;
}

long long expected_count(RelFlavor f, int m) {
  static constexpr long long ordered_bell[] = {1, 1, 3, 13, 75, 541};
  auto p3 = [](int e) { long long v = 1; while (e--) v *= 3; return v; };
  switch (f) {
    case RelFlavor::TotalPreorder:
    case RelFlavor::WeakOrderDual: return ordered_bell[m];
    case RelFlavor::WeakTournament:
    case RelFlavor::StrictTournament: return p3(m * (m - 1) / 2);
    case RelFlavor::ReflexiveRel:
    case RelFlavor::IrreflexiveRel: return 1LL << (m * (m - 1));
  }
  return 0;
}

int default_m_limit(RelFlavor f) {
  switch (f) {
    case RelFlavor::TotalPreorder:
    case RelFlavor::WeakOrderDual:
    case RelFlavor::WeakTournament:
    case RelFlavor::StrictTournament: return 4;
    case RelFlavor::ReflexiveRel:
    case RelFlavor::IrreflexiveRel: return 3;
  }
  return 3;
}

}  // namespace

void RelationSpace::rebuild_index() {
  index_.clear();
  for (int i = 0; i < size(); ++i) index_.emplace(elems[i].bits, i);
  if (static_cast<int>(index_.size()) != size())
    throw InternalInvariantViolation("space elements are not pairwise distinct");
}

int RelationSpace::index_of(const BinRel& r) const {
  if (r.m != ground.m) throw BadInput("relation on a different ground set");
  auto it = index_.find(r.bits);
  if (it == index_.end())
    throw BadInput("relation is not an element of the " + to_string(flavor) + " space");
  return it->second;
}

BinRel RelationSpace::join_rel(const BinRel& a, const BinRel& b) const {
  switch (flavor) {
    case RelFlavor::TotalPreorder: return transitive_closure(rel_union(a, b));
    case RelFlavor::WeakTournament:
    case RelFlavor::StrictTournament:
    case RelFlavor::ReflexiveRel:
    case RelFlavor::IrreflexiveRel: return rel_union(a, b);
    case RelFlavor::WeakOrderDual:
      throw WrongFlavor("join_rel is not defined on the dual weak-order image");
  }
  throw WrongFlavor("join_rel");
}

int RelationSpace::join_rel(int a, int b) const { return index_of(join_rel(elems[a], elems[b])); }

std::vector<int> RelationSpace::two_block_irreducibles() const {
  if (flavor != RelFlavor::TotalPreorder)
    throw WrongFlavor("two-block irreducibles exist in the total-preorder space only");
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (indifference_classes(elems[i]).size() == 2) out.push_back(i);
  return out;
}

std::vector<int> RelationSpace::linear_orders() const {
  if (flavor != RelFlavor::TotalPreorder)
    throw WrongFlavor("linear orders are elements of the total-preorder space only");
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (is_antisymmetric(elems[i])) out.push_back(i);
  return out;
}

std::string RelationSpace::render(const BinRel& r) const {
  bool compact = true;
  for (const auto& nm : ground.names)
    if (nm.size() != 1) compact = false;

  if (flavor == RelFlavor::TotalPreorder && is_transitive(r) && is_connected(r) &&
      is_reflexive(r)) {
    auto blocks = indifference_classes(r);
    std::string out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (!compact && b) out += " > ";
      if (blocks[b].size() == 1) {
        out += ground.names[blocks[b][0]];
      } else {
        out += "[";
        for (std::size_t k = 0; k < blocks[b].size(); ++k) {
          if (k && !compact) out += " ";
          out += ground.names[blocks[b][k]];
        }
        out += "]";
      }
    }
    return out;
  }
  // Generic rendering: off-diagonal pairs, row-major; the diagonal is fixed
  // by the flavor.
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < r.m; ++i)
    for (int j = 0; j < r.m; ++j) {
      if (i == j || !r.contains(i, j)) continue;
      if (!first) out += ",";
      first = false;
      out += "(" + ground.names[i] + "," + ground.names[j] + ")";
    }
  return out + "}";
}

std::string RelationSpace::render(int i) const { return render(elems[i]); }

RelationSpace enumerate_space(RelFlavor flavor, GroundSet ground, SpaceOptions opts) {
  const int m = ground.m;
  if (flavor == RelFlavor::WeakOrderDual)
    throw BadInput("the weak-order space is built through iso_maps, not enumerated directly");

  int mlimit = default_m_limit(flavor);
  long long count = expected_count(flavor, m);
  if (m > mlimit && !opts.allow_large)
    throw SizeLimit(to_string(flavor) + " with m=" + std::to_string(m) +
                    " (pass allow-large to override)");
  if (count > kHardLimit)
    throw SizeLimit(to_string(flavor) + " with m=" + std::to_string(m) + " has " +
                    std::to_string(count) + " elements");

  RelationSpace sp;
  sp.flavor = flavor;
  sp.ground = std::move(ground);

  if (flavor == RelFlavor::TotalPreorder) {
    std::vector<int> all;
    for (int i = 0; i < m; ++i) all.push_back(i);
    std::vector<std::vector<std::vector<int>>> parts;
    std::vector<std::vector<int>> blocks;
    gen_partitions(all, blocks, parts);
    for (const auto& pt : parts) sp.elems.push_back(preorder_from_blocks(m, pt));
  } else {
    const std::uint32_t diag = diagonal_mask(m);
    std::vector<int> cells;  // off-diagonal cells, row-major
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j) cells.push_back(i * m + j);
    const bool reflexive_base =
        flavor == RelFlavor::WeakTournament || flavor == RelFlavor::ReflexiveRel;
    const bool need_connected =
        flavor == RelFlavor::WeakTournament || flavor == RelFlavor::StrictTournament;
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << cells.size()); ++v) {
      BinRel r{m, reflexive_base ? diag : 0};
      for (std::size_t k = 0; k < cells.size(); ++k)
        if ((v >> k) & 1u) r.bits |= std::uint32_t{1} << cells[k];
      if (need_connected && !is_connected(r)) continue;
      sp.elems.push_back(r);
    }
  }

  if (static_cast<long long>(sp.elems.size()) != count)
    throw InternalInvariantViolation("enumeration count mismatch for " + to_string(flavor));

  sp.rebuild_index();

  const int n = sp.size();
  std::vector<Bitset> rows(n, Bitset(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((sp.elems[i].bits & ~sp.elems[j].bits) == 0) rows[i].set(j);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(sp.render(i));
  sp.ctx = build_context(build_poset(n, rows, std::move(labels), BuildOptions{true}));
  return sp;
}

BinRel IsoMap::map(const BinRel& r) const {
  if (target.flavor == RelFlavor::WeakOrderDual) return asymmetric_part(r);
  return BinRel{r.m, r.bits & ~diagonal_mask(r.m)};
}

IsoMap iso_maps(const RelationSpace& space) {
  IsoMap iso;
  const int n = space.size();
  const int m = space.ground.m;

  if (space.flavor == RelFlavor::WeakTournament || space.flavor == RelFlavor::ReflexiveRel) {
    RelFlavor tf = space.flavor == RelFlavor::WeakTournament ? RelFlavor::StrictTournament
                                                             : RelFlavor::IrreflexiveRel;
    iso.target = enumerate_space(tf, space.ground, SpaceOptions{true});
  } else if (space.flavor == RelFlavor::TotalPreorder) {
    // Weak orders as asymmetric parts, in source order, under reverse inclusion.
    RelationSpace tgt;
    tgt.flavor = RelFlavor::WeakOrderDual;
    tgt.ground = space.ground;
    for (const BinRel& r : space.elems) {
      BinRel w = asymmetric_part(r);
      if (!is_irreflexive(w)) throw InternalInvariantViolation("weak order image not asymmetric");
      // negative transitivity: not xWy and not yWz imply not xWz
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
          for (int z = 0; z < m; ++z)
            if (!w.contains(x, y) && !w.contains(y, z) && w.contains(x, z))
              throw InternalInvariantViolation("weak order image not negatively transitive");
      tgt.elems.push_back(w);
    }
    tgt.rebuild_index();
    std::vector<Bitset> rows(n, Bitset(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((tgt.elems[j].bits & ~tgt.elems[i].bits) == 0) rows[i].set(j);  // reverse inclusion
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(tgt.render(i));
    tgt.ctx = build_context(build_poset(n, rows, std::move(labels), BuildOptions{true}));
    iso.target = std::move(tgt);
  } else {
    throw WrongFlavor("iso_maps expects weak-tournament, reflexive or total-preorder");
  }

  iso.forward.assign(n, -1);
  iso.inverse.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    BinRel img = space.flavor == RelFlavor::TotalPreorder
                     ? asymmetric_part(space.elems[i])
                     : BinRel{m, space.elems[i].bits & ~diagonal_mask(m)};
    int j = iso.target.index_of(img);
    iso.forward[i] = j;
    if (iso.inverse[j] >= 0) throw InternalInvariantViolation("iso map is not injective");
    iso.inverse[j] = i;
  }

  // Order isomorphism, both directions, plus join preservation.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (space.ctx.leq(i, j) != iso.target.ctx.leq(iso.forward[i], iso.forward[j]))
        throw InternalInvariantViolation("iso map does not preserve order");
      if (iso.forward[space.ctx.join(i, j)] !=
          iso.target.ctx.join(iso.forward[i], iso.forward[j]))
        throw InternalInvariantViolation("iso map does not preserve joins");
    }
  return iso;
}

}  // namespace medlat
