#include "medlat/rules.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace medlat {

namespace {

constexpr std::int64_t kTabulateLimit = 1 << 24;

void check_profile(const MedianContext& ctx, std::span<const int> profile) {
  if (profile.empty()) throw BadProfile("empty profile");
  for (int x : profile)
    if (x < 0 || x >= ctx.n())
      throw BadProfile("element " + std::to_string(x) + " out of range");
}

// Coalitions of size exactly k over n agents, ascending (Gosper's hack).
template <class F>
void for_each_of_size(int n, int k, F&& f) {
  if (n >= 32) throw SizeLimit("coalition masks support at most 31 agents");
  if (k == 0) {
    f(Coalition{0});
    return;
  }
  if (k > n) return;
  Coalition c = (Coalition{1} << k) - 1;
  const Coalition limit = Coalition{1} << n;
  while (c < limit) {
    f(c);
    Coalition u = c & (~c + 1);
    Coalition v = c + u;
    if (v == 0) break;
    c = v + (((v ^ c) / u) >> 2);
  }
}

}  // namespace

OrderFilter OrderFilter::from_basis(int n, std::vector<Coalition> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<Coalition> minimal;
  for (Coalition c : members) {
    bool dominated = false;
    for (Coalition b : minimal)
      if ((b & c) == b) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(c);
  }
  OrderFilter f;
  f.n = n;
  f.basis = std::move(minimal);
  return f;
}

OrderFilter OrderFilter::all_of_size_at_least(int n, int q) {
  OrderFilter f;
  f.n = n;
  if (q > n) return f;  // empty filter
  if (q < 0) q = 0;
  for_each_of_size(n, q, [&](Coalition c) { f.basis.push_back(c); });
  std::sort(f.basis.begin(), f.basis.end());
  return f;
}

TieBreak TieBreak::identity(int n) {
  TieBreak t;
  t.order.resize(n);
  std::iota(t.order.begin(), t.order.end(), 0);
  t.pos = t.order;
  return t;
}

TieBreak TieBreak::reversed(int n) {
  TieBreak t;
  for (int i = n - 1; i >= 0; --i) t.order.push_back(i);
  t.pos.resize(n);
  for (int k = 0; k < n; ++k) t.pos[t.order[k]] = k;
  return t;
}

TieBreak TieBreak::from_order(std::vector<int> order) {
  TieBreak t;
  int n = static_cast<int>(order.size());
  t.pos.assign(n, -1);
  for (int k = 0; k < n; ++k) {
    int e = order[k];
    if (e < 0 || e >= n || t.pos[e] >= 0) throw BadInput("tie-break is not a permutation");
    t.pos[e] = k;
  }
  t.order = std::move(order);
  return t;
}

int TieBreak::least(std::span<const int> candidates) const {
  if (candidates.empty()) throw BadInput("tie-break over an empty candidate set");
  int best = candidates[0];
  for (int c : candidates)
    if (pos[c] < pos[best]) best = c;
  return best;
}

std::int64_t RuleTable::index(std::span<const int> profile) const {
  std::int64_t idx = 0, mult = 1;
  for (int i = 0; i < n_agents; ++i) {
    idx += profile[i] * mult;
    mult *= size;
  }
  return idx;
}

void RuleTable::decode(std::int64_t idx, std::span<int> profile) const {
  for (int i = 0; i < n_agents; ++i) {
    profile[i] = static_cast<int>(idx % size);
    idx /= size;
  }
}

int RuleTable::eval(std::span<const int> profile) const {
  if (static_cast<int>(profile.size()) != n_agents)
    throw BadProfile("profile length " + std::to_string(profile.size()) + ", table expects " +
                     std::to_string(n_agents));
  for (int x : profile)
    if (x < 0 || x >= size) throw BadProfile("element out of range");
  return out[index(profile)];
}

std::string RuleSpec::name() const {
  struct V {
    std::string operator()(const SponsorshipRule&) const { return "sponsorship"; }
    std::string operator()(const CoMajorityRule&) const { return "comajority"; }
    std::string operator()(const QuotaRule& r) const {
      std::string s = "quota(";
      for (std::size_t i = 0; i < r.q.size(); ++i) s += (i ? "," : "") + std::to_string(r.q[i]);
      return s + ")";
    }
    std::string operator()(const GeneralizedCkRule&) const { return "ck"; }
    std::string operator()(const StrictCkRule&) const { return "ck-strict"; }
    std::string operator()(const LatticeFilterRule&) const { return "lattice-filter"; }
    std::string operator()(const LatticeDualFilterRule&) const { return "lattice-dual-filter"; }
    std::string operator()(const MajorityLatticeRule&) const { return "majority"; }
    std::string operator()(const DictatorRule& r) const {
      return "dictator(" + std::to_string(r.agent) + ")";
    }
    std::string operator()(const ConstantRule& r) const {
      return "constant(" + std::to_string(r.element) + ")";
    }
    std::string operator()(const TabulatedRule&) const { return "table"; }
    std::string operator()(const RetractRule& r) const {
      return "retract(" + (r.inner ? r.inner->name() : std::string("?")) + ")";
    }
  };
  return std::visit(V{}, v);
}

int sponsorship_eval(const MedianContext& ctx, const FilterFamily& family,
                     std::span<const int> profile) {
  check_profile(ctx, profile);
  if (family.per_m.size() != ctx.meet_irr.size())
    throw BadInput("filter family is not keyed by the meet-irreducibles");
  std::vector<int> qualifying;
  for (std::size_t k = 0; k < ctx.meet_irr.size(); ++k) {
    int m = ctx.meet_irr[k];
    Coalition c = 0;
    for (std::size_t i = 0; i < profile.size(); ++i)
      if (ctx.leq(profile[i], m)) c |= Coalition{1} << i;
    if (family.per_m[k].contains(c)) qualifying.push_back(m);
  }
  try {
    return meet_of_set(ctx, qualifying);
  } catch (const MeetUndefined& e) {
    // The sponsorship form of an actual rule always has this meet; reaching
    // here means the supplied family does not define a total rule.
    throw InternalInvariantViolation(std::string("sponsorship meet failed: ") + e.what());
  }
}

int co_majority(const MedianContext& ctx, std::span<const int> profile) {
  check_profile(ctx, profile);
  const int n = static_cast<int>(profile.size());
  const int t = majority_threshold(n);
  // Joins over coalitions of size exactly t determine the meet; larger
  // coalitions only contribute elements above one already present.
  std::vector<int> terms;
  for_each_of_size(n, t, [&](Coalition c) {
    int j = -1;
    for (int i = 0; i < n; ++i)
      if ((c >> i) & 1u) j = j < 0 ? profile[i] : ctx.join(j, profile[i]);
    terms.push_back(j);
  });
  return meet_of_set(ctx, terms);
}

FilterFamily extract_filters(const MedianContext& ctx, const RuleTable& table) {
  if (table.size != ctx.n()) throw BadInput("table size does not match the context");
  const int n = table.n_agents;
  const std::size_t nm = ctx.meet_irr.size();
  std::vector<std::vector<char>> seen(nm, std::vector<char>(std::size_t{1} << n, 0));

  std::vector<int> profile(n, 0);
  for (std::int64_t idx = 0; idx < table.num_profiles(); ++idx) {
    table.decode(idx, profile);
    int f = table.out[idx];
    for (std::size_t k = 0; k < nm; ++k) {
      int m = ctx.meet_irr[k];
      if (!ctx.leq(f, m)) continue;
      Coalition c = 0;
      for (int i = 0; i < n; ++i)
        if (ctx.leq(profile[i], m)) c |= Coalition{1} << i;
      seen[k][c] = 1;
    }
  }

  FilterFamily fam;
  for (std::size_t k = 0; k < nm; ++k) {
    std::vector<Coalition> members;
    for (Coalition c = 0; c < (Coalition{1} << n); ++c)
      if (seen[k][c]) members.push_back(c);
    fam.per_m.push_back(OrderFilter::from_basis(n, std::move(members)));
  }
  return fam;
}

FilterFamily quota_family(const MedianContext& ctx, int n_agents, const std::vector<int>& q) {
  if (q.size() != ctx.meet_irr.size())
    throw BadInput("quota vector is not keyed by the meet-irreducibles");
  FilterFamily fam;
  for (int qk : q) fam.per_m.push_back(OrderFilter::all_of_size_at_least(n_agents, qk));
  return fam;
}

FilterFamily uniform_quota_family(const MedianContext& ctx, int n_agents, int q) {
  return quota_family(ctx, n_agents, std::vector<int>(ctx.meet_irr.size(), q));
}

FamilyTags classify_family(const MedianContext& ctx, const FilterFamily& family) {
  if (family.per_m.size() != ctx.meet_irr.size())
    throw BadInput("filter family is not keyed by the meet-irreducibles");
  FamilyTags tags;
  const std::size_t nm = family.per_m.size();

  tags.quorum_system = true;
  for (const auto& f : family.per_m)
    for (std::size_t a = 0; a < f.basis.size() && tags.quorum_system; ++a)
      for (std::size_t b = a; b < f.basis.size(); ++b)
        if ((f.basis[a] & f.basis[b]) == 0) {
          tags.quorum_system = false;
          break;
        }

  Coalition covered = 0;
  int n_agents = 0;
  for (const auto& f : family.per_m) {
    n_agents = f.n;
    for (Coalition b : f.basis) covered |= b;
  }
  tags.inclusive = n_agents > 0 && covered == (Coalition{1} << n_agents) - 1;

  tags.outcome_biased = false;
  tags.collegial = false;
  for (const auto& f : family.per_m) {
    if (f.empty_filter()) {
      tags.outcome_biased = true;
      tags.collegial = true;  // vacuously: any nonempty core works
      continue;
    }
    Coalition core = ~Coalition{0};
    for (Coalition b : f.basis) core &= b;
    if (core != 0) tags.collegial = true;
  }

  tags.weakly_neutral = true;
  for (std::size_t a = 0; a < nm && tags.weakly_neutral; ++a)
    for (std::size_t b = a + 1; b < nm; ++b)
      if (ctx.meet(ctx.meet_irr[a], ctx.meet_irr[b]) >= 0 &&
          !(family.per_m[a] == family.per_m[b])) {
        tags.weakly_neutral = false;
        break;
      }

  tags.quota = true;
  for (const auto& f : family.per_m) {
    if (f.empty_filter()) {
      tags.quota = false;
      break;
    }
    int q = std::popcount(f.basis[0]);
    std::size_t expect = 1;
    // C(n, q)
    for (int i = 0; i < q; ++i) expect = expect * (f.n - i) / (i + 1);
    bool same = f.basis.size() == expect;
    for (Coalition b : f.basis)
      if (std::popcount(b) != q) same = false;
    if (!same) {
      tags.quota = false;
      break;
    }
    tags.quota_values.push_back(q);
  }
  if (!tags.quota) tags.quota_values.clear();
  return tags;
}

long long remoteness(const MedianContext& ctx, int candidate, std::span<const int> profile) {
  long long s = 0;
  for (int x : profile) s += ctx.dist(candidate, x);
  return s;
}

std::vector<int> remoteness_minimizers(const MedianContext& ctx, std::span<const int> profile) {
  check_profile(ctx, profile);
  std::vector<int> out;
  long long best = -1;
  for (int z = 0; z < ctx.n(); ++z) {
    long long s = remoteness(ctx, z, profile);
    if (best < 0 || s < best) {
      best = s;
      out.clear();
    }
    if (s == best) out.push_back(z);
  }
  return out;
}

int generalized_ck(const MedianContext& ctx, std::span<const int> profile, const TieBreak& tb) {
  if (!ctx.report.is_median) throw NotMedian("generalized Condorcet-Kemeny needs a median context");
  if (!ctx.graded()) throw NotGraded();
  auto mins = remoteness_minimizers(ctx, profile);
  return tb.least(mins);
}

int strict_ck(const RelationSpace& space, std::span<const int> profile, const TieBreak& tb) {
  if (space.flavor != RelFlavor::TotalPreorder)
    throw WrongFlavor("strict Condorcet-Kemeny is defined on the total-preorder space");
  check_profile(space.ctx, profile);
  auto candidates = space.linear_orders();
  if (candidates.empty()) throw NoLinearOrders();
  long long best = -1;
  std::vector<int> mins;
  for (int z : candidates) {
    long long s = remoteness(space.ctx, z, profile);
    if (best < 0 || s < best) {
      best = s;
      mins.clear();
    }
    if (s == best) mins.push_back(z);
  }
  return tb.least(mins);
}

namespace {

std::uint32_t space_top_bits(const RelationSpace& space) {
  std::uint32_t full = full_mask(space.ground.m);
  return space.flavor == RelFlavor::IrreflexiveRel ? (full & ~diagonal_mask(space.ground.m))
                                                   : full;
}

std::uint32_t space_bottom_bits(const RelationSpace& space) {
  return space.flavor == RelFlavor::IrreflexiveRel ? 0u : diagonal_mask(space.ground.m);
}

void check_lattice_flavor(const RelationSpace& space) {
  if (space.flavor != RelFlavor::ReflexiveRel && space.flavor != RelFlavor::IrreflexiveRel)
    throw WrongFlavor("lattice filter rules need the reflexive or irreflexive lattice");
}

std::uint32_t lattice_term(const RelationSpace& space, std::span<const int> profile, Coalition s,
                           std::uint32_t offset_bits, bool dual) {
  std::uint32_t acc = dual ? space_top_bits(space) : 0u;
  for (std::size_t i = 0; i < profile.size(); ++i)
    if ((s >> i) & 1u) {
      std::uint32_t b = space.elems[profile[i]].bits;
      acc = dual ? (acc & b) : (acc | b);
    }
  return dual ? (acc & offset_bits) : (acc | offset_bits);
}

}  // namespace

int lattice_filter_eval(const RelationSpace& space, const OrderFilter& filter,
                        std::span<const BinRel> offsets, bool dual,
                        std::span<const int> profile) {
  check_lattice_flavor(space);
  check_profile(space.ctx, profile);
  if (offsets.size() != filter.basis.size())
    throw BadInput("one offset relation per basis coalition is required");
  for (const BinRel& r : offsets) space.index_of(r);  // offsets must live in the space

  std::uint32_t acc = dual ? space_bottom_bits(space) : space_top_bits(space);
  for (std::size_t k = 0; k < filter.basis.size(); ++k) {
    std::uint32_t term = lattice_term(space, profile, filter.basis[k], offsets[k].bits, dual);
    acc = dual ? (acc | term) : (acc & term);
  }
  return space.index_of(BinRel{space.ground.m, acc});
}

int lattice_filter_eval_full(const RelationSpace& space, const OrderFilter& filter,
                             std::span<const BinRel> offsets, bool dual,
                             std::span<const int> profile) {
  check_lattice_flavor(space);
  check_profile(space.ctx, profile);
  if (offsets.size() != filter.basis.size())
    throw BadInput("one offset relation per basis coalition is required");
  const int n = static_cast<int>(profile.size());
  std::uint32_t acc = dual ? space_bottom_bits(space) : space_top_bits(space);
  for (Coalition c = 0; c < (Coalition{1} << n); ++c) {
    if (!filter.contains(c)) continue;
    std::uint32_t off = 0;
    for (std::size_t k = 0; k < filter.basis.size(); ++k)
      if ((filter.basis[k] & c) == filter.basis[k]) off |= offsets[k].bits;
    std::uint32_t term = lattice_term(space, profile, c, off, dual);
    acc = dual ? (acc | term) : (acc & term);
  }
  return space.index_of(BinRel{space.ground.m, acc});
}

bool has_cycle_through_strict_pair(const BinRel& r) {
  BinRel c = transitive_closure(r);
  for (int i = 0; i < r.m; ++i)
    for (int j = 0; j < r.m; ++j) {
      if (i == j) continue;
      if (r.contains(i, j) && !r.contains(j, i) && c.contains(j, i)) return true;
    }
  return false;
}

int minimal_monotonic_retract(const RelationSpace& space, const RuleSpec& inner,
                              std::span<const int> profile) {
  check_lattice_flavor(space);
  if (space.ground.m > 3)
    throw SizeLimit("minimal retracts search pair subsets exhaustively; m <= 3 only");
  RuleEnv env = RuleEnv::of(space);
  int raw = eval_rule(env, inner, profile);
  BinRel r = space.elems[raw];
  if (!has_cycle_through_strict_pair(r)) return raw;

  std::vector<int> cells;  // set off-diagonal cells, row-major
  for (int i = 0; i < r.m; ++i)
    for (int j = 0; j < r.m; ++j)
      if (i != j && r.contains(i, j)) cells.push_back(i * r.m + j);
  const int k = static_cast<int>(cells.size());

  // Minimal deletion count first; ties by the canonical encoding of the
  // deleted pair set (ascending mask over row-major cells).
  for (int cnt = 1; cnt <= k; ++cnt) {
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
      if (std::popcount(mask) != cnt) continue;
      BinRel cand = r;
      for (int b = 0; b < k; ++b)
        if ((mask >> b) & 1u) cand.bits &= ~(std::uint32_t{1} << cells[b]);
      if (!has_cycle_through_strict_pair(cand)) return space.index_of(cand);
    }
  }
  throw InternalInvariantViolation("deleting every pair still leaves a cycle");
}

int eval_rule(const RuleEnv& env, const RuleSpec& rule, std::span<const int> profile) {
  const MedianContext& ctx = *env.ctx;
  struct V {
    const RuleEnv& env;
    const MedianContext& ctx;
    std::span<const int> profile;

    const RelationSpace& space() const {
      if (!env.space) throw WrongFlavor("this rule needs a relation space");
      return *env.space;
    }

    int operator()(const SponsorshipRule& r) const {
      return sponsorship_eval(ctx, r.family, profile);
    }
    int operator()(const CoMajorityRule&) const { return co_majority(ctx, profile); }
    int operator()(const QuotaRule& r) const {
      std::vector<int> q = r.q;
      if (q.size() == 1) q.assign(ctx.meet_irr.size(), q[0]);
      return sponsorship_eval(ctx, quota_family(ctx, static_cast<int>(profile.size()), q),
                              profile);
    }
    int operator()(const GeneralizedCkRule& r) const {
      TieBreak tb = r.tiebreak.order.empty() ? TieBreak::identity(ctx.n()) : r.tiebreak;
      return generalized_ck(ctx, profile, tb);
    }
    int operator()(const StrictCkRule& r) const {
      TieBreak tb = r.tiebreak.order.empty() ? TieBreak::identity(ctx.n()) : r.tiebreak;
      return strict_ck(space(), profile, tb);
    }
    int operator()(const LatticeFilterRule& r) const {
      return lattice_filter_eval(space(), r.filter, r.offsets, false, profile);
    }
    int operator()(const LatticeDualFilterRule& r) const {
      return lattice_filter_eval(space(), r.filter, r.offsets, true, profile);
    }
    int operator()(const MajorityLatticeRule&) const {
      const RelationSpace& sp = space();
      const int n = static_cast<int>(profile.size());
      OrderFilter wmaj = OrderFilter::all_of_size_at_least(n, majority_threshold(n));
      std::vector<BinRel> offsets(wmaj.basis.size(),
                                  BinRel{sp.ground.m, space_top_bits(sp)});
      return lattice_filter_eval(sp, wmaj, offsets, true, profile);
    }
    int operator()(const DictatorRule& r) const {
      if (r.agent < 0 || r.agent >= static_cast<int>(profile.size()))
        throw BadProfile("dictator agent out of range");
      check_profile(ctx, profile);
      return profile[r.agent];
    }
    int operator()(const ConstantRule& r) const {
      if (r.element < 0 || r.element >= ctx.n()) throw BadInput("constant element out of range");
      check_profile(ctx, profile);
      return r.element;
    }
    int operator()(const TabulatedRule& r) const {
      if (!r.table) throw BadInput("missing rule table");
      return r.table->eval(profile);
    }
    int operator()(const RetractRule& r) const {
      if (!r.inner) throw BadInput("missing inner rule");
      return minimal_monotonic_retract(space(), *r.inner, profile);
    }
  };
  return std::visit(V{env, ctx, profile}, rule.v);
}

RuleTable tabulate(const RuleEnv& env, const RuleSpec& rule, int n_agents) {
  if (n_agents < 1) throw BadProfile("at least one agent");
  const int size = env.ctx->n();
  std::int64_t total = 1;
  for (int i = 0; i < n_agents; ++i) {
    total *= size;
    if (total > kTabulateLimit)
      throw SizeLimit("tabulating " + std::to_string(size) + "^" + std::to_string(n_agents) +
                      " profiles");
  }
  RuleTable t;
  t.n_agents = n_agents;
  t.size = size;
  t.out.resize(total);
  std::vector<int> profile(n_agents, 0);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    t.decode(idx, profile);
    t.out[idx] = eval_rule(env, rule, profile);
  }
  return t;
}

}  // namespace medlat
