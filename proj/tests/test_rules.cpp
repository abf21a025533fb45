#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace medlat;
using namespace testutil;

namespace {

const RelationSpace& preorder3() {
  static RelationSpace sp =
      enumerate_space(RelFlavor::TotalPreorder, GroundSet::of({"x", "y", "z"}));
  return sp;
}

const RelationSpace& reflexive3() {
  static RelationSpace sp =
      enumerate_space(RelFlavor::ReflexiveRel, GroundSet::of({"a", "b", "c"}));
  return sp;
}

const RelationSpace& irreflexive3() {
  static RelationSpace sp =
      enumerate_space(RelFlavor::IrreflexiveRel, GroundSet::of({"a", "b", "c"}));
  return sp;
}

template <class F>
void all_profiles(int size, int n, F&& f) {
  std::vector<int> p(n, 0);
  while (true) {
    f(p);
    int i = 0;
    while (i < n && ++p[i] == size) p[i++] = 0;
    if (i == n) break;
  }
}

}  // namespace

TEST_CASE("order filters: membership, antichain reduction, thresholds") {
  OrderFilter f = OrderFilter::from_basis(3, {0b011, 0b111, 0b110});
  CHECK(f.basis == std::vector<Coalition>{0b011, 0b110});  // supersets dropped
  CHECK(f.contains(0b011));
  CHECK(f.contains(0b111));
  CHECK_FALSE(f.contains(0b101));
  CHECK_FALSE(f.contains(0b000));

  OrderFilter maj = OrderFilter::all_of_size_at_least(3, 2);
  CHECK(maj.basis == std::vector<Coalition>{0b011, 0b101, 0b110});
  CHECK(OrderFilter::all_of_size_at_least(3, 4).empty_filter());
  CHECK(OrderFilter::all_of_size_at_least(3, 0).basis == std::vector<Coalition>{0});
}

TEST_CASE("tie-breaks are validated permutations") {
  TieBreak id = TieBreak::identity(5);
  TieBreak rv = TieBreak::reversed(5);
  std::vector<int> c{2, 4};
  CHECK(id.least(c) == 2);
  CHECK(rv.least(c) == 4);
  CHECK_THROWS_AS(TieBreak::from_order({0, 0, 1}), BadInput);
  CHECK_THROWS_AS(TieBreak::from_order({0, 3, 1}), BadInput);
}

TEST_CASE("rule tables: mixed-radix indexing round-trips") {
  RuleTable t;
  t.n_agents = 3;
  t.size = 13;
  t.out.assign(13 * 13 * 13, 0);
  std::mt19937_64 rng(kDefaultSeed);
  std::vector<int> p(3), q(3);
  for (int trial = 0; trial < 500; ++trial) {
    for (int& e : p) e = rng() % 13;
    t.decode(t.index(p), q);
    CHECK(p == q);
  }
  std::vector<int> bad{0, 0};
  CHECK_THROWS_AS(t.eval(bad), BadProfile);
}

TEST_CASE("constant, dictator and unanimity behavior") {
  const RelationSpace& sp = preorder3();
  RuleEnv env = RuleEnv::of(sp);
  std::vector<int> p{3, 7, 11};
  CHECK(eval_rule(env, RuleSpec{ConstantRule{5}}, p) == 5);
  CHECK(eval_rule(env, RuleSpec{DictatorRule{1}}, p) == 7);
  for (int x = 0; x < sp.size(); ++x) {
    std::vector<int> u{x, x, x};
    CHECK(co_majority(sp.ctx, u) == x);
  }
  std::vector<int> single{9};
  CHECK(co_majority(sp.ctx, single) == 9);
}

TEST_CASE("co-majority of (x,x,y) is x") {
  const MedianContext& ctx = preorder3().ctx;
  for (int x = 0; x < ctx.n(); ++x)
    for (int y = 0; y < ctx.n(); ++y) {
      std::vector<int> p{x, x, y};
      CHECK(co_majority(ctx, p) == x);
    }
}

TEST_CASE("the worked three-voter example: outputs and adjacency sensitivity") {
  const RelationSpace& sp = preorder3();
  int r1 = sp.index_of(linear_order(3, {0, 1, 2}));   // xyz
  int r2 = sp.index_of(linear_order(3, {1, 2, 0}));   // yzx
  int r3 = sp.index_of(linear_order(3, {2, 0, 1}));   // zxy
  int r3p = sp.index_of(linear_order(3, {0, 2, 1}));  // xzy
  std::vector<int> pn{r1, r2, r3}, pnp{r1, r2, r3p};
  int f1 = co_majority(sp.ctx, pn);
  int f2 = co_majority(sp.ctx, pnp);
  CHECK(sp.render(f1) == "[xyz]");
  CHECK(sp.render(f2) == "x[yz]");
  CHECK(f1 == sp.ctx.top);
  CHECK(f2 == sp.index_of(preorder_of_blocks(3, {{0}, {1, 2}})));
}

TEST_CASE("co-majority is the uniform majority-quota sponsorship rule") {
  const RelationSpace& sp = preorder3();
  FilterFamily fam = uniform_quota_family(sp.ctx, 3, majority_threshold(3));
  all_profiles(sp.size(), 3, [&](const std::vector<int>& p) {
    CHECK(sponsorship_eval(sp.ctx, fam, p) == co_majority(sp.ctx, p));
  });
}

TEST_CASE("sponsorship evaluation: empty family, projection family") {
  const RelationSpace& sp = preorder3();
  FilterFamily empty;
  empty.per_m.assign(sp.ctx.meet_irr.size(), OrderFilter{3, {}});
  FilterFamily proj;
  proj.per_m.assign(sp.ctx.meet_irr.size(), OrderFilter::from_basis(3, {0b001}));
  all_profiles(sp.size(), 3, [&](const std::vector<int>& p) {
    CHECK(sponsorship_eval(sp.ctx, empty, p) == sp.ctx.top);
    CHECK(sponsorship_eval(sp.ctx, proj, p) == p[0]);
  });
}

TEST_CASE("filter extraction: constants, dictators, co-majority") {
  const RelationSpace& sp = preorder3();
  RuleEnv env = RuleEnv::of(sp);
  {
    RuleTable t = tabulate(env, RuleSpec{ConstantRule{sp.ctx.top}}, 3);
    FilterFamily fam = extract_filters(sp.ctx, t);
    for (const OrderFilter& f : fam.per_m) CHECK(f.empty_filter());
  }
  {
    RuleTable t = tabulate(env, RuleSpec{DictatorRule{0}}, 3);
    FilterFamily fam = extract_filters(sp.ctx, t);
    for (const OrderFilter& f : fam.per_m) CHECK(f.basis == std::vector<Coalition>{0b001});
  }
  {
    RuleTable t = tabulate(env, RuleSpec{CoMajorityRule{}}, 3);
    FilterFamily fam = extract_filters(sp.ctx, t);
    for (const OrderFilter& f : fam.per_m)
      CHECK(f.basis == std::vector<Coalition>{0b011, 0b101, 0b110});
    // and the extracted family reproduces the rule
    all_profiles(sp.size(), 3, [&](const std::vector<int>& p) {
      CHECK(sponsorship_eval(sp.ctx, fam, p) == t.eval(p));
    });
  }
}

TEST_CASE("family classification tags") {
  const MedianContext& ctx = preorder3().ctx;
  {
    FamilyTags tags = classify_family(ctx, uniform_quota_family(ctx, 3, 2));
    CHECK(tags.quorum_system);
    CHECK(tags.inclusive);
    CHECK(tags.weakly_neutral);
    CHECK(tags.quota);
    CHECK(tags.quota_values == std::vector<int>(6, 2));
    CHECK_FALSE(tags.outcome_biased);
    CHECK_FALSE(tags.collegial);
  }
  {
    FilterFamily empty;
    empty.per_m.assign(ctx.meet_irr.size(), OrderFilter{3, {}});
    FamilyTags tags = classify_family(ctx, empty);
    CHECK(tags.outcome_biased);
    CHECK_FALSE(tags.quota);
  }
  {
    FilterFamily dict;
    dict.per_m.assign(ctx.meet_irr.size(), OrderFilter::from_basis(3, {0b001}));
    FamilyTags tags = classify_family(ctx, dict);
    CHECK(tags.collegial);
    CHECK(tags.quorum_system);
    CHECK_FALSE(tags.inclusive);
    CHECK_FALSE(tags.quota);
  }
}

TEST_CASE("generalized minimizer: unanimity, worked profiles, two-agent ties") {
  const RelationSpace& sp = preorder3();
  const MedianContext& ctx = sp.ctx;
  TieBreak id = TieBreak::identity(ctx.n());
  TieBreak rev = TieBreak::reversed(ctx.n());

  for (int x = 0; x < ctx.n(); ++x) {
    std::vector<int> u{x, x, x};
    CHECK(generalized_ck(ctx, u, id) == x);
    CHECK(generalized_ck(ctx, u, rev) == x);
  }

  int r1 = sp.index_of(linear_order(3, {0, 1, 2}));
  int r2 = sp.index_of(linear_order(3, {1, 2, 0}));
  int r3 = sp.index_of(linear_order(3, {2, 0, 1}));
  int r3p = sp.index_of(linear_order(3, {0, 2, 1}));
  for (auto& p : {std::vector<int>{r1, r2, r3}, std::vector<int>{r1, r2, r3p}}) {
    int cm = co_majority(ctx, p);
    CHECK(generalized_ck(ctx, p, id) == cm);
    CHECK(generalized_ck(ctx, p, rev) == cm);
  }

  // two agents: minimizers match an oracle built on BFS distances, and some
  // pair is genuinely tie-break dependent
  auto adj = oracle_cover_adj(ctx.poset);
  bool tie_dependent = false;
  for (int x = 0; x < ctx.n(); ++x)
    for (int y = 0; y < ctx.n(); ++y) {
      std::vector<int> p{x, y};
      std::vector<int> want;
      int best = -1;
      for (int z = 0; z < ctx.n(); ++z) {
        int s = oracle_bfs_dist(adj, z, x) + oracle_bfs_dist(adj, z, y);
        if (best < 0 || s < best) {
          best = s;
          want.clear();
        }
        if (s == best) want.push_back(z);
      }
      CHECK(remoteness_minimizers(ctx, p) == want);
      if (generalized_ck(ctx, p, id) != generalized_ck(ctx, p, rev)) tie_dependent = true;
    }
  CHECK(tie_dependent);
}

TEST_CASE("constrained minimizer stays inside the linear orders") {
  const RelationSpace& sp = preorder3();
  TieBreak id = TieBreak::identity(sp.size());
  auto linears = sp.linear_orders();
  CHECK(linears.size() == 6);

  for (int l : linears) {
    std::vector<int> u{l, l, l};
    CHECK(strict_ck(sp, u, id) == l);
  }

  std::mt19937_64 rng(kDefaultSeed);
  for (int t = 0; t < 400; ++t) {
    std::vector<int> p(3);
    for (int& e : p) e = rng() % sp.size();
    int s = strict_ck(sp, p, id);
    CHECK(std::find(linears.begin(), linears.end(), s) != linears.end());
    CHECK(remoteness(sp.ctx, s, p) >= remoteness(sp.ctx, generalized_ck(sp.ctx, p, id), p));
  }

  // the all-indifferent co-majority outcome is replaced by a linear order
  int r1 = sp.index_of(linear_order(3, {0, 1, 2}));
  int r2 = sp.index_of(linear_order(3, {1, 2, 0}));
  int r3 = sp.index_of(linear_order(3, {2, 0, 1}));
  std::vector<int> cycle{r1, r2, r3};
  CHECK(co_majority(sp.ctx, cycle) == sp.ctx.top);
  int s = strict_ck(sp, cycle, id);
  CHECK(std::find(linears.begin(), linears.end(), s) != linears.end());

  CHECK_THROWS_AS(strict_ck(reflexive3(), cycle, TieBreak::identity(64)), WrongFlavor);
}

TEST_CASE("lattice filter rules: named instances and the majority identity") {
  const RelationSpace& sp = reflexive3();
  RuleEnv env = RuleEnv::of(sp);
  const int n = 3;
  OrderFilter wmaj = OrderFilter::all_of_size_at_least(n, majority_threshold(n));
  std::vector<BinRel> bottoms(wmaj.basis.size(), BinRel{3, diagonal_mask(3)});
  std::vector<BinRel> tops(wmaj.basis.size(), BinRel{3, full_mask(3)});
  RuleSpec majority{MajorityLatticeRule{}};

  all_profiles(sp.size(), n, [&](const std::vector<int>& p) {
    int via_filter = lattice_filter_eval(sp, wmaj, bottoms, false, p);
    int via_dual = lattice_filter_eval(sp, wmaj, tops, true, p);
    int cm = co_majority(sp.ctx, p);
    CHECK(via_filter == cm);                      // meet-shaped form is co-majority
    CHECK(via_dual == eval_rule(env, majority, p));  // join-shaped form is majority
    CHECK(via_filter == via_dual);                // they coincide for odd n
  });
}

TEST_CASE("basis-only evaluation equals full upward-closure evaluation") {
  std::mt19937_64 rng(kDefaultSeed);
  for (const RelationSpace* spp : {&reflexive3(), &irreflexive3()}) {
    const RelationSpace& sp = *spp;
    const int n = 3;
    for (int fam = 0; fam < 12; ++fam) {
      std::vector<Coalition> raw;
      int k = 1 + rng() % 3;
      for (int i = 0; i < k; ++i) raw.push_back(rng() % 8);
      OrderFilter f = OrderFilter::from_basis(n, raw);
      std::vector<BinRel> offsets;
      for (std::size_t i = 0; i < f.basis.size(); ++i)
        offsets.push_back(sp.elems[rng() % sp.size()]);
      for (bool dual : {false, true}) {
        for (int t = 0; t < 250; ++t) {
          std::vector<int> p(n);
          for (int& e : p) e = rng() % sp.size();
          CHECK(lattice_filter_eval(sp, f, offsets, dual, p) ==
                lattice_filter_eval_full(sp, f, offsets, dual, p));
        }
      }
    }
  }
}

TEST_CASE("lattice rules reject wrong flavors and foreign offsets") {
  const RelationSpace& pre = preorder3();
  OrderFilter f = OrderFilter::all_of_size_at_least(3, 2);
  std::vector<BinRel> offsets(f.basis.size(), BinRel{3, diagonal_mask(3)});
  std::vector<int> p{0, 1, 2};
  CHECK_THROWS_AS(lattice_filter_eval(pre, f, offsets, false, p), WrongFlavor);

  const RelationSpace& irr = irreflexive3();
  std::vector<BinRel> reflexive_offsets(f.basis.size(), BinRel{3, diagonal_mask(3)});
  CHECK_THROWS_AS(lattice_filter_eval(irr, f, reflexive_offsets, false, p), BadInput);
}

TEST_CASE("cycle detection distinguishes ties from strict cycles") {
  BinRel two_cycle{3, 0};  // a ~ b, no strict pair
  two_cycle.add(0, 1);
  two_cycle.add(1, 0);
  CHECK_FALSE(has_cycle_through_strict_pair(two_cycle));

  BinRel strict_cycle{3, 0};
  strict_cycle.add(0, 1);
  strict_cycle.add(1, 2);
  strict_cycle.add(2, 0);
  CHECK(has_cycle_through_strict_pair(strict_cycle));

  BinRel mixed{3, 0};  // strict (a,b), return path through ties
  mixed.add(0, 1);
  mixed.add(1, 2);
  mixed.add(2, 1);
  mixed.add(2, 0);
  mixed.add(0, 2);
  CHECK(has_cycle_through_strict_pair(mixed));

  BinRel acyclic = linear_order(3, {0, 1, 2});
  CHECK_FALSE(has_cycle_through_strict_pair(acyclic));
}

TEST_CASE("minimal retracts: identity on clean outputs, canonical deletions") {
  const RelationSpace& irr = irreflexive3();
  RuleSpec inner{CoMajorityRule{}};

  // transitive unanimity: nothing deleted
  BinRel lin = asymmetric_part(linear_order(3, {0, 1, 2}));
  int lin_i = irr.index_of(lin);
  std::vector<int> up{lin_i, lin_i, lin_i};
  CHECK(minimal_monotonic_retract(irr, inner, up) == lin_i);

  // unanimous 3-cycle: one deletion, first cell in the canonical encoding
  BinRel cyc{3, 0};
  cyc.add(0, 1);
  cyc.add(1, 2);
  cyc.add(2, 0);
  int cyc_i = irr.index_of(cyc);
  std::vector<int> uc{cyc_i, cyc_i, cyc_i};
  int got = minimal_monotonic_retract(irr, inner, uc);
  BinRel want{3, 0};
  want.add(1, 2);
  want.add(2, 0);
  CHECK(irr.elems[got].bits == want.bits);
  CHECK((irr.elems[got].bits & ~cyc.bits) == 0);  // subset of the input

  // weak idempotence across the whole reflexive lattice
  const RelationSpace& refl = reflexive3();
  RuleSpec retract{RetractRule{std::make_shared<RuleSpec>(inner)}};
  RuleEnv env = RuleEnv::of(refl);
  for (int r = 0; r < refl.size(); ++r) {
    std::vector<int> u{r, r, r};
    int out = eval_rule(env, retract, u);
    CHECK((refl.elems[out].bits & ~refl.elems[r].bits) == 0);
    CHECK_FALSE(has_cycle_through_strict_pair(refl.elems[out]));
  }
}

TEST_CASE("tabulation limits and profile validation") {
  const RelationSpace& refl = reflexive3();
  RuleEnv env = RuleEnv::of(refl);
  CHECK_THROWS_AS(tabulate(env, RuleSpec{CoMajorityRule{}}, 5), SizeLimit);
  std::vector<int> bad{70, 0, 0};
  CHECK_THROWS_AS(co_majority(refl.ctx, bad), BadProfile);
  std::vector<int> empty;
  CHECK_THROWS_AS(co_majority(refl.ctx, empty), BadProfile);
}
