#include "medlat/checkers.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>

namespace medlat {

namespace {

std::vector<std::int64_t> powers_of(int size, int n) {
  std::vector<std::int64_t> p(n);
  std::int64_t m = 1;
  for (int i = 0; i < n; ++i) {
    p[i] = m;
    m *= size;
  }
  return p;
}

void check_table(const MedianContext& ctx, const RuleTable& table) {
  if (table.size != ctx.n()) throw BadInput("table size does not match the context");
}

}  // namespace

IntervalTable::IntervalTable(const MedianContext& ctx) : n_(ctx.n()) {
  rows_.reserve(static_cast<std::size_t>(n_) * n_);
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y) rows_.push_back(interval_set(ctx, x, y));
}

OutcomePreference canonical_lu_preorder(const MedianContext& ctx, int x, int y) {
  Bitset mid = interval_set(ctx, x, y);
  OutcomePreference p;
  p.n = ctx.n();
  std::vector<int> cls(p.n, 2);
  for (int e = 0; e < p.n; ++e)
    if (mid.test(e)) cls[e] = 1;
  cls[x] = 0;
  p.geq.assign(p.n, Bitset(p.n));
  for (int u = 0; u < p.n; ++u)
    for (int v = 0; v < p.n; ++v)
      if (cls[u] <= cls[v]) p.geq[u].set(v);
  return p;
}

CheckReport is_locally_unimodal(const MedianContext& ctx, const OutcomePreference& pref) {
  CheckReport rep;
  rep.predicate = "locally-unimodal";
  if (pref.n != ctx.n()) throw BadInput("preference on a different element set");
  for (int u = 0; u < pref.n; ++u)
    if (!pref.geq[u].test(u)) throw BadInput("preference is not reflexive");
  for (int u = 0; u < pref.n; ++u) {
    bool ok = true;
    pref.geq[u].for_each([&](int v) {
      if (!pref.geq[v].is_subset_of(pref.geq[u])) ok = false;
    });
    if (!ok) throw BadInput("preference is not transitive");
  }

  int top = -1, maxima = 0;
  for (int u = 0; u < pref.n; ++u) {
    if (pref.geq[u].count() == pref.n) {
      ++maxima;
      top = u;
    }
  }
  if (maxima != 1) {
    rep.verdict = false;
    Witness w;
    w.note = maxima == 0 ? "no maximum" : "several maxima";
    w.elem_a = top;
    rep.witness = w;
    return rep;
  }

  for (int y = 0; y < pref.n; ++y) {
    Bitset itv = interval_set(ctx, top, y);
    bool bad = false;
    int bad_z = -1;
    itv.for_each([&](int z) {
      if (z != top && pref.strict(y, z)) {
        bad = true;
        bad_z = z;
      }
    });
    if (bad) {
      rep.verdict = false;
      Witness w;
      w.elem_a = y;
      w.elem_b = bad_z;
      w.note = "y strictly preferred to an element between the top and y";
      rep.witness = w;
      return rep;
    }
  }
  rep.verdict = true;
  return rep;
}

CheckReport is_bmu_monotonic(const MedianContext& ctx, const RuleTable& table) {
  check_table(ctx, table);
  CheckReport rep;
  rep.predicate = "bmu-monotonic";
  IntervalTable itv(ctx);
  const int n = table.n_agents, size = table.size;
  auto pw = powers_of(size, n);
  std::vector<int> p(n);
  for (std::int64_t idx = 0; idx < table.num_profiles(); ++idx) {
    table.decode(idx, p);
    const int t = table.out[idx];
    for (int i = 0; i < n; ++i) {
      const std::int64_t base = idx - p[i] * pw[i];
      for (int d = 0; d < size; ++d) {
        if (d == p[i]) continue;
        const int fdev = table.out[base + d * pw[i]];
        if (fdev == t) continue;
        if (!itv.at(p[i], fdev).test(t)) {
          rep.verdict = false;
          Witness w;
          w.profile = p;
          w.agent = i;
          w.deviation = d;
          w.elem_a = t;
          w.elem_b = fdev;
          w.note = "truthful outcome not between the report and the deviation outcome";
          rep.witness = w;
          return rep;
        }
      }
    }
  }
  rep.verdict = true;
  return rep;
}

CheckReport is_strategy_proof(const MedianContext& ctx, const RuleTable& table) {
  check_table(ctx, table);
  CheckReport rep;
  rep.predicate = "strategy-proof";
  IntervalTable itv(ctx);
  const int n = table.n_agents, size = table.size;
  auto pw = powers_of(size, n);
  std::vector<int> p(n);
  rep.verdict = true;
  for (std::int64_t idx = 0; idx < table.num_profiles() && rep.verdict; ++idx) {
    table.decode(idx, p);
    const int t = table.out[idx];
    for (int i = 0; i < n && rep.verdict; ++i) {
      const int x = p[i];
      if (t == x) continue;  // the truthful outcome is already the agent's peak
      const std::int64_t base = idx - x * pw[i];
      for (int d = 0; d < size && rep.verdict; ++d) {
        if (d == x) continue;
        const int fdev = table.out[base + d * pw[i]];
        if (fdev == t) continue;
        // Profitable iff some canonical preference with peak x ranks the
        // deviation outcome strictly above the truthful one.
        int found_w = -1;
        if (fdev == x) {
          found_w = x;  // classes via I(x,x): fdev at the top, t strictly below
        } else {
          for (int w = 0; w < size; ++w) {
            const Bitset& iv = itv.at(x, w);
            if (iv.test(fdev) && !iv.test(t)) {
              found_w = w;
              break;
            }
          }
        }
        if (found_w >= 0) {
          rep.verdict = false;
          Witness w;
          w.profile = p;
          w.agent = i;
          w.deviation = d;
          w.pref_param = found_w;
          w.elem_a = t;
          w.elem_b = fdev;
          w.note = "profitable deviation under the canonical preference";
          rep.witness = w;
        }
      }
    }
  }

  // The two verdicts are provably equal; disagreement means a bug.
  CheckReport bmu = is_bmu_monotonic(ctx, table);
  if (bmu.verdict != rep.verdict)
    throw InternalInvariantViolation("strategy-proofness and betweenness monotonicity disagree");
  return rep;
}

namespace {

enum class StepKind { MonotoneM, PlainM, Isotone };

CheckReport one_step_scan(const MedianContext& ctx, const RuleTable& table, StepKind kind) {
  check_table(ctx, table);
  CheckReport rep;
  rep.predicate = kind == StepKind::MonotoneM   ? "monotonic-m-independent"
                  : kind == StepKind::PlainM    ? "m-independent"
                                                : "isotonic";
  const int n = table.n_agents, size = table.size;
  auto pw = powers_of(size, n);
  std::vector<int> p(n);

  if (kind == StepKind::Isotone) {
    for (std::int64_t idx = 0; idx < table.num_profiles(); ++idx) {
      table.decode(idx, p);
      const int t = table.out[idx];
      for (int i = 0; i < n; ++i) {
        const std::int64_t base = idx - p[i] * pw[i];
        for (int v = 0; v < size; ++v) {
          if (v == p[i] || !ctx.leq(p[i], v)) continue;
          const int fdev = table.out[base + v * pw[i]];
          if (!ctx.leq(t, fdev)) {
            rep.verdict = false;
            Witness w;
            w.profile = p;
            w.agent = i;
            w.deviation = v;
            w.elem_a = t;
            w.elem_b = fdev;
            rep.witness = w;
            return rep;
          }
        }
      }
    }
    rep.verdict = true;
    return rep;
  }

  std::vector<char> below(size);
  for (std::size_t k = 0; k < ctx.meet_irr.size(); ++k) {
    const int m = ctx.meet_irr[k];
    for (int e = 0; e < size; ++e) below[e] = ctx.leq(e, m);
    for (std::int64_t idx = 0; idx < table.num_profiles(); ++idx) {
      const char ft = below[table.out[idx]];
      if (kind == StepKind::MonotoneM && !ft) continue;  // conclusion vacuous
      table.decode(idx, p);
      for (int i = 0; i < n; ++i) {
        const std::int64_t base = idx - p[i] * pw[i];
        for (int v = 0; v < size; ++v) {
          if (v == p[i]) continue;
          if (kind == StepKind::MonotoneM) {
            if (below[p[i]] && !below[v]) continue;  // not an upgrade step
          } else {
            if (below[p[i]] != below[v]) continue;  // membership must be unchanged
          }
          const char fd = below[table.out[base + v * pw[i]]];
          const bool bad = kind == StepKind::MonotoneM ? (ft && !fd) : (ft != fd);
          if (bad) {
            rep.verdict = false;
            Witness w;
            w.profile = p;
            w.agent = i;
            w.deviation = v;
            w.m_index = static_cast<int>(k);
            rep.witness = w;
            return rep;
          }
        }
      }
    }
  }
  rep.verdict = true;
  return rep;
}

CheckReport full_pair_scan(const MedianContext& ctx, const RuleTable& table, StepKind kind) {
  check_table(ctx, table);
  CheckReport rep;
  rep.predicate = kind == StepKind::MonotoneM   ? "monotonic-m-independent"
                  : kind == StepKind::PlainM    ? "m-independent"
                                                : "isotonic";
  rep.info = "full-pair scan";
  if (table.num_profiles() > 1000)
    throw SizeLimit("full two-profile scan over " + std::to_string(table.num_profiles()) +
                    " profiles");
  const int n = table.n_agents, size = table.size;
  std::vector<int> p(n), q(n);
  std::vector<char> below(size);

  auto scan_pairs = [&](auto&& violates) -> bool {
    for (std::int64_t a = 0; a < table.num_profiles(); ++a) {
      table.decode(a, p);
      for (std::int64_t b = 0; b < table.num_profiles(); ++b) {
        table.decode(b, q);
        if (violates(a, b)) {
          Witness w;
          w.profile = p;
          w.profile2 = q;
          rep.witness = w;
          return true;
        }
      }
    }
    return false;
  };

  if (kind == StepKind::Isotone) {
    bool bad = scan_pairs([&](std::int64_t a, std::int64_t b) {
      for (int i = 0; i < n; ++i)
        if (!ctx.leq(p[i], q[i])) return false;
      return !ctx.leq(table.out[a], table.out[b]);
    });
    rep.verdict = !bad;
    return rep;
  }

  for (std::size_t k = 0; k < ctx.meet_irr.size(); ++k) {
    const int m = ctx.meet_irr[k];
    for (int e = 0; e < size; ++e) below[e] = ctx.leq(e, m);
    bool bad = scan_pairs([&](std::int64_t a, std::int64_t b) {
      bool sub = true, eq = true;
      for (int i = 0; i < n; ++i) {
        if (below[p[i]] && !below[q[i]]) sub = false;
        if (below[p[i]] != below[q[i]]) eq = false;
      }
      if (kind == StepKind::MonotoneM)
        return sub && below[table.out[a]] && !below[table.out[b]];
      return eq && below[table.out[a]] != below[table.out[b]];
    });
    if (bad) {
      rep.verdict = false;
      rep.witness->m_index = static_cast<int>(k);
      return rep;
    }
  }
  rep.verdict = true;
  return rep;
}

}  // namespace

CheckReport is_monotonic_m_independent(const MedianContext& ctx, const RuleTable& table,
                                       bool full_pairs) {
  CheckReport rep = full_pairs ? full_pair_scan(ctx, table, StepKind::MonotoneM)
                               : one_step_scan(ctx, table, StepKind::MonotoneM);
  // Monotone independence must coincide with independence plus isotony.
  CheckReport mi = one_step_scan(ctx, table, StepKind::PlainM);
  CheckReport iso = one_step_scan(ctx, table, StepKind::Isotone);
  if ((mi.verdict && iso.verdict) != rep.verdict)
    throw InternalInvariantViolation(
        "monotone independence disagrees with independence plus isotony");
  return rep;
}

CheckReport is_m_independent(const MedianContext& ctx, const RuleTable& table, bool full_pairs) {
  return full_pairs ? full_pair_scan(ctx, table, StepKind::PlainM)
                    : one_step_scan(ctx, table, StepKind::PlainM);
}

CheckReport is_isotonic(const MedianContext& ctx, const RuleTable& table, bool full_pairs) {
  return full_pairs ? full_pair_scan(ctx, table, StepKind::Isotone)
                    : one_step_scan(ctx, table, StepKind::Isotone);
}

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::Inclusive: return "inclusive";
    case Axiom::Anonymous: return "anonymous";
    case Axiom::Idempotent: return "idempotent";
    case Axiom::Sovereign: return "sovereign";
    case Axiom::NeutralGroundset: return "neutral-groundset";
    case Axiom::BiIdempotent: return "bi-idempotent";
    case Axiom::BasicPareto: return "basic-pareto";
    case Axiom::WeakCondorcet: return "weak-condorcet";
    case Axiom::MonotonicIia: return "monotonic-iia";
    case Axiom::Iia: return "iia";
  }
  return "?";
}

Axiom axiom_from_string(const std::string& s) {
  for (Axiom a : {Axiom::Inclusive, Axiom::Anonymous, Axiom::Idempotent, Axiom::Sovereign,
                  Axiom::NeutralGroundset, Axiom::BiIdempotent, Axiom::BasicPareto,
                  Axiom::WeakCondorcet, Axiom::MonotonicIia, Axiom::Iia})
    if (to_string(a) == s) return a;
  throw BadInput("unknown axiom '" + s + "'");
}

namespace {

const RelationSpace& need_space(const RuleEnv& env, const char* what) {
  if (!env.space) throw WrongFlavor(std::string(what) + " needs a relation space");
  return *env.space;
}

std::vector<std::vector<int>> agent_permutations(int n) {
  if (n > 8) throw SizeLimit("anonymity scan over more than 8 agents");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Element permutations induced by relabeling the ground set.
std::vector<std::vector<int>> ground_permutation_actions(const RelationSpace& sp) {
  const int m = sp.ground.m;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    std::vector<int> act(sp.size());
    for (int e = 0; e < sp.size(); ++e) {
      BinRel img{m, 0};
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          if (sp.elems[e].contains(i, j)) img.add(perm[i], perm[j]);
      act[e] = sp.index_of(img);
    }
    out.push_back(std::move(act));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

CheckReport check_axiom(const RuleEnv& env, const RuleTable& table, Axiom which) {
  const MedianContext& ctx = *env.ctx;
  check_table(ctx, table);
  CheckReport rep;
  rep.predicate = to_string(which);
  rep.verdict = true;
  const int n = table.n_agents, size = table.size;
  auto pw = powers_of(size, n);
  std::vector<int> p(n), q(n);

  switch (which) {
    case Axiom::Inclusive: {
      for (int i = 0; i < n && rep.verdict; ++i) {
        bool pivotal = false;
        for (std::int64_t idx = 0; idx < table.num_profiles() && !pivotal; ++idx) {
          table.decode(idx, p);
          const std::int64_t base = idx - p[i] * pw[i];
          for (int v = 0; v < size; ++v)
            if (table.out[base + v * pw[i]] != table.out[idx]) {
              pivotal = true;
              break;
            }
        }
        if (!pivotal) {
          rep.verdict = false;
          Witness w;
          w.agent = i;
          w.note = "agent is never pivotal";
          rep.witness = w;
        }
      }
      break;
    }
    case Axiom::Anonymous: {
      auto perms = agent_permutations(n);
      for (std::int64_t idx = 0; idx < table.num_profiles() && rep.verdict; ++idx) {
        table.decode(idx, p);
        for (const auto& perm : perms) {
          for (int i = 0; i < n; ++i) q[i] = p[perm[i]];
          if (table.out[table.index(q)] != table.out[idx]) {
            rep.verdict = false;
            Witness w;
            w.profile = p;
            w.profile2 = q;
            w.note = "outcome changes under agent relabeling";
            rep.witness = w;
            break;
          }
        }
      }
      break;
    }
    case Axiom::Idempotent: {
      for (int x = 0; x < size; ++x) {
        std::fill(p.begin(), p.end(), x);
        if (table.out[table.index(p)] != x) {
          rep.verdict = false;
          Witness w;
          w.elem_a = x;
          w.note = "unanimous profile not returned";
          rep.witness = w;
          break;
        }
      }
      break;
    }
    case Axiom::Sovereign: {
      std::vector<char> hit(size, 0);
      for (std::int64_t idx = 0; idx < table.num_profiles(); ++idx) hit[table.out[idx]] = 1;
      for (int x = 0; x < size; ++x)
        if (!hit[x]) {
          rep.verdict = false;
          Witness w;
          w.elem_a = x;
          w.note = "element never chosen";
          rep.witness = w;
          break;
        }
      break;
    }
    case Axiom::NeutralGroundset: {
      const RelationSpace& sp = need_space(env, "ground-set neutrality");
      auto actions = ground_permutation_actions(sp);
      for (std::int64_t idx = 0; idx < table.num_profiles() && rep.verdict; ++idx) {
        table.decode(idx, p);
        for (const auto& act : actions) {
          for (int i = 0; i < n; ++i) q[i] = act[p[i]];
          if (table.out[table.index(q)] != act[table.out[idx]]) {
            rep.verdict = false;
            Witness w;
            w.profile = p;
            w.profile2 = q;
            w.note = "outcome does not commute with relabeling the alternatives";
            rep.witness = w;
            break;
          }
        }
      }
      break;
    }
    case Axiom::BiIdempotent: {
      for (int y = 0; y < size && rep.verdict; ++y)
        for (int z = y; z < size && rep.verdict; ++z)
          for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
            for (int i = 0; i < n; ++i) p[i] = ((mask >> i) & 1u) ? z : y;
            int f = table.out[table.index(p)];
            if (f != y && f != z) {
              rep.verdict = false;
              Witness w;
              w.profile = p;
              w.elem_a = y;
              w.elem_b = z;
              w.note = "two-valued profile mapped outside the pair";
              rep.witness = w;
              break;
            }
          }
      break;
    }
    case Axiom::BasicPareto: {
      const RelationSpace& sp = need_space(env, "basic Pareto");
      const int m = sp.ground.m;
      for (std::int64_t idx = 0; idx < table.num_profiles() && rep.verdict; ++idx) {
        table.decode(idx, p);
        const BinRel& f = sp.elems[table.out[idx]];
        for (int a = 0; a < m && rep.verdict; ++a)
          for (int b = 0; b < m; ++b) {
            if (a == b) continue;
            bool all = true;
            for (int i = 0; i < n; ++i)
              if (!sp.elems[p[i]].contains(a, b)) {
                all = false;
                break;
              }
            if (all && !f.contains(a, b)) {
              rep.verdict = false;
              Witness w;
              w.profile = p;
              w.elem_a = a;
              w.elem_b = b;
              w.note = "unanimous pair lost in the outcome";
              rep.witness = w;
              break;
            }
          }
      }
      break;
    }
    case Axiom::WeakCondorcet: {
      const RelationSpace& sp = need_space(env, "weak Condorcet");
      std::vector<BinRel> rels(n);
      for (std::int64_t idx = 0; idx < table.num_profiles() && rep.verdict; ++idx) {
        table.decode(idx, p);
        for (int i = 0; i < n; ++i) rels[i] = sp.elems[p[i]];
        auto cw = condorcet_winner(sp.ground, rels);
        if (!cw) continue;
        auto tops = top_set(sp.elems[table.out[idx]]);
        if (std::find(tops.begin(), tops.end(), *cw) == tops.end()) {
          rep.verdict = false;
          Witness w;
          w.profile = p;
          w.elem_a = *cw;
          w.note = "Condorcet winner not among the outcome's maxima";
          rep.witness = w;
        }
      }
      break;
    }
    case Axiom::MonotonicIia:
    case Axiom::Iia: {
      const RelationSpace& sp = need_space(env, "independence");
      const int m = sp.ground.m;
      const bool monotone = which == Axiom::MonotonicIia;
      // Single-agent steps; the two-profile forms follow by chaining.
      for (std::int64_t idx = 0; idx < table.num_profiles() && rep.verdict; ++idx) {
        table.decode(idx, p);
        const BinRel& f = sp.elems[table.out[idx]];
        for (int i = 0; i < n && rep.verdict; ++i) {
          const std::int64_t base = idx - p[i] * pw[i];
          for (int v = 0; v < size && rep.verdict; ++v) {
            if (v == p[i]) continue;
            const BinRel& f2 = sp.elems[table.out[base + v * pw[i]]];
            for (int a = 0; a < m && rep.verdict; ++a)
              for (int b = 0; b < m; ++b) {
                bool ha = sp.elems[p[i]].contains(a, b);
                bool hb = sp.elems[v].contains(a, b);
                bool hyp = monotone ? (!ha || hb) : (ha == hb);
                if (!hyp) continue;
                bool bad = monotone ? (f.contains(a, b) && !f2.contains(a, b))
                                    : (f.contains(a, b) != f2.contains(a, b));
                if (bad) {
                  rep.verdict = false;
                  Witness w;
                  w.profile = p;
                  w.profile2 = p;
                  w.profile2[i] = v;
                  w.agent = i;
                  w.deviation = v;
                  w.elem_a = a;
                  w.elem_b = b;
                  w.note = "social stance on the pair not independent";
                  rep.witness = w;
                  break;
                }
              }
          }
        }
      }
      break;
    }
  }
  return rep;
}

std::optional<std::pair<int, int>> iia_violation(const RelationSpace& space,
                                                 const RuleTable& table,
                                                 std::span<const int> p1,
                                                 std::span<const int> p2) {
  const int m = space.ground.m;
  const BinRel& f1 = space.elems[table.eval(p1)];
  const BinRel& f2 = space.elems[table.eval(p2)];
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      bool same = true;
      for (std::size_t i = 0; i < p1.size(); ++i)
        if (space.elems[p1[i]].contains(a, b) != space.elems[p2[i]].contains(a, b)) {
          same = false;
          break;
        }
      if (!same) continue;
      if (f1.contains(a, b) != f2.contains(a, b)) return std::make_pair(a, b);
    }
  return std::nullopt;
}

bool recheck_witness(const RuleEnv& env, const RuleTable& table, const CheckReport& report) {
  if (report.verdict || !report.witness) return false;
  const MedianContext& ctx = *env.ctx;
  const Witness& w = *report.witness;
  const std::string& p = report.predicate;

  auto deviated = [&](const std::vector<int>& profile) {
    std::vector<int> d = profile;
    d[w.agent] = w.deviation;
    return d;
  };

  if (p == "strategy-proof") {
    OutcomePreference pref = canonical_lu_preorder(ctx, w.profile[w.agent], w.pref_param);
    int t = table.eval(w.profile);
    int fdev = table.eval(deviated(w.profile));
    return pref.strict(fdev, t);
  }
  if (p == "bmu-monotonic") {
    int t = table.eval(w.profile);
    int fdev = table.eval(deviated(w.profile));
    auto itv = interval(ctx, w.profile[w.agent], fdev);
    return std::find(itv.begin(), itv.end(), t) == itv.end();
  }
  if (p == "monotonic-m-independent" || p == "m-independent") {
    int m = ctx.meet_irr[w.m_index];
    std::vector<int> p2 = w.profile2.empty() ? deviated(w.profile) : w.profile2;
    bool sub = true, eq = true;
    for (std::size_t i = 0; i < w.profile.size(); ++i) {
      if (ctx.leq(w.profile[i], m) && !ctx.leq(p2[i], m)) sub = false;
      if (ctx.leq(w.profile[i], m) != ctx.leq(p2[i], m)) eq = false;
    }
    bool fa = ctx.leq(table.eval(w.profile), m);
    bool fb = ctx.leq(table.eval(p2), m);
    return p == "monotonic-m-independent" ? (sub && fa && !fb) : (eq && fa != fb);
  }
  if (p == "isotonic") {
    std::vector<int> p2 = w.profile2.empty() ? deviated(w.profile) : w.profile2;
    for (std::size_t i = 0; i < w.profile.size(); ++i)
      if (!ctx.leq(w.profile[i], p2[i])) return false;
    return !ctx.leq(table.eval(w.profile), table.eval(p2));
  }
  if (p == "anonymous")
    return table.eval(w.profile) != table.eval(w.profile2);
  if (p == "idempotent") {
    std::vector<int> u(table.n_agents, w.elem_a);
    return table.eval(u) != w.elem_a;
  }
  if (p == "bi-idempotent") {
    int f = table.eval(w.profile);
    for (int x : w.profile)
      if (x != w.elem_a && x != w.elem_b) return false;
    return f != w.elem_a && f != w.elem_b;
  }
  if (p == "basic-pareto") {
    const RelationSpace& sp = *env.space;
    for (int x : w.profile)
      if (!sp.elems[x].contains(w.elem_a, w.elem_b)) return false;
    return !sp.elems[table.eval(w.profile)].contains(w.elem_a, w.elem_b);
  }
  if (p == "weak-condorcet") {
    const RelationSpace& sp = *env.space;
    std::vector<BinRel> rels;
    for (int x : w.profile) rels.push_back(sp.elems[x]);
    auto cw = condorcet_winner(sp.ground, rels);
    if (!cw) return false;
    auto tops = top_set(sp.elems[table.eval(w.profile)]);
    return std::find(tops.begin(), tops.end(), *cw) == tops.end();
  }
  if (p == "iia" || p == "monotonic-iia") {
    const RelationSpace& sp = *env.space;
    const BinRel& f1 = sp.elems[table.eval(w.profile)];
    const BinRel& f2 = sp.elems[table.eval(w.profile2)];
    bool monotone = p == "monotonic-iia";
    for (std::size_t i = 0; i < w.profile.size(); ++i) {
      bool ha = sp.elems[w.profile[i]].contains(w.elem_a, w.elem_b);
      bool hb = sp.elems[w.profile2[i]].contains(w.elem_a, w.elem_b);
      if (monotone ? (ha && !hb) : (ha != hb)) return false;
    }
    return monotone ? (f1.contains(w.elem_a, w.elem_b) && !f2.contains(w.elem_a, w.elem_b))
                    : (f1.contains(w.elem_a, w.elem_b) != f2.contains(w.elem_a, w.elem_b));
  }
  // Absence-style witnesses (inclusive, sovereign, neutrality): re-run the scan.
  try {
    Axiom a = axiom_from_string(p);
    return !check_axiom(env, table, a).verdict;
  } catch (const BadInput&) {
    return false;
  }
}

std::vector<NamedRule> standard_corpus(const RuleEnv& env, int n_agents, std::uint64_t seed,
                                       int n_random) {
  const MedianContext& ctx = *env.ctx;
  const int size = ctx.n();
  std::vector<NamedRule> out;
  auto add = [&](const std::string& name, const RuleSpec& spec) {
    out.push_back(NamedRule{name, tabulate(env, spec, n_agents)});
  };

  add("comajority", RuleSpec{CoMajorityRule{}});
  for (int i = 0; i < std::min(n_agents, 3); ++i)
    add("dictator-" + std::to_string(i), RuleSpec{DictatorRule{i}});
  for (int e : {0, size / 2, size - 1})
    add("constant-" + std::to_string(e), RuleSpec{ConstantRule{e}});
  const int t = majority_threshold(n_agents);
  add("quota-majority", RuleSpec{QuotaRule{{t}}});
  add("quota-unanimity", RuleSpec{QuotaRule{{n_agents}}});
  std::vector<int> mixed(ctx.meet_irr.size());
  for (std::size_t k = 0; k < mixed.size(); ++k) mixed[k] = k % 2 ? n_agents : t;
  add("quota-mixed", RuleSpec{QuotaRule{mixed}});

  std::int64_t total = 1;
  for (int i = 0; i < n_agents; ++i) total *= size;
  std::mt19937_64 rng(seed);
  for (int r = 0; r < n_random; ++r) {
    RuleTable tab;
    tab.n_agents = n_agents;
    tab.size = size;
    tab.out.resize(total);
    for (auto& o : tab.out) o = static_cast<std::int32_t>(rng() % size);
    char buf[32];
    std::snprintf(buf, sizeof buf, "random-%03d", r);
    out.push_back(NamedRule{buf, std::move(tab)});
  }
  return out;
}

CheckReport verify_theorem1(const MedianContext& ctx, std::span<const NamedRule> corpus) {
  CheckReport rep;
  rep.predicate = "theorem1";
  rep.verdict = true;
  int n_sp = 0;
  for (const NamedRule& r : corpus) {
    bool sp, bmu, mmi;
    try {
      sp = is_strategy_proof(ctx, r.table).verdict;
      bmu = is_bmu_monotonic(ctx, r.table).verdict;
      mmi = is_monotonic_m_independent(ctx, r.table).verdict;
    } catch (const InternalInvariantViolation& e) {
      rep.verdict = false;
      Witness w;
      w.note = r.name + ": " + e.what();
      rep.witness = w;
      return rep;
    }
    if (sp != bmu || bmu != mmi) {
      rep.verdict = false;
      Witness w;
      w.note = r.name + ": predicates disagree (sp=" + std::to_string(sp) +
               " bmu=" + std::to_string(bmu) + " mmi=" + std::to_string(mmi) + ")";
      rep.witness = w;
      return rep;
    }
    if (sp) ++n_sp;
  }
  rep.info = std::to_string(corpus.size()) + " rules, " + std::to_string(n_sp) +
             " strategy-proof, three-way agreement on all";
  return rep;
}

CheckReport verify_corollary1(const MedianContext& ctx, std::span<const NamedRule> corpus) {
  CheckReport rep;
  rep.predicate = "corollary1";
  rep.verdict = true;
  int round_tripped = 0;
  std::vector<int> p;
  for (const NamedRule& r : corpus) {
    if (!is_strategy_proof(ctx, r.table).verdict) continue;
    FilterFamily fam = extract_filters(ctx, r.table);
    p.assign(r.table.n_agents, 0);
    for (std::int64_t idx = 0; idx < r.table.num_profiles(); ++idx) {
      r.table.decode(idx, p);
      if (sponsorship_eval(ctx, fam, p) != r.table.out[idx]) {
        rep.verdict = false;
        Witness w;
        w.profile = p;
        w.note = r.name + ": sponsorship form does not reproduce the rule";
        rep.witness = w;
        return rep;
      }
    }
    ++round_tripped;
  }
  rep.info = std::to_string(round_tripped) + " strategy-proof rules reproduced exactly";
  return rep;
}

CheckReport verify_prop1(const RuleEnv& env, int n_agents, std::uint64_t seed) {
  const MedianContext& ctx = *env.ctx;
  CheckReport rep;
  rep.predicate = "prop1";
  rep.verdict = true;
  if (n_agents % 2 == 0) throw BadInput("the co-majority characterization needs an odd n");

  RuleTable comaj = tabulate(env, RuleSpec{CoMajorityRule{}}, n_agents);

  auto corpus = standard_corpus(env, n_agents, seed, 60);
  // A couple of extra strategy-proof sponsorship rules beyond the quotas.
  {
    FilterFamily collegial;
    for (std::size_t k = 0; k < ctx.meet_irr.size(); ++k)
      collegial.per_m.push_back(OrderFilter::from_basis(n_agents, {Coalition{0b11}}));
    RuleSpec spec{SponsorshipRule{collegial}};
    corpus.push_back(NamedRule{"collegial-01", tabulate(env, spec, n_agents)});
  }

  auto passes_all = [&](const RuleTable& t, std::string& which) {
    if (!check_axiom(env, t, Axiom::Anonymous).verdict) {
      which = "anonymous";
      return false;
    }
    if (!check_axiom(env, t, Axiom::BiIdempotent).verdict) {
      which = "bi-idempotent";
      return false;
    }
    if (!is_strategy_proof(ctx, t).verdict) {
      which = "strategy-proof";
      return false;
    }
    return true;
  };

  std::string which;
  if (!passes_all(comaj, which)) {
    rep.verdict = false;
    Witness w;
    w.note = "co-majority itself fails " + which;
    rep.witness = w;
    return rep;
  }

  int failing = 0;
  for (const NamedRule& r : corpus) {
    std::string axiom;
    bool all = passes_all(r.table, axiom);
    bool equal = r.table == comaj;
    if (all != equal) {
      rep.verdict = false;
      Witness w;
      w.note = r.name + (all ? ": passes all three but differs from co-majority"
                             : ": equals co-majority but fails " + axiom);
      rep.witness = w;
      return rep;
    }
    if (!all) ++failing;
  }
  rep.info = std::to_string(corpus.size()) + " corpus rules; " + std::to_string(failing) +
             " fail at least one axiom; the rest coincide with co-majority";
  return rep;
}

namespace {

template <class F>
void for_profiles(const MedianContext& ctx, int n_agents, std::uint64_t seed, int sample,
                  F&& f) {
  const int size = ctx.n();
  std::int64_t total = 1;
  bool exhaustive = true;
  for (int i = 0; i < n_agents; ++i) {
    total *= size;
    if (total > sample) {
      exhaustive = false;
      break;
    }
  }
  std::vector<int> p(n_agents);
  if (exhaustive) {
    std::vector<std::int64_t> pw = powers_of(size, n_agents);
    for (std::int64_t idx = 0; idx < total; ++idx) {
      for (int i = 0; i < n_agents; ++i) p[i] = static_cast<int>((idx / pw[i]) % size);
      f(p);
    }
  } else {
    std::mt19937_64 rng(seed);
    for (int s = 0; s < sample; ++s) {
      for (int i = 0; i < n_agents; ++i) p[i] = static_cast<int>(rng() % size);
      f(p);
    }
  }
}

}  // namespace

CheckReport verify_prop3(const RelationSpace& space, int n_agents, std::uint64_t seed,
                         int sample) {
  if (space.flavor != RelFlavor::TotalPreorder)
    throw WrongFlavor("this verification runs on the total-preorder space");
  CheckReport rep;
  rep.predicate = "prop3";
  const MedianContext& ctx = space.ctx;
  TieBreak tb1 = TieBreak::identity(ctx.n());
  TieBreak tb2 = TieBreak::reversed(ctx.n());

  if (n_agents % 2 == 1) {
    rep.verdict = true;
    long long checked = 0;
    for_profiles(ctx, n_agents, seed, sample, [&](const std::vector<int>& p) {
      if (!rep.verdict) return;
      ++checked;
      auto mins = remoteness_minimizers(ctx, p);
      int cm = co_majority(ctx, p);
      bool ok = mins.size() == 1 && mins[0] == cm && generalized_ck(ctx, p, tb1) == cm &&
                generalized_ck(ctx, p, tb2) == cm;
      if (!ok) {
        rep.verdict = false;
        Witness w;
        w.profile = p;
        w.elem_a = cm;
        w.note = mins.size() == 1 ? "minimizer differs from co-majority"
                                  : "remoteness minimizer not unique";
        rep.witness = w;
      }
    });
    rep.info = std::to_string(checked) + " profiles: unique minimizer = co-majority, " +
               "tie-break independent";
  } else {
    // Even-size profiles are expected to produce ties; finding one is the
    // expected-failure mode, not an error.
    bool tie_found = false;
    std::vector<int> tie_profile;
    for_profiles(ctx, n_agents, seed, sample, [&](const std::vector<int>& p) {
      if (tie_found) return;
      if (remoteness_minimizers(ctx, p).size() > 1) {
        tie_found = true;
        tie_profile = p;
      }
    });
    rep.verdict = tie_found;
    rep.info = tie_found ? "tie found, as expected for an even number of agents"
                         : "no tie found (unexpected)";
    if (tie_found) {
      Witness w;
      w.profile = tie_profile;
      w.note = "profile with several remoteness minimizers";
      rep.witness = w;
    }
  }
  return rep;
}

CheckReport verify_prop5(const RelationSpace& space, int n_agents, std::uint64_t seed,
                         int sample) {
  if (space.flavor != RelFlavor::ReflexiveRel && space.flavor != RelFlavor::IrreflexiveRel)
    throw WrongFlavor("this verification runs on the relation lattices");
  if (n_agents % 2 == 0) throw BadInput("odd number of agents required");
  CheckReport rep;
  rep.predicate = "prop5";
  rep.verdict = true;
  const MedianContext& ctx = space.ctx;
  RuleEnv env = RuleEnv::of(space);
  RuleSpec fmaj{MajorityLatticeRule{}};
  TieBreak tb1 = TieBreak::identity(ctx.n());
  TieBreak tb2 = TieBreak::reversed(ctx.n());
  long long checked = 0;
  for_profiles(ctx, n_agents, seed, sample, [&](const std::vector<int>& p) {
    if (!rep.verdict) return;
    ++checked;
    int a = eval_rule(env, fmaj, p);
    int b = co_majority(ctx, p);
    int c = generalized_ck(ctx, p, tb1);
    int d = generalized_ck(ctx, p, tb2);
    if (a != b || b != c || c != d) {
      rep.verdict = false;
      Witness w;
      w.profile = p;
      w.note = "majority, co-majority and tie-broken minimizers differ";
      rep.witness = w;
    }
  });
  rep.info = std::to_string(checked) + " profiles: majority = co-majority = remoteness median";
  return rep;
}

std::vector<CheckReport> verify_claims(const RelationSpace& space) {
  const MedianContext& ctx = space.ctx;
  const int n = ctx.n();
  std::vector<CheckReport> out;
  const std::string where = " on " + to_string(space.flavor) + " m=" +
                            std::to_string(space.ground.m);

  {
    CheckReport r;
    r.predicate = "graded";
    r.verdict = ctx.report.is_graded;
    r.info = "rank function exists" + where;
    out.push_back(r);
    if (!r.verdict) return out;
  }
  {
    CheckReport r;
    r.predicate = "rank-valuation";
    r.verdict = true;
    for (int x = 0; x < n && r.verdict; ++x)
      for (int y = 0; y < n; ++y) {
        int m = ctx.meet(x, y);
        if (m < 0) continue;
        if (ctx.rank(x) + ctx.rank(y) != ctx.rank(ctx.join(x, y)) + ctx.rank(m)) {
          r.verdict = false;
          Witness w;
          w.elem_a = x;
          w.elem_b = y;
          r.witness = w;
          break;
        }
      }
    r.info = "rank additive over join/meet where meets exist" + where;
    out.push_back(r);
  }
  {
    CheckReport r;
    r.predicate = "rank-metric";
    r.verdict = true;
    for (int x = 0; x < n && r.verdict; ++x)
      for (int y = 0; y < n; ++y)
        if (dist_rank(ctx, x, y) != ctx.dist(x, y)) {
          r.verdict = false;
          Witness w;
          w.elem_a = x;
          w.elem_b = y;
          r.witness = w;
          break;
        }
    r.info = "rank metric equals covering-graph distance" + where;
    out.push_back(r);
  }
  {
    CheckReport r;
    r.predicate = "betweenness-nesting";
    r.verdict = true;
    for (int x = 0; x < n && r.verdict; ++x)
      for (int z = 0; z < n && r.verdict; ++z)
        for (int y = 0; y < n; ++y) {
          bool bi = betweenness(ctx, BetweennessKind::Interval, x, z, y);
          bool bm = betweenness(ctx, BetweennessKind::Median, x, z, y);
          bool bd = betweenness(ctx, BetweennessKind::Metric, x, z, y);
          if ((bi && !bm) || bm != bd) {
            r.verdict = false;
            Witness w;
            w.profile = {x, z, y};
            r.witness = w;
            break;
          }
        }
    r.info = "interval betweenness inside median betweenness = metric betweenness" + where;
    out.push_back(r);
  }
  if (ctx.report.is_distributive_lattice) {
    CheckReport r;
    r.predicate = "betweenness-equality";
    r.verdict = true;
    for (int x = 0; x < n && r.verdict; ++x)
      for (int z = 0; z < n && r.verdict; ++z)
        for (int y = 0; y < n; ++y) {
          if (betweenness(ctx, BetweennessKind::Interval, x, z, y) !=
              betweenness(ctx, BetweennessKind::Median, x, z, y)) {
            r.verdict = false;
            Witness w;
            w.profile = {x, z, y};
            r.witness = w;
            break;
          }
        }
    r.info = "all three betweenness relations coincide" + where;
    out.push_back(r);
  }
  {
    CheckReport r;
    r.predicate = "kemeny-distance";
    r.verdict = true;
    for (int x = 0; x < n && r.verdict; ++x)
      for (int y = 0; y < n; ++y)
        if (kemeny_distance(space.elems[x], space.elems[y]) != ctx.dist(x, y)) {
          r.verdict = false;
          Witness w;
          w.elem_a = x;
          w.elem_b = y;
          w.note = "symmetric difference " +
                   std::to_string(kemeny_distance(space.elems[x], space.elems[y])) +
                   " vs covering-graph distance " + std::to_string(ctx.dist(x, y));
          r.witness = w;
          break;
        }
    r.info = "symmetric-difference distance vs covering-graph distance" + where;
    out.push_back(r);
  }
  return out;
}

}  // namespace medlat
