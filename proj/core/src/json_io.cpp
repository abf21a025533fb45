#include "medlat/json_io.hpp"

namespace medlat {

json poset_to_json(const Poset& p) {
  json leq = json::array();
  for (int x = 0; x < p.n; ++x) {
    json row = json::array();
    for (int y = 0; y < p.n; ++y) row.push_back(p.leq(x, y) ? 1 : 0);
    leq.push_back(std::move(row));
  }
  json labels = json::array();
  for (int x = 0; x < p.n; ++x) labels.push_back(p.label(x));
  return json{{"n", p.n}, {"labels", labels}, {"leq", leq}};
}

Poset poset_from_json(const json& j, BuildOptions opts) {
  if (!j.contains("n") || !j.contains("leq")) throw BadInput("poset JSON needs n and leq");
  int n = j.at("n").get<int>();
  std::vector<Bitset> rows(n, Bitset(n));
  const json& leq = j.at("leq");
  if (static_cast<int>(leq.size()) != n) throw BadInput("leq matrix is not n x n");
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(leq[x].size()) != n) throw BadInput("leq matrix is not n x n");
    for (int y = 0; y < n; ++y)
      if (leq[x][y].get<int>()) rows[x].set(y);
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return build_poset(n, rows, std::move(labels), opts);
}

json structure_report_to_json(const StructureReport& r) {
  return json{{"is_poset", r.is_poset},
              {"is_join_semilattice", r.is_join_semilattice},
              {"is_upper_distributive", r.is_upper_distributive},
              {"is_meet_helly", r.is_meet_helly},
              {"is_median", r.is_median},
              {"is_graded", r.is_graded},
              {"is_distributive_lattice", r.is_distributive_lattice},
              {"is_coatomistic", r.is_coatomistic},
              {"is_atomistic", r.is_atomistic}};
}

json rel_to_json(const GroundSet& g, const BinRel& r) {
  json pairs = json::array();
  for (int i = 0; i < r.m; ++i)
    for (int k = 0; k < r.m; ++k)
      if (r.contains(i, k)) pairs.push_back(json::array({i, k}));
  return json{{"ground", g.names}, {"pairs", pairs}};
}

BinRel rel_from_json(const GroundSet& g, const json& j) {
  if (!j.contains("pairs")) throw BadInput("relation JSON needs pairs");
  if (j.contains("ground")) {
    auto names = j.at("ground").get<std::vector<std::string>>();
    if (names != g.names) throw BadInput("relation ground set does not match the space");
  }
  BinRel r{g.m, 0};
  for (const json& p : j.at("pairs")) {
    int a = p.at(0).get<int>(), b = p.at(1).get<int>();
    if (a < 0 || a >= g.m || b < 0 || b >= g.m) throw BadInput("pair index out of range");
    r.add(a, b);
  }
  return r;
}

json space_to_json(const RelationSpace& sp) {
  return json{{"flavor", to_string(sp.flavor)}, {"ground", sp.ground.names}};
}

GroundSet ground_from_json(const json& j) {
  return GroundSet::of(j.get<std::vector<std::string>>());
}

json profile_to_json(const RelationSpace& sp, std::span<const int> profile) {
  json votes = json::array();
  for (int x : profile) votes.push_back(x);
  return json{{"space", space_to_json(sp)}, {"votes", votes}};
}

std::vector<int> profile_from_json(const RelationSpace& sp, const json& j) {
  const json& votes = j.contains("votes") ? j.at("votes") : j;
  if (!votes.is_array()) throw BadInput("profile votes must be an array");
  if (j.contains("space")) {
    const json& s = j.at("space");
    if (s.contains("flavor") && flavor_from_string(s.at("flavor").get<std::string>()) != sp.flavor)
      throw BadInput("profile space flavor does not match");
    if (s.contains("ground") &&
        s.at("ground").get<std::vector<std::string>>() != sp.ground.names)
      throw BadInput("profile ground set does not match");
  }
  std::vector<int> out;
  for (const json& v : votes) {
    if (v.is_number_integer()) {
      int idx = v.get<int>();
      if (idx < 0 || idx >= sp.size()) throw BadInput("vote index out of range");
      out.push_back(idx);
    } else if (v.is_object()) {
      out.push_back(sp.index_of(rel_from_json(sp.ground, v)));
    } else {
      throw BadInput("votes are element indices or relation objects");
    }
  }
  return out;
}

json family_to_json(const FilterFamily& fam) {
  json out = json::object();
  for (std::size_t k = 0; k < fam.per_m.size(); ++k) {
    json basis = json::array();
    for (Coalition c : fam.per_m[k].basis) basis.push_back(c);
    out[std::to_string(k)] = std::move(basis);
  }
  return out;
}

FilterFamily family_from_json(const MedianContext& ctx, int n_agents, const json& j) {
  if (n_agents < 1 || n_agents > 31) throw BadInput("filter families support 1..31 agents");
  FilterFamily fam;
  fam.per_m.resize(ctx.meet_irr.size());
  for (std::size_t k = 0; k < fam.per_m.size(); ++k) {
    fam.per_m[k].n = n_agents;
    std::string key = std::to_string(k);
    if (!j.contains(key)) continue;  // missing key = empty filter
    std::vector<Coalition> basis;
    for (const json& b : j.at(key)) {
      Coalition c = b.get<Coalition>();
      if (c >= (Coalition{1} << n_agents)) throw BadInput("coalition mask out of range");
      basis.push_back(c);
    }
    fam.per_m[k] = OrderFilter::from_basis(n_agents, std::move(basis));
  }
  return fam;
}

json family_tags_to_json(const FamilyTags& t) {
  json out{{"quorum_system", t.quorum_system}, {"inclusive", t.inclusive},
           {"collegial", t.collegial},         {"outcome_biased", t.outcome_biased},
           {"weakly_neutral", t.weakly_neutral}, {"quota", t.quota}};
  if (t.quota) out["quota_values"] = t.quota_values;
  return out;
}

json table_to_json(const RuleTable& t) {
  return json{{"n", t.n_agents}, {"size", t.size}, {"outcomes", t.out}};
}

RuleTable table_from_json(const json& j) {
  RuleTable t;
  t.n_agents = j.at("n").get<int>();
  t.size = j.at("size").get<int>();
  t.out = j.at("outcomes").get<std::vector<std::int32_t>>();
  std::int64_t total = 1;
  for (int i = 0; i < t.n_agents; ++i) total *= t.size;
  if (static_cast<std::int64_t>(t.out.size()) != total)
    throw BadInput("table length does not match size^n");
  for (auto o : t.out)
    if (o < 0 || o >= t.size) throw BadInput("table outcome out of range");
  return t;
}

json tiebreak_to_json(const TieBreak& t) { return json(t.order); }

TieBreak tiebreak_from_json(const MedianContext& ctx, const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "default" || s == "identity") return TieBreak::identity(ctx.n());
    if (s == "reverse" || s == "reversed") return TieBreak::reversed(ctx.n());
    throw BadInput("unknown tie-break '" + s + "'");
  }
  auto order = j.get<std::vector<int>>();
  if (static_cast<int>(order.size()) != ctx.n())
    throw BadInput("tie-break permutation has the wrong length");
  return TieBreak::from_order(std::move(order));
}

json rule_to_json(const RuleSpec& r, const RelationSpace* space) {
  struct V {
    const RelationSpace* space;
    json operator()(const SponsorshipRule& s) const {
      return json{{"variant", "sponsorship"}, {"filters", family_to_json(s.family)}};
    }
    json operator()(const CoMajorityRule&) const { return json{{"variant", "comajority"}}; }
    json operator()(const QuotaRule& s) const {
      return json{{"variant", "quota"}, {"q", s.q}};
    }
    json operator()(const GeneralizedCkRule& s) const {
      json out{{"variant", "ck"}};
      if (!s.tiebreak.order.empty()) out["tiebreak"] = tiebreak_to_json(s.tiebreak);
      return out;
    }
    json operator()(const StrictCkRule& s) const {
      json out{{"variant", "ck-strict"}};
      if (!s.tiebreak.order.empty()) out["tiebreak"] = tiebreak_to_json(s.tiebreak);
      return out;
    }
    json lattice(const char* variant, const OrderFilter& f,
                 const std::vector<BinRel>& offsets) const {
      json basis = json::array();
      for (Coalition c : f.basis) basis.push_back(c);
      json offs = json::array();
      for (const BinRel& r : offsets)
        offs.push_back(space ? rel_to_json(space->ground, r)
                             : json{{"bits", r.bits}, {"m", r.m}});
      return json{{"variant", variant}, {"filter", basis}, {"offsets", offs}};
    }
    json operator()(const LatticeFilterRule& s) const {
      return lattice("lattice-filter", s.filter, s.offsets);
    }
    json operator()(const LatticeDualFilterRule& s) const {
      return lattice("lattice-dual-filter", s.filter, s.offsets);
    }
    json operator()(const MajorityLatticeRule&) const { return json{{"variant", "majority"}}; }
    json operator()(const DictatorRule& s) const {
      return json{{"variant", "dictator"}, {"agent", s.agent}};
    }
    json operator()(const ConstantRule& s) const {
      return json{{"variant", "constant"}, {"element", s.element}};
    }
    json operator()(const TabulatedRule& s) const {
      return json{{"variant", "table"}, {"table", table_to_json(*s.table)}};
    }
    json operator()(const RetractRule& s) const {
      return json{{"variant", "retract"}, {"inner", rule_to_json(*s.inner, space)}};
    }
  };
  return std::visit(V{space}, r.v);
}

RuleSpec rule_from_json(const MedianContext& ctx, int n_agents, const json& j,
                        const RelationSpace* space) {
  std::string variant = j.at("variant").get<std::string>();
  if (variant == "comajority") return RuleSpec{CoMajorityRule{}};
  if (variant == "majority") return RuleSpec{MajorityLatticeRule{}};
  if (variant == "dictator") return RuleSpec{DictatorRule{j.at("agent").get<int>()}};
  if (variant == "constant") return RuleSpec{ConstantRule{j.at("element").get<int>()}};
  if (variant == "quota") {
    QuotaRule q;
    if (j.at("q").is_array())
      q.q = j.at("q").get<std::vector<int>>();
    else
      q.q = {j.at("q").get<int>()};
    return RuleSpec{q};
  }
  if (variant == "sponsorship")
    return RuleSpec{SponsorshipRule{family_from_json(ctx, n_agents, j.at("filters"))}};
  if (variant == "ck" || variant == "ck-strict") {
    TieBreak tb;
    if (j.contains("tiebreak")) tb = tiebreak_from_json(ctx, j.at("tiebreak"));
    if (variant == "ck") return RuleSpec{GeneralizedCkRule{tb}};
    return RuleSpec{StrictCkRule{tb}};
  }
  if (variant == "table")
    return RuleSpec{TabulatedRule{std::make_shared<RuleTable>(table_from_json(j.at("table")))}};
  if (variant == "retract")
    return RuleSpec{RetractRule{
        std::make_shared<RuleSpec>(rule_from_json(ctx, n_agents, j.at("inner"), space))}};
  if (variant == "lattice-filter" || variant == "lattice-dual-filter") {
    if (!space) throw BadInput("lattice filter rules need a relation space to parse offsets");
    std::vector<Coalition> basis;
    for (const json& b : j.at("filter")) basis.push_back(b.get<Coalition>());
    OrderFilter f = OrderFilter::from_basis(n_agents, std::move(basis));
    std::vector<BinRel> offsets;
    for (const json& o : j.at("offsets")) offsets.push_back(rel_from_json(space->ground, o));
    if (offsets.size() != f.basis.size())
      throw BadInput("offsets must match the filter basis after antichain reduction");
    if (variant == "lattice-filter") return RuleSpec{LatticeFilterRule{f, offsets}};
    return RuleSpec{LatticeDualFilterRule{f, offsets}};
  }
  throw BadInput("unknown rule variant '" + variant + "'");
}

json witness_to_json(const Witness& w) {
  json out = json::object();
  if (!w.profile.empty()) out["profile"] = w.profile;
  if (!w.profile2.empty()) out["profile2"] = w.profile2;
  if (w.agent >= 0) out["agent"] = w.agent;
  if (w.deviation >= 0) out["deviation"] = w.deviation;
  if (w.pref_param >= 0) out["pref_param"] = w.pref_param;
  if (w.m_index >= 0) out["m_index"] = w.m_index;
  if (w.elem_a >= 0) out["elem_a"] = w.elem_a;
  if (w.elem_b >= 0) out["elem_b"] = w.elem_b;
  if (!w.note.empty()) out["note"] = w.note;
  return out;
}

json report_to_json(const CheckReport& r) {
  json out{{"predicate", r.predicate}, {"verdict", r.verdict}};
  if (!r.info.empty()) out["info"] = r.info;
  out["witness"] = r.witness ? witness_to_json(*r.witness) : json(nullptr);
  return out;
}

}  // namespace medlat
