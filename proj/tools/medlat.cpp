// medlat: construct median semilattices of preference relations, evaluate
// aggregation rules on them, check axioms and run the verification batteries.
//
// Subcommands: space, rule, check, verify, kemeny. All machine output is
// JSON with sorted keys; identical invocations produce identical bytes.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "medlat/json_io.hpp"

using namespace medlat;

namespace {

struct SpaceArgs {
  std::string flavor = "total-preorder";
  std::string ground = "x,y,z";
  std::string space_file;
  bool allow_large = false;
};

struct OutArgs {
  std::string out_path;
  bool json_stdout = false;
};

void add_space_flags(CLI::App* cmd, SpaceArgs& a) {
  cmd->add_option("--flavor", a.flavor,
                  "total-preorder | weak-tournament | strict-tournament | reflexive | "
                  "irreflexive");
  cmd->add_option("--ground", a.ground, "comma-separated alternative names");
  cmd->add_option("--space-file", a.space_file, "JSON {\"flavor\":..., \"ground\":[...]}");
  cmd->add_flag("--allow-large", a.allow_large, "lift the default ground-set size limits");
}

void add_out_flags(CLI::App* cmd, OutArgs& a) {
  cmd->add_option("--out", a.out_path, "write the JSON twin of the output to this file");
  cmd->add_flag("--json", a.json_stdout, "print JSON instead of human-readable text");
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open " + path);
  json j;
  in >> j;
  return j;
}

RelationSpace make_space(const SpaceArgs& a) {
  std::string flavor = a.flavor;
  std::vector<std::string> names = split_csv(a.ground);
  if (!a.space_file.empty()) {
    json j = load_json_file(a.space_file);
    flavor = j.at("flavor").get<std::string>();
    names = j.at("ground").get<std::vector<std::string>>();
  }
  return enumerate_space(flavor_from_string(flavor), GroundSet::of(names),
                         SpaceOptions{a.allow_large});
}

void emit(const OutArgs& a, const std::string& text, const json& twin) {
  if (a.json_stdout)
    std::cout << twin.dump(2) << "\n";
  else
    std::cout << text;
  if (!a.out_path.empty()) {
    std::ofstream out(a.out_path);
    if (!out) throw BadInput("cannot write " + a.out_path);
    out << twin.dump(2) << "\n";
  }
}

std::uint64_t parse_seed(const std::string& s) {
  try {
    return std::stoull(s, nullptr, 0);
  } catch (const std::exception&) {
    throw BadInput("cannot parse seed '" + s + "'");
  }
}

struct ProfileArgs {
  std::string votes;
  std::string profile_file;
  std::string profile_inline;
};

void add_profile_flags(CLI::App* cmd, ProfileArgs& a) {
  cmd->add_option("--votes", a.votes, "comma-separated canonical element indices");
  cmd->add_option("--profile-file", a.profile_file, "profile JSON file");
  cmd->add_option("--profile", a.profile_inline, "inline profile JSON");
}

std::vector<int> make_profile(const RelationSpace& sp, const ProfileArgs& a) {
  if (!a.profile_file.empty()) return profile_from_json(sp, load_json_file(a.profile_file));
  if (!a.profile_inline.empty()) return profile_from_json(sp, json::parse(a.profile_inline));
  if (!a.votes.empty()) {
    std::vector<int> out;
    for (const std::string& v : split_csv(a.votes)) {
      int idx = std::stoi(v);
      if (idx < 0 || idx >= sp.size()) throw BadInput("vote index out of range");
      out.push_back(idx);
    }
    return out;
  }
  throw BadInput("no profile given; use --votes, --profile or --profile-file");
}

TieBreak make_tiebreak(const MedianContext& ctx, const std::string& s) {
  if (s.empty() || s == "default" || s == "identity") return TieBreak::identity(ctx.n());
  if (s == "reverse" || s == "reversed") return TieBreak::reversed(ctx.n());
  std::vector<int> order;
  for (const std::string& v : split_csv(s)) order.push_back(std::stoi(v));
  if (static_cast<int>(order.size()) != ctx.n())
    throw BadInput("tie-break permutation has the wrong length");
  return TieBreak::from_order(std::move(order));
}

// Shorthand: comajority | majority | ck | ck-strict | dictator:K | constant:K
// | quota:Q[,Q2,...] | retract:<inner>
RuleSpec rule_from_shorthand(const RelationSpace& sp, const std::string& s,
                             const std::string& tiebreak) {
  auto colon = s.find(':');
  std::string head = s.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (head == "comajority") return RuleSpec{CoMajorityRule{}};
  if (head == "majority") return RuleSpec{MajorityLatticeRule{}};
  if (head == "ck") return RuleSpec{GeneralizedCkRule{make_tiebreak(sp.ctx, tiebreak)}};
  if (head == "ck-strict") return RuleSpec{StrictCkRule{make_tiebreak(sp.ctx, tiebreak)}};
  if (head == "dictator") return RuleSpec{DictatorRule{std::stoi(arg)}};
  if (head == "constant") return RuleSpec{ConstantRule{std::stoi(arg)}};
  if (head == "quota") {
    QuotaRule q;
    for (const std::string& v : split_csv(arg)) q.q.push_back(std::stoi(v));
    if (q.q.empty()) throw BadInput("quota needs at least one threshold");
    return RuleSpec{q};
  }
  if (head == "retract")
    return RuleSpec{RetractRule{
        std::make_shared<RuleSpec>(rule_from_shorthand(sp, arg, tiebreak))}};
  throw BadInput("unknown rule '" + s + "' (use --rule-file for structured rules)");
}

struct RuleArgs {
  std::string rule = "comajority";
  std::string rule_file;
  std::string tiebreak;
};

void add_rule_flags(CLI::App* cmd, RuleArgs& a) {
  cmd->add_option("--rule", a.rule, "rule shorthand (comajority, ck, dictator:0, quota:2, ...)");
  cmd->add_option("--rule-file", a.rule_file, "rule JSON with a variant discriminator");
  cmd->add_option("--tiebreak", a.tiebreak, "default | reverse | comma permutation");
}

RuleSpec make_rule(const RelationSpace& sp, const RuleArgs& a, int n_agents) {
  if (!a.rule_file.empty())
    return rule_from_json(sp.ctx, n_agents, load_json_file(a.rule_file), &sp);
  return rule_from_shorthand(sp, a.rule, a.tiebreak);
}

std::string report_line(const CheckReport& r) {
  std::string line = std::string(r.verdict ? "[PASS] " : "[FAIL] ") + r.predicate;
  if (!r.info.empty()) line += ": " + r.info;
  if (!r.verdict && r.witness && !r.witness->note.empty())
    line += " (" + r.witness->note + ")";
  return line + "\n";
}

int run_space(const std::string& mode, const SpaceArgs& sa, const OutArgs& oa) {
  RelationSpace sp = make_space(sa);
  const MedianContext& ctx = sp.ctx;
  if (mode == "info") {
    std::ostringstream text;
    text << "space: " << to_string(sp.flavor) << " on {" << sa.ground << "}\n"
         << "elements: " << sp.size() << "\n"
         << "meet-irreducibles: " << ctx.meet_irr.size() << "\n"
         << "coatoms: " << ctx.coatoms.size() << "\n"
         << "top: " << sp.render(ctx.top) << " (index " << ctx.top << ")\n"
         << "median: " << (ctx.report.is_median ? "true" : "false") << "\n"
         << "graded: " << (ctx.report.is_graded ? "true" : "false") << "\n"
         << "distributive-lattice: "
         << (ctx.report.is_distributive_lattice ? "true" : "false") << "\n"
         << "coatomistic: " << (ctx.report.is_coatomistic ? "true" : "false") << "\n"
         << "atomistic: " << (ctx.report.is_atomistic ? "true" : "false") << "\n";
    json twin{{"space", space_to_json(sp)},
              {"elements", sp.size()},
              {"meet_irreducibles", ctx.meet_irr},
              {"join_irreducibles", ctx.join_irr},
              {"coatoms", ctx.coatoms},
              {"top", ctx.top},
              {"report", structure_report_to_json(ctx.report)}};
    emit(oa, text.str(), twin);
    return 0;
  }
  // enumerate
  std::ostringstream text;
  json elems = json::array();
  for (int i = 0; i < sp.size(); ++i) {
    text << i << "\t" << sp.render(i) << "\n";
    json e = rel_to_json(sp.ground, sp.elems[i]);
    e["index"] = i;
    e["label"] = sp.render(i);
    elems.push_back(std::move(e));
  }
  emit(oa, text.str(), json{{"space", space_to_json(sp)}, {"elements", elems}});
  return 0;
}

int run_rule_eval(const SpaceArgs& sa, const RuleArgs& ra, const ProfileArgs& pa,
                  const OutArgs& oa) {
  RelationSpace sp = make_space(sa);
  std::vector<int> profile = make_profile(sp, pa);
  RuleSpec rule = make_rule(sp, ra, static_cast<int>(profile.size()));
  int outcome = eval_rule(RuleEnv::of(sp), rule, profile);
  std::ostringstream text;
  text << sp.render(outcome) << "\n";
  json twin{{"space", space_to_json(sp)},
            {"rule", rule.name()},
            {"profile", profile},
            {"outcome", outcome},
            {"label", sp.render(outcome)}};
  emit(oa, text.str(), twin);
  return 0;
}

int run_rule_table(const SpaceArgs& sa, const RuleArgs& ra, int n_agents, const OutArgs& oa) {
  RelationSpace sp = make_space(sa);
  RuleSpec rule = make_rule(sp, ra, n_agents);
  RuleTable t = tabulate(RuleEnv::of(sp), rule, n_agents);
  std::ostringstream text;
  text << "tabulated " << rule.name() << ": " << t.num_profiles() << " profiles over "
       << t.size << " elements\n";
  json twin = table_to_json(t);
  twin["rule"] = rule.name();
  twin["space"] = space_to_json(sp);
  emit(oa, text.str(), twin);
  return 0;
}

int run_check(const SpaceArgs& sa, const RuleArgs& ra, int n_agents, const std::string& axioms,
              const std::string& expect, const OutArgs& oa) {
  RelationSpace sp = make_space(sa);
  RuleEnv env = RuleEnv::of(sp);
  RuleSpec rule = make_rule(sp, ra, n_agents);
  RuleTable table = tabulate(env, rule, n_agents);

  std::vector<std::string> names;
  if (axioms == "all") {
    for (Axiom a : {Axiom::Inclusive, Axiom::Anonymous, Axiom::Idempotent, Axiom::Sovereign,
                    Axiom::NeutralGroundset, Axiom::BiIdempotent, Axiom::BasicPareto,
                    Axiom::WeakCondorcet, Axiom::MonotonicIia, Axiom::Iia})
      names.push_back(to_string(a));
  } else {
    names = split_csv(axioms);
  }
  bool expected = expect != "false";

  json reports = json::array();
  bool all_as_expected = true;
  for (const std::string& name : names) {
    CheckReport rep;
    if (name == "strategy-proof")
      rep = is_strategy_proof(sp.ctx, table);
    else if (name == "bmu-monotonic")
      rep = is_bmu_monotonic(sp.ctx, table);
    else if (name == "monotonic-m-independent")
      rep = is_monotonic_m_independent(sp.ctx, table);
    else if (name == "m-independent")
      rep = is_m_independent(sp.ctx, table);
    else if (name == "isotonic")
      rep = is_isotonic(sp.ctx, table);
    else
      rep = check_axiom(env, table, axiom_from_string(name));
    if (rep.verdict != expected) all_as_expected = false;
    reports.push_back(report_to_json(rep));
  }
  std::cout << reports.dump(2) << "\n";
  if (!oa.out_path.empty()) {
    std::ofstream out(oa.out_path);
    out << reports.dump(2) << "\n";
  }
  return all_as_expected ? 0 : 1;
}

int run_verify(const std::string& which, const SpaceArgs& sa, int n_agents, int n_random,
               int sample, std::uint64_t seed, const OutArgs& oa) {
  std::ostringstream text;
  json twin = json::array();
  bool ok = true;

  auto take = [&](const CheckReport& r) {
    text << report_line(r);
    twin.push_back(report_to_json(r));
    ok = ok && r.verdict;
  };

  if (which == "theorem1" || which == "corollary1") {
    RelationSpace sp = make_space(sa);
    auto corpus = standard_corpus(RuleEnv::of(sp), n_agents, seed, n_random);
    take(which == "theorem1" ? verify_theorem1(sp.ctx, corpus)
                             : verify_corollary1(sp.ctx, corpus));
  } else if (which == "prop1") {
    RelationSpace sp = make_space(sa);
    take(verify_prop1(RuleEnv::of(sp), n_agents, seed));
  } else if (which == "prop3") {
    RelationSpace sp = make_space(sa);
    take(verify_prop3(sp, n_agents, seed, sample));
  } else if (which == "prop5") {
    SpaceArgs lattice = sa;
    if (lattice.flavor == "total-preorder") lattice.flavor = "reflexive";
    if (lattice.ground == "x,y,z") lattice.ground = "a,b,c";
    RelationSpace sp = make_space(lattice);
    take(verify_prop5(sp, n_agents, seed, sample));
  } else if (which == "claims") {
    struct Entry {
      const char* flavor;
      const char* ground;
    };
    for (const Entry& e : {Entry{"total-preorder", "x,y,z"}, Entry{"total-preorder", "w,x,y,z"},
                           Entry{"reflexive", "a,b,c"}, Entry{"irreflexive", "a,b,c"},
                           Entry{"weak-tournament", "a,b,c"},
                           Entry{"strict-tournament", "a,b,c"}}) {
      SpaceArgs s;
      s.flavor = e.flavor;
      s.ground = e.ground;
      s.allow_large = true;
      RelationSpace sp = make_space(s);
      text << to_string(sp.flavor) << " m=" << sp.ground.m << ":\n";
      for (const CheckReport& r : verify_claims(sp)) {
        text << "  " << report_line(r);
        json jr = report_to_json(r);
        jr["space"] = space_to_json(sp);
        twin.push_back(std::move(jr));
        ok = ok && r.verdict;
      }
    }
  } else {
    throw BadInput("unknown verification '" + which +
                   "' (theorem1, corollary1, prop1, prop3, prop5, claims)");
  }

  emit(oa, text.str(), twin);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite median semilattices of preference relations: construction, "
               "aggregation rules, axiom checks and verification batteries"};
  app.require_subcommand(1);

  SpaceArgs sa;
  OutArgs oa;
  RuleArgs ra;
  ProfileArgs pa;
  std::string seed_str = "0xC0FFEE";
  int n_agents = 3;
  int n_random = 200;
  int sample = 10000;
  std::string axioms = "all";
  std::string expect = "true";
  std::string verify_which;
  std::string space_mode;

  auto* space = app.add_subcommand("space", "inspect or enumerate a relation space");
  space->add_option("mode", space_mode, "info | enumerate")->required();
  add_space_flags(space, sa);
  add_out_flags(space, oa);

  auto* rule = app.add_subcommand("rule", "evaluate or tabulate an aggregation rule");
  auto* rule_eval = rule->add_subcommand("eval", "evaluate a rule on one profile");
  add_space_flags(rule_eval, sa);
  add_rule_flags(rule_eval, ra);
  add_profile_flags(rule_eval, pa);
  add_out_flags(rule_eval, oa);
  auto* rule_table = rule->add_subcommand("table", "tabulate a rule over all profiles");
  add_space_flags(rule_table, sa);
  add_rule_flags(rule_table, ra);
  rule_table->add_option("--n", n_agents, "number of agents");
  add_out_flags(rule_table, oa);
  rule->require_subcommand(1);

  auto* check = app.add_subcommand("check", "run axiom/predicate checks; emits a JSON array");
  add_space_flags(check, sa);
  add_rule_flags(check, ra);
  check->add_option("--n", n_agents, "number of agents");
  check->add_option("--axiom", axioms,
                    "comma list: axiom names, strategy-proof, bmu-monotonic, "
                    "monotonic-m-independent, m-independent, isotonic; or 'all'");
  check->add_option("--expect", expect, "true|false: expected verdict for every check");
  add_out_flags(check, oa);

  auto* verify = app.add_subcommand("verify", "run a verification battery");
  verify->add_option("which", verify_which, "theorem1 | corollary1 | prop1 | prop3 | prop5 | claims")
      ->required();
  add_space_flags(verify, sa);
  verify->add_option("--n", n_agents, "number of agents");
  verify->add_option("--random", n_random, "number of seeded random rules (theorem1/corollary1)");
  verify->add_option("--sample", sample, "profile sample size for sampled verifications");
  verify->add_option("--seed", seed_str, "64-bit seed (decimal or 0x hex)");
  add_out_flags(verify, oa);

  auto* kemeny = app.add_subcommand("kemeny", "tie-broken remoteness minimizer (rule eval --rule ck)");
  add_space_flags(kemeny, sa);
  add_profile_flags(kemeny, pa);
  kemeny->add_option("--tiebreak", ra.tiebreak, "default | reverse | comma permutation");
  add_out_flags(kemeny, oa);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (space->parsed()) {
      if (space_mode != "info" && space_mode != "enumerate")
        throw BadInput("space mode must be info or enumerate");
      return run_space(space_mode, sa, oa);
    }
    if (rule->parsed()) {
      if (rule_eval->parsed()) return run_rule_eval(sa, ra, pa, oa);
      return run_rule_table(sa, ra, n_agents, oa);
    }
    if (check->parsed()) return run_check(sa, ra, n_agents, axioms, expect, oa);
    if (verify->parsed())
      return run_verify(verify_which, sa, n_agents, n_random, sample, parse_seed(seed_str), oa);
    if (kemeny->parsed()) {
      ra.rule = "ck";
      return run_rule_eval(sa, ra, pa, oa);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
