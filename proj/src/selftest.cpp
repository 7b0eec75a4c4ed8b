#include "adsfuse/selftest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "adsfuse/driver.hpp"
#include "adsfuse/error.hpp"
#include "adsfuse/frontend.hpp"
#include "adsfuse/fusion.hpp"
#include "adsfuse/oracle.hpp"
#include "adsfuse/random.hpp"
#include "adsfuse/surrogation.hpp"

namespace adsfuse::selftest {

bool SuiteReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

Check& SuiteReport::check(const std::string& name) {
  for (auto& c : checks)
    if (c.name == name) return c;
  checks.push_back(Check{name, 0, 0, {}});
  return checks.back();
}

const Check* SuiteReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void SuiteReport::record(const std::string& name, bool ok, const std::string& detail) {
  Check& c = check(name);
  ++c.cases;
  if (ok) return;
  ++c.failures;
  if (c.samples.size() < 5) c.samples.push_back(detail);
}

namespace {

using gen::Rng;

// Results of one case, merged into the report in case order.
struct Outcome {
  struct Item {
    std::string check;
    bool ok;
    std::string detail;
  };
  std::vector<Item> items;
  std::map<std::string, std::uint64_t> counters;

  void ok(std::string check, bool pass, std::string detail = {}) {
    items.push_back({std::move(check), pass, std::move(detail)});
  }
  void count(const std::string& c, std::uint64_t n = 1) { counters[c] += n; }
};

std::uint64_t scaled(const Config& cfg, std::uint64_t n) {
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(n * cfg.scale)));
}

Rng case_rng(const Config& cfg, std::string_view tag, std::uint64_t i) {
  std::uint32_t h = 2166136261U;
  for (char c : tag) h = (h ^ static_cast<unsigned char>(c)) * 16777619U;
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32), h,
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  return Rng(seq);
}

using CaseFn = std::function<void(Rng&, Outcome&, std::uint64_t)>;

void run_cases(SuiteReport& rep, const Config& cfg, std::string_view tag, std::uint64_t n, const CaseFn& fn) {
  std::vector<Outcome> outs(n);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::uint64_t i = next++;
      if (i >= n) return;
      Rng rng = case_rng(cfg, tag, i);
      try {
        fn(rng, outs[i], i);
      } catch (const std::exception& e) {
        outs[i].ok("no-errors", false, "case " + std::to_string(i) + ": " + e.what());
      }
    }
  };
  unsigned jobs = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1U, cfg.jobs), n));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& o : outs) {
    for (const auto& it : o.items) rep.record(it.check, it.ok, it.detail);
    for (const auto& [k, v] : o.counters) rep.counters[k] += v;
  }
}

ReasonerOptions reasoner_options(const Config& cfg) {
  ReasonerOptions r;
  r.fault_ignore_atom_clash = cfg.inject_fault;
  return r;
}

FusionOptions fusion_options(const Config& cfg) {
  FusionOptions o;
  o.reasoner = reasoner_options(cfg);
  return o;
}

std::string show(const AssertionSet& g) {
  std::string s = "{";
  for (const auto& a : g) s += (s.size() > 1 ? ", " : "") + to_prefix(a);
  return s + "}";
}

OracleResult oracle(const AssertionSet& g, const ModelClass& cls, unsigned bound, Outcome& o) {
  try {
    return find_model(g, cls, bound);
  } catch (const ResourceError&) {
    o.count("oracle-budget");
    return OracleResult{std::nullopt, 0};
  }
}

// ---------------------------------------------------------------------------

const char* const kFusionHeader = "component 1 ALC { roles R1; }\ncomponent 2 ALCN { roles R2; }\n";

void goldens(Rng&, Outcome& o, std::uint64_t) {
  auto single = dl::translate(dl::parse(
      "component 1 ALCN { roles R; }\nquery term-sat exists R . A & exists R . !A & atmost 1 R;"));
  auto r = run_query(single);
  o.ok("single-component-unsat", r.verdict.is_unsat() && r.route == "component", r.route);

  const std::string header = kFusionHeader;
  auto nested = dl::translate(dl::parse(header + "abox { (exists R1 . (atmost 1 R2 & atleast 2 R2))(i); }"));
  for (auto [kind, name] : {std::pair{FusionEngineKind::Typed, "nested-unsat-typed"},
                            std::pair{FusionEngineKind::Covering, "nested-unsat-covering"}}) {
    RunOptions opts;
    opts.engine = kind;
    auto out = run_query(nested, opts);
    o.ok(name, out.verdict.is_unsat(), std::string(to_string(out.verdict.kind)));
  }

  auto sibling = dl::translate(dl::parse(header + "abox { (exists R1 . A & exists R1 . !A & atmost 1 R2)(a); }"));
  bool engines_sat = true;
  for (auto kind : {FusionEngineKind::Typed, FusionEngineKind::Covering}) {
    RunOptions opts;
    opts.engine = kind;
    engines_sat = engines_sat && run_query(sibling, opts).verdict.is_sat();
  }
  auto sig = dl::fusion_signature(sibling);
  ModelClass cls = sig.first.model_class();
  for (const auto& [role, flags] : sig.second.model_class().roles) cls.add(role, flags);
  auto found = find_model(sibling.query_set(), cls, 3);
  o.ok("sibling-sat-with-witness",
       engines_sat && found.found() && found.model->size() <= 3 && check(sibling.query_set(), *found.model));

  // Types and surrogates of the nested assertion.
  Term le = mk_app(symbols::at_most(1, "R2", Component::Second), {});
  Term ge = mk_app(symbols::at_least(2, "R2", Component::Second), {});
  Term t = nested.abox.memberships().front().term;
  auto fsig = dl::fusion_signature(nested);
  auto atoms = std::make_shared<const TypeAtomSet>(
      alien_closure(Component::First, nested.query_set(), fsig.vocabulary.order()));
  o.ok("sub1", atoms->atoms() == std::vector<Term>{le, ge});
  auto types = consistency_set(atoms);
  std::vector<Term> expected = {mk_and(le, ge), mk_and(le, mk_not(ge)), mk_and(mk_not(le), ge),
                                mk_and(mk_not(le), mk_not(ge))};
  std::vector<Term> got;
  for (const auto& ty : types) got.push_back(ty.materialize());
  o.ok("consistency-set", got == expected);
  SurrogateTable table;
  Term sur = surrogate(Component::First, t, table);
  Term x = table.surrogate_for(le), y = table.surrogate_for(ge);
  o.ok("sur1", sur == mk_app(symbols::exists("R1", Component::First), {mk_and(x, y)}), to_prefix(sur));
}

// ---------------------------------------------------------------------------

AssertionSet component_part(Component c, const ComponentSpec& spec, const AssertionSet& g,
                            SurrogateTable& table) {
  AssertionSet out;
  for (const auto& a : g) {
    if (auto* inc = std::get_if<Inclusion>(&a)) {
      out.add(Inclusion{surrogate(c, inc->lhs, table), surrogate(c, inc->rhs, table)});
    } else if (auto* m = std::get_if<Membership>(&a)) {
      out.add(Membership{m->object, surrogate(c, m->term, table)});
    } else {
      const auto& r = std::get<RoleAssertion>(a);
      if (spec.has_role(r.role)) out.add(r);
    }
  }
  return out;
}

void agreement(const Config& cfg, Rng& rng, Outcome& o, std::uint64_t i) {
  const gen::Profile profile = i % 2 ? gen::alcf_alcr() : gen::alc_alcn();
  const auto sig = gen::signature_of(profile);
  const auto cls = gen::model_class_of(profile);
  gen::GammaShape shape;
  shape.term_assertions = i % 3 == 0;
  AssertionSet g;
  std::optional<Verdict> v20;
  for (int attempt = 0; attempt < 10 && !v20; ++attempt) {
    g = gen::random_gamma(rng, profile, shape);
    try {
      FusionEngine e20(sig, fusion_options(cfg));
      Verdict a = e20.decide_relativized_sat(g).verdict;
      if (!g.has_term_assertions()) {
        FusionEngine e30(sig, fusion_options(cfg));
        Verdict b = e30.decide_sat(g).verdict;
        o.ok("engines-agree", a.kind == b.kind,
             show(g) + " typed=" + std::string(to_string(a.kind)) + " covering=" + std::string(to_string(b.kind)));
      }
      v20 = a;
    } catch (const ResourceError&) {
      o.count("resampled");
    }
  }
  if (!v20) {
    o.ok("caps-avoidable", false, "ten draws in a row hit a cap");
    return;
  }
  o.count(v20->is_sat() ? "engine-sat" : "engine-unsat");
  auto found = oracle(g, cls, cfg.oracle_bound, o);
  if (found.found()) {
    o.count("oracle-found");
    o.ok("oracle-model-checks", check(g, *found.model));
  } else {
    o.count(v20->is_sat() ? "inconclusive" : "oracle-none-engine-unsat");
  }
  o.ok("no-unsat-with-model", !(found.found() && v20->is_unsat()), show(g));

  // Component level: witnesses of the surrogated halves.
  SurrogateTable table;
  for (Component c : {Component::First, Component::Second}) {
    const ComponentSpec& spec = sig.component(c);
    AssertionSet part = component_part(c, spec, g, table);
    auto reasoner = make_reasoner(spec, reasoner_options(cfg));
    Verdict v = reasoner->decide_relativized_sat(part, true);
    if (v.is_sat() && v.witness) o.ok("component-witness-checks", check(part, *v.witness), show(part));
    auto cf = oracle(part, spec.model_class(), cfg.oracle_bound, o);
    o.ok("component-agrees-with-oracle", !(cf.found() && v.is_unsat()), show(part));
  }
}

// ---------------------------------------------------------------------------

ComponentSpec law_component(Logic logic, const std::string& role) {
  ComponentSpec c;
  c.logic = logic;
  c.roles = {role};
  if (logic == Logic::ALC_Rplus) c.transitive = {role};
  if (logic == Logic::ALC_f) c.functional = {role};
  return c;
}

ModelClass law_class() {
  ModelClass cls;
  cls.add("R");
  cls.add("Q", {true, false});
  cls.add("F", {false, true});
  return cls;
}

std::vector<Symbol> local_symbols() {
  std::vector<Symbol> out;
  for (const char* r : {"R", "Q", "F"}) {
    out.push_back(symbols::exists(r, Component::First));
    out.push_back(symbols::forall(r, Component::First));
  }
  for (unsigned n = 0; n <= 3; ++n) {
    out.push_back(symbols::at_least(n, "R", Component::First));
    out.push_back(symbols::at_most(n, "R", Component::First));
  }
  return out;
}

void covering(Rng& rng, Outcome& o, std::uint64_t) {
  static const std::vector<std::pair<Logic, std::string>> comps = {
      {Logic::ALCN, "R"}, {Logic::ALC_Rplus, "Q"}, {Logic::ALC_f, "F"}};
  std::vector<std::string> vars;
  auto m = gen::random_model(rng, gen::uniform(rng, 1, 4), law_class(), vars);
  for (const auto& [logic, role] : comps) {
    auto reasoner = make_reasoner(law_component(logic, role));
    std::vector<Symbol> fs = {symbols::exists(role, Component::First), symbols::forall(role, Component::First)};
    if (logic == Logic::ALCN)
      for (unsigned n = 0; n <= 3; ++n) {
        fs.push_back(symbols::at_least(n, role, Component::First));
        fs.push_back(symbols::at_most(n, role, Component::First));
      }
    for (Symbol f : fs) {
      Term cover = reasoner->covering_term(f);
      o.ok("covering-conditions", verify_covering_term(m, f, cover), f->name() + " on a model of size " +
                                                                          std::to_string(m.size()));
    }
  }
  Symbol ex = symbols::exists("R", Component::First);
  if (!verify_covering_term(m, ex, mk_app(ex, {mk_var("x")}))) o.count("exists-self-cover-refuted");
}

void covering_fixed(Outcome& o) {
  // One edge 0 -> 1 leaves point 1 without successors, so ∃R(x) maps W to {0}.
  FiniteInterpretation m(2);
  m.declare_role("R");
  m.add_edge("R", 0, 1);
  Symbol ex = symbols::exists("R", Component::First);
  o.ok("exists-is-not-its-own-cover", !verify_covering_term(m, ex, mk_app(ex, {mk_var("x")})));
}

void normality(Rng& rng, Outcome& o, std::uint64_t) {
  std::vector<std::string> vars;
  auto m = gen::random_model(rng, gen::uniform(rng, 1, 4), law_class(), vars);
  for (const char* r : {"R", "Q", "F"})
    o.ok("forall-normal", verify_normality(m, symbols::forall(r, Component::First)), r);
  if (!verify_normality(m, symbols::at_least(1, "R", Component::First))) o.count("atleast1-refuted");
  if (!verify_normality(m, symbols::at_most(1, "R", Component::First))) o.count("atmost1-refuted");
  if (!verify_normality(m, symbols::exists("R", Component::First))) o.count("exists-refuted");
}

PointSet shifted(PointSet s, unsigned offset) { return s << offset; }

void locality(Rng& rng, Outcome& o, std::uint64_t) {
  std::vector<std::string> vars = {"A", "B"};
  std::vector<FiniteInterpretation> parts;
  for (int k = 0; k < 2; ++k) parts.push_back(gen::random_model(rng, gen::uniform(rng, 1, 4), law_class(), vars));
  for (Symbol f : local_symbols()) o.ok("union-identity", union_identity_holds(f, parts), f->name());
  for (Symbol u : {symbols::universal_exists(), symbols::universal_forall()})
    o.ok("universal-breaks-union", !union_identity_holds(u, parts), u->name());

  // Terms over local symbols: the union evaluates to the union of the parts.
  auto syms = local_symbols();
  Term t = gen::random_term(rng, vars, syms, 2, 5);
  auto whole = disjoint_union(parts);
  PointSet expect = eval(t, parts[0]) | shifted(eval(t, parts[1]), parts[0].size());
  o.ok("term-union-identity", eval(t, whole) == expect, to_prefix(t));

  // Pointwise evaluator against bottom-up evaluation, universal symbols included.
  auto with_u = syms;
  with_u.push_back(symbols::universal_exists());
  with_u.push_back(symbols::universal_forall());
  Term s = gen::random_term(rng, vars, with_u, 3, 6);
  const auto& m = parts[0];
  PointSet pointwise = 0;
  for (unsigned p = 0; p < m.size(); ++p)
    if (holds_at(s, m, p)) pointwise |= point_bit(p);
  o.ok("eval-pointwise", eval(s, m) == pointwise, to_prefix(s));
  PointSet inner = eval(s, m);
  PointSet some = eval(mk_app(symbols::universal_exists(), {s}), m);
  o.ok("universal-semantics", some == (inner ? m.full() : 0));
}

// ---------------------------------------------------------------------------

void depth_drop(const Config& cfg, Rng& rng, Outcome& o, std::uint64_t i) {
  const gen::Profile profile = i % 2 ? gen::alcf_alcr() : gen::alc_alcn();
  auto syms = gen::symbols_of(profile);
  Term t;
  unsigned a = 0;
  for (int attempt = 0; attempt < 50 && a == 0; ++attempt) {
    t = gen::random_term(rng, profile.vars, syms, gen::uniform(rng, 2, 4), gen::uniform(rng, 3, 7));
    a = alternation_depth(std::vector<Term>{t});
  }
  if (a == 0) {
    o.count("no-alternation");
    return;
  }
  std::vector<Term> ts{t};
  unsigned a1 = alternation_depth(alien_closure(Component::First, ts).atoms());
  unsigned a2 = alternation_depth(alien_closure(Component::Second, ts).atoms());
  o.ok("depth-drops", std::min(a1, a2) < a,
       to_prefix(t) + " a=" + std::to_string(a) + " a1=" + std::to_string(a1) + " a2=" + std::to_string(a2));
  FusionEngine e(gen::signature_of(profile), fusion_options(cfg));
  AssertionSet g{Membership{"a", t}};
  try {
    auto sigma = e.compute_sigma(e.sigma_index_for(g), g);
    o.ok("sigma-without-internal-error", true);
    o.count("sigma-types", sigma.size());
  } catch (const ResourceError&) {
    o.count("sigma-resource");
  } catch (const Error& err) {
    o.ok("sigma-without-internal-error", err.code() != ErrorCode::Internal, to_prefix(t) + ": " + err.what());
  }
}

// ---------------------------------------------------------------------------

void universal(const Config& cfg, Rng& rng, Outcome& o, std::uint64_t) {
  const gen::Profile profile = gen::alc_alcn();
  const auto sig = gen::signature_of(profile);
  const auto cls = gen::model_class_of(profile);
  auto syms = gen::symbols_of(profile);
  Term t = gen::random_term(rng, profile.vars, syms, 2, 4);
  std::vector<Inclusion> tbox;
  for (unsigned k = gen::uniform(rng, 1, 2); k > 0; --k)
    tbox.push_back({gen::random_term(rng, profile.vars, syms, 1, 2), gen::random_term(rng, profile.vars, syms, 1, 3)});
  Verdict relativized, lifted;
  try {
    FusionEngine e1(sig, fusion_options(cfg));
    relativized = e1.decide_relativized_term_sat(t, tbox).verdict;
    FusionEngine e2(sig, fusion_options(cfg));
    lifted = e2.decide_with_universal({Membership{"a", internalize(t, tbox)}});
  } catch (const ResourceError&) {
    o.count("resource");
    return;
  }
  o.ok("internalization-agrees", relativized.kind == lifted.kind, to_prefix(t));
  AssertionSet g{Membership{"a", t}};
  for (const auto& inc : tbox) g.add(inc);
  auto found = oracle(g, cls, 4, o);
  if (found.found()) o.count("oracle-found");
  o.ok("sat-when-oracle-finds", !found.found() || (relativized.is_sat() && lifted.is_sat()), show(g));
  auto found_u = oracle({Membership{"a", internalize(t, tbox)}}, cls, 4, o);
  o.ok("internalized-sat-when-oracle-finds", !found_u.found() || lifted.is_sat(), to_prefix(t));

  // Terms that use the universal role directly.
  auto with_u = syms;
  with_u.push_back(symbols::universal_exists());
  with_u.push_back(symbols::universal_forall());
  Term s = gen::random_term(rng, profile.vars, with_u, 2, 5);
  try {
    FusionEngine e3(sig, fusion_options(cfg));
    Verdict v = e3.decide_with_universal({Membership{"a", s}});
    auto fs = oracle({Membership{"a", s}}, cls, 4, o);
    o.ok("lifted-sat-when-oracle-finds", !fs.found() || v.is_sat(), to_prefix(s));
    if (fs.found()) o.count("oracle-found-u");
  } catch (const ResourceError&) {
    o.count("resource");
  }
}

// ---------------------------------------------------------------------------

// Propositional value of t when leaf k (a variable or application) is bit k.
bool eval_prop(Term t, const std::map<std::uint64_t, std::size_t>& leaves, std::uint64_t bits) {
  switch (t.kind()) {
    case TermKind::Top: return true;
    case TermKind::Bot: return false;
    case TermKind::Not: return !eval_prop(t.arg(0), leaves, bits);
    case TermKind::And: return eval_prop(t.arg(0), leaves, bits) && eval_prop(t.arg(1), leaves, bits);
    case TermKind::Or: return eval_prop(t.arg(0), leaves, bits) || eval_prop(t.arg(1), leaves, bits);
    default: return (bits >> leaves.at(t.id())) & 1U;
  }
}

void collect_leaves(Term t, std::map<std::uint64_t, std::size_t>& leaves) {
  switch (t.kind()) {
    case TermKind::Top:
    case TermKind::Bot: return;
    case TermKind::Not:
    case TermKind::And:
    case TermKind::Or:
      for (Term a : t.args()) collect_leaves(a, leaves);
      return;
    default: leaves.emplace(t.id(), leaves.size());
  }
}

bool only_component(Term t, Component c) {
  return !mentions(t, [c](Symbol f) { return f->component() != c && f->component() != Component::Shared; });
}

void surrogation(Rng& rng, Outcome& o, std::uint64_t i) {
  const gen::Profile profile = i % 2 ? gen::alcf_alcr() : gen::alc_alcn();
  auto syms = gen::symbols_of(profile);
  Term t = gen::random_term(rng, profile.vars, syms, 3, gen::uniform(rng, 2, 7));
  SurrogateTable table;
  for (Component c : {Component::First, Component::Second}) {
    Term s = surrogate(c, t, table);
    o.ok("round-trip", desurrogate(s, table) == t, to_prefix(t));
    o.ok("no-aliens-left", only_component(s, c), to_prefix(s));
    SurrogateTable other;
    o.ok("stable-names", surrogate(c, t, other) == s);

    auto atoms = std::make_shared<const TypeAtomSet>(alien_closure(c, std::vector<Term>{t}));
    if (atoms->size() > 8) {
      o.count("truth-table-skipped");
      continue;
    }
    auto types = consistency_set(atoms);
    std::map<std::uint64_t, std::size_t> leaves;
    for (Term a : atoms->atoms()) collect_leaves(a, leaves);
    std::vector<Term> terms;
    for (const auto& ty : types) terms.push_back(ty.materialize());
    const std::uint64_t valuations = std::uint64_t{1} << leaves.size();
    bool exactly_one = true;
    for (std::uint64_t bits = 0; bits < valuations; ++bits) {
      int hits = 0;
      for (Term ty : terms) hits += eval_prop(ty, leaves, bits);
      exactly_one = exactly_one && hits == 1;
    }
    o.ok("types-exhaustive-and-disjoint", exactly_one, to_prefix(t));
    if (atoms->size() <= 5) {
      bool clash = true;
      for (std::size_t p = 0; p < terms.size(); ++p)
        for (std::size_t q = p + 1; q < terms.size(); ++q)
          for (std::uint64_t bits = 0; bits < valuations; ++bits)
            clash = clash && !eval_prop(mk_and(terms[p], terms[q]), leaves, bits);
      o.ok("pairwise-type-clash", clash, to_prefix(t));
    }
  }
}

// ---------------------------------------------------------------------------

void resource(const Config& cfg, Rng&, Outcome& o, std::uint64_t) {
  const gen::Profile profile = gen::alc_alcn();
  for (unsigned k : {2U, 4U, 17U, 20U}) {
    std::vector<Term> parts;
    for (unsigned j = 0; j < k; ++j)
      parts.push_back(mk_app(symbols::exists("R1", Component::First),
                             {mk_app(symbols::at_least(j, "R2", Component::Second), {})}));
    AssertionSet g{Membership{"a", mk_and_all(parts)}};
    FusionSignature sig = fuse(profile.first, profile.second);
    for (auto kind : {FusionEngineKind::Typed, FusionEngineKind::Covering}) {
      std::string name = std::string(kind == FusionEngineKind::Typed ? "typed" : "covering") + " k=" + std::to_string(k);
      FusionEngine e(sig, fusion_options(cfg));
      try {
        Verdict v = e.decide(g, kind).verdict;
        o.ok(k > kDefaultTypeCap ? "resource-verdict-past-cap" : "sat-below-cap",
             k <= kDefaultTypeCap && v.is_sat(), name);
      } catch (const ResourceError& err) {
        o.ok(k > kDefaultTypeCap ? "resource-verdict-past-cap" : "sat-below-cap",
             k > kDefaultTypeCap && err.detail() == "type-cap", name + " " + err.detail());
      }
    }
  }
  // Nested ∀U beyond the σ cap.
  Term u = mk_var("A");
  Term all = mk_top();
  for (unsigned k = 0; k <= 16; ++k) {
    u = mk_app(symbols::universal_forall(), {u});
    all = mk_and(all, u);
  }
  FusionEngine e(fuse(profile.first, profile.second), fusion_options(cfg));
  try {
    e.decide_with_universal({Membership{"a", all}});
    o.ok("sigma-cap", false, "no resource verdict");
  } catch (const ResourceError& err) {
    o.ok("sigma-cap", err.detail() == "sigma-cap", err.detail());
  }
}

// ---------------------------------------------------------------------------

void frontend(Rng& rng, Outcome& o, std::uint64_t i) {
  const gen::Profile profile = i % 2 ? gen::alcf_alcr() : gen::alc_alcn();
  auto doc = gen::random_document(rng, profile);
  o.ok("generated-documents-validate", dl::validate(doc).empty());
  auto tr = dl::translate(doc);
  std::string text = dl::pretty(tr);
  auto back = dl::translate(dl::parse(text));
  o.ok("round-trip", back.query_set() == tr.query_set() &&
                         back.vocabulary.functions() == tr.vocabulary.functions(),
       text);
  dl::Concept c = gen::random_concept(rng, profile, 2, 6);
  Term t = dl::translate_concept(doc, c);
  auto m = gen::random_model(rng, gen::uniform(rng, 1, 4), gen::model_class_of(profile), profile.vars);
  o.ok("semantic-adequacy", dl::dl_eval(c, m) == eval(t, m), dl::pretty(c));
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"goldens",  "agreement",   "covering",  "normality",
                                                 "locality", "depth",     "universal", "surrogation",
                                                 "resource", "frontend"};
  return names;
}

SuiteReport run_suite(std::string_view name, const Config& cfg) {
  SuiteReport rep;
  rep.suite = std::string(name);
  auto with_cfg = [&cfg](auto fn) {
    return [&cfg, fn](Rng& rng, Outcome& o, std::uint64_t i) { fn(cfg, rng, o, i); };
  };
  if (name == "goldens") {
    run_cases(rep, cfg, name, 1, goldens);
  } else if (name == "agreement") {
    run_cases(rep, cfg, name, scaled(cfg, 600), with_cfg(agreement));
  } else if (name == "covering") {
    run_cases(rep, cfg, name, scaled(cfg, 1000), covering);
    Outcome fixed;
    covering_fixed(fixed);
    for (const auto& it : fixed.items) rep.record(it.check, it.ok, it.detail);
  } else if (name == "normality") {
    run_cases(rep, cfg, name, scaled(cfg, 300), normality);
    rep.record("atleast1-refuted", rep.counters["atleast1-refuted"] > 0, "no model refuted normality");
  } else if (name == "locality") {
    run_cases(rep, cfg, name, scaled(cfg, 250), locality);
  } else if (name == "depth") {
    run_cases(rep, cfg, name, scaled(cfg, 1000), with_cfg(depth_drop));
  } else if (name == "universal") {
    run_cases(rep, cfg, name, scaled(cfg, 120), with_cfg(universal));
  } else if (name == "surrogation") {
    run_cases(rep, cfg, name, scaled(cfg, 1000), surrogation);
  } else if (name == "resource") {
    run_cases(rep, cfg, name, 1, with_cfg(resource));
  } else if (name == "frontend") {
    run_cases(rep, cfg, name, scaled(cfg, 300), frontend);
  } else {
    throw Error(ErrorCode::Precondition, "unknown suite '" + std::string(name) + "'");
  }
  return rep;
}

}  // namespace adsfuse::selftest
