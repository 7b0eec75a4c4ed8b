#include <algorithm>

#include "adsfuse/error.hpp"
#include "adsfuse/fusion.hpp"
#include "adsfuse/oracle.hpp"
#include "doctest.h"
#include "dl.hpp"

using namespace adsfuse;
using namespace adsfuse::testing;

namespace {

constexpr Component C1 = Component::First;
constexpr Component C2 = Component::Second;

ComponentSpec spec(Logic l, std::vector<std::string> roles) {
  ComponentSpec s;
  s.logic = l;
  s.roles = std::move(roles);
  return s;
}

// ALC over R1 fused with ALCN over R2; ≤ is declared before ≥.
FusionSignature alc_alcn() {
  Signature v;
  v.add_set_var("A");
  v.add_function(symbols::exists("R1", C1));
  v.add_function(symbols::at_most(1, "R2", C2));
  v.add_function(symbols::at_least(2, "R2", C2));
  return fuse(spec(Logic::ALC, {"R1"}), spec(Logic::ALCN, {"R2"}), v);
}

ModelClass classes(const FusionSignature& sig) {
  ModelClass cls = sig.first.model_class();
  for (const auto& [r, f] : sig.second.model_class().roles) cls.add(r, f);
  return cls;
}

Term inconsistent() { return some("R1", conj(at_most(1, "R2", C2), at_least(2, "R2", C2))); }

Term sibling() {
  Term a = var("A");
  return conj(conj(some("R1", a), some("R1", neg(a))), at_most(1, "R2", C2));
}

}  // namespace

TEST_CASE("fuse rejects shared roles and non-local components") {
  try {
    fuse(spec(Logic::ALC, {"R"}), spec(Logic::ALCN, {"R"}));
    FAIL("expected collision");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SymbolCollision);
  }
  auto u = spec(Logic::ALC, {"R"});
  u.universal_role = true;
  try {
    fuse(u, spec(Logic::ALCN, {"S"}));
    FAIL("expected non-local");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonLocalComponent);
  }
}

TEST_CASE("fused signature tags symbols by component") {
  auto trans = spec(Logic::ALC_Rplus, {"R2"});
  trans.transitive = {"R2"};
  auto sig = fuse(spec(Logic::ALCN, {"R1"}), trans);
  CHECK(sig.owner(symbols::at_least(2, "R1", C1)) == C1);
  CHECK_FALSE(sig.owner(symbols::at_least(2, "R2", C2)));
  CHECK(sig.owner(symbols::exists("R2", C2)) == C2);
  CHECK(sig.role_owner("R2") == C2);
  CHECK(sig.vocabulary.relation_component("R1") == C1);
}

TEST_CASE("inconsistent nested restriction is unsat under both searches") {
  FusionEngine e(alc_alcn());
  AssertionSet g{Membership{"i", inconsistent()}};
  CHECK(e.decide_relativized_sat(g).verdict.is_unsat());
  CHECK(e.decide_sat(g).verdict.is_unsat());
  CHECK(e.decide_term_sat(inconsistent()).verdict.is_unsat());
  CHECK(e.decide_relativized_term_sat(inconsistent(), {}).verdict.is_unsat());
  CHECK_FALSE(find_model(g, classes(e.signature()), 6).found());
}

TEST_CASE("fusion-legal sibling is sat with a three point model") {
  FusionEngine e(alc_alcn());
  AssertionSet g{Membership{"a", sibling()}};
  CHECK(e.decide_relativized_sat(g).verdict.is_sat());
  CHECK(e.decide_sat(g).verdict.is_sat());
  auto found = find_model(g, classes(e.signature()), 3);
  REQUIRE(found.found());
  // a can be one of its own R1-successors, so two points suffice.
  CHECK(found.model->size() == 2);
  CHECK(check(g, *found.model));
}

TEST_CASE("relativized examples") {
  FusionEngine e(alc_alcn());
  Term x = var("A");
  CHECK(e.decide_relativized_sat({Inclusion{x, mk_bot()}, Membership{"a", x}}).verdict.is_unsat());
  CHECK(e.decide_relativized_term_sat(mk_top(), {}).verdict.is_sat());
  std::vector<Inclusion> tbox{Inclusion{x, at_least(2, "R2", C2)}};
  CHECK(e.decide_relativized_term_sat(x, tbox).verdict.is_sat());
  AssertionSet g{Inclusion{x, at_least(2, "R2", C2)}, Membership{"a", x}};
  auto found = find_model(g, classes(e.signature()), 3);
  REQUIRE(found.found());
  CHECK(found.model->size() == 2);
}

TEST_CASE("covering-term search examples") {
  Signature v;
  auto sig = fuse(spec(Logic::ALC, {"R1"}), spec(Logic::ALC, {"Q1"}), v);
  FusionEngine e(sig);
  Term x = var("x");
  CHECK(e.decide_sat({Membership{"a", x}, Membership{"b", neg(x)}, RoleAssertion{"Q1", "a", "b"}}).verdict.is_sat());
  Term chain = some("R1", some("Q1", mk_top(), C2));
  AssertionSet g{Membership{"a", chain}};
  CHECK(e.decide_sat(g).verdict.is_sat());
  CHECK(e.decide_relativized_sat(g).verdict.is_sat());
  ModelClass cls;
  cls.add("R1");
  cls.add("Q1");
  auto found = find_model(g, cls, 3);
  REQUIRE(found.found());
  CHECK(found.model->size() <= 3);
}

TEST_CASE("sigma for the nested restriction drops the clashing type") {
  FusionEngine e(alc_alcn());
  AssertionSet g{Membership{"i", inconsistent()}};
  auto sigma = e.compute_sigma(C1, g);
  // Both mixed-sign types survive; "--" is (≥2R2) ∧ (≤1R2) in disguise.
  REQUIRE(sigma.size() == 2);
  CHECK(sigma[0].sign_string() == "+-");
  CHECK(sigma[1].sign_string() == "-+");
  auto atoms = sigma[0].atoms_ptr();
  for (const auto& t : consistency_set(atoms)) {
    bool member = std::find(sigma.begin(), sigma.end(), t) != sigma.end();
    bool found = find_model({Membership{"a", t.materialize()}}, classes(e.signature()), 4).found();
    CHECK(member == found);
  }
  // Depth 0: both types of a single variable.
  auto flat = e.compute_sigma(C1, {Membership{"a", var("A")}});
  REQUIRE(flat.size() == 2);
  CHECK(flat[0].sign_string() == "+");
  CHECK(flat[1].sign_string() == "-");
}

TEST_CASE("sigma index choice follows the alternation depth") {
  FusionEngine e(alc_alcn());
  // f∃R1(...) with component-2 aliens: sub¹ has depth 1 < 2.
  CHECK(e.sigma_index_for({Membership{"i", inconsistent()}}) == C1);
  // A component-2 term on top: only index 2 lowers the depth.
  Term top2 = conj(at_most(1, "R2", C2), some("R1", var("A")));
  CHECK(e.sigma_index_for({Membership{"i", top2}}) == C1);
  FusionOptions both;
  both.sigma_index = SigmaIndex::Second;
  FusionEngine e2(alc_alcn(), both);
  CHECK(e2.decide_sat({Membership{"i", top2}}).verdict.is_sat());
  FusionEngine e1(alc_alcn());
  CHECK(e1.decide_sat({Membership{"i", top2}}).verdict.is_sat());
}

TEST_CASE("search state for the nested restriction sibling") {
  FusionOptions opts;
  opts.record_subproblems = true;
  FusionEngine e(alc_alcn(), opts);
  AssertionSet g{Membership{"a", sibling()}};
  auto r = e.decide_relativized_sat(g);
  REQUIRE(r.verdict.is_sat());
  REQUIRE(r.typed);
  const auto& st = *r.typed;
  REQUIRE(st.typing.count("a"));
  CHECK(st.typing.at("a") < st.types.size());
  CHECK(st.fresh_objects.size() == st.types.size());
  CHECK(!r.subproblems.empty());
  // Γ₁ rebuilt from the item lists.
  auto& table = e.surrogates();
  auto sur1 = [&](Term t) { return surrogate(C1, t, table); };
  auto sur2 = [&](Term t) { return surrogate(C2, t, table); };
  std::vector<Term> d;
  for (const auto& t : st.types) d.push_back(t.materialize());
  AssertionSet g1, g2;
  for (std::size_t k = 0; k < d.size(); ++k) {
    g1.add(Membership{st.fresh_objects[k], sur1(d[k])});
    g2.add(Membership{st.fresh_objects[k], sur2(d[k])});
  }
  g1.add(Inclusion{mk_top(), sur1(mk_or_all(d))});
  g2.add(Inclusion{mk_top(), sur2(mk_or_all(d))});
  g1.add(Membership{"a", sur1(d[st.typing.at("a")])});
  g2.add(Membership{"a", sur2(d[st.typing.at("a")])});
  g1.add(Membership{"a", sur1(sibling())});
  CHECK(st.gamma1 == g1);
  CHECK(st.gamma2 == g2);
}

TEST_CASE("maximal and exhaustive type searches agree") {
  FusionOptions ex;
  ex.d_search = DSearch::Exhaustive;
  for (Term t : {inconsistent(), sibling(), conj(some("R1", at_least(2, "R2", C2)), at_most(0, "R2", C2))}) {
    FusionEngine a(alc_alcn());
    FusionEngine b(alc_alcn(), ex);
    AssertionSet g{Membership{"a", t}};
    CHECK(a.decide_relativized_sat(g).verdict.kind == b.decide_relativized_sat(g).verdict.kind);
  }
}

TEST_CASE("type cap yields a resource error") {
  FusionOptions opts;
  opts.caps.types = 2;
  FusionEngine e(alc_alcn(), opts);
  Term t = some("R1", conj(conj(at_most(1, "R2", C2), at_least(2, "R2", C2)), var("A")));
  try {
    e.decide_relativized_sat({Membership{"a", t}});
    FAIL("expected resource");
  } catch (const ResourceError& err) {
    CHECK(err.detail() == "type-cap");
  }
}

TEST_CASE("term assertions are rejected by the covering-term search") {
  FusionEngine e(alc_alcn());
  CHECK_THROWS_AS(e.decide_sat({Inclusion{mk_top(), var("A")}}), Error);
  CHECK_THROWS_AS(e.decide_sat({Membership{"a", some("Q", mk_top())}}), Error);
}

TEST_CASE("universal role lifting") {
  FusionEngine e(alc_alcn());
  Term x = var("A");
  Term all_u = mk_app(symbols::universal_forall(), {mk_top()});
  CHECK(e.decide_with_universal({Membership{"a", all_u}}).is_sat());
  Term forced = conj(mk_app(symbols::universal_forall(), {x}), neg(x));
  CHECK(e.decide_with_universal({Membership{"a", forced}}).is_unsat());
  Term some_u = mk_app(symbols::universal_exists(), {x});
  CHECK(eliminate_universal_exists(some_u) ==
        neg(mk_app(symbols::universal_forall(), {neg(x)})));
  // Internalization against the relativized search.
  std::vector<Inclusion> tbox{Inclusion{x, at_least(2, "R2", C2)}};
  Term t = conj(x, at_most(1, "R2", C2));
  CHECK(e.decide_relativized_term_sat(t, tbox).verdict.is_unsat());
  CHECK(e.decide_with_universal({Membership{"a", internalize(t, tbox)}}).is_unsat());
  CHECK(e.decide_with_universal({Membership{"a", internalize(x, tbox)}}).is_sat());
}

TEST_CASE("sigma cap") {
  Term x = var("A");
  AssertionSet g;
  Term t = mk_top();
  for (int i = 0; i < 3; ++i) {
    x = mk_app(symbols::universal_forall(), {x});
    t = mk_and(t, x);
  }
  g.add(Membership{"a", t});
  try {
    lift_universal(g, [](const AssertionSet&) { return Verdict::sat(); }, 2);
    FAIL("expected resource");
  } catch (const ResourceError& err) {
    CHECK(err.detail() == "sigma-cap");
  }
}
