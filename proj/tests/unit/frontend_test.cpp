#include <algorithm>

#include "adsfuse/codec.hpp"
#include "adsfuse/frontend.hpp"
#include "adsfuse/oracle.hpp"
#include "adsfuse/random.hpp"
#include "doctest.h"
#include "dl.hpp"

using namespace adsfuse;
using namespace adsfuse::testing;
using dl::Concept;

namespace {

bool has_code(const std::vector<dl::Diagnostic>& ds, std::string_view code) {
  return std::any_of(ds.begin(), ds.end(), [&](const dl::Diagnostic& d) { return d.code == code; });
}

const char* kFusion = R"(
component 1 ALC { roles R1; }
component 2 ALCN { roles R2; }
)";

}  // namespace

TEST_CASE("concept syntax") {
  Concept c = dl::parse_concept("Woman & forall child . Woman");
  REQUIRE(c.kind == Concept::Kind::And);
  CHECK(c.args[0].kind == Concept::Kind::Name);
  CHECK(c.args[1].kind == Concept::Kind::Forall);
  CHECK(c.args[1].role.name == "child");

  Concept n = dl::parse_concept("Woman & atmost(2,child) & atleast(2,child)");
  REQUIRE(n.kind == Concept::Kind::And);
  CHECK(n.args[1].kind == Concept::Kind::AtLeast);
  CHECK(n.args[1].count == 2);
  CHECK(n.args[0].args[1].kind == Concept::Kind::AtMost);
  CHECK(dl::pretty(n) == "Woman & atmost 2 child & atleast 2 child");

  // Precedence: ! over & over |, quantifier bodies are unary.
  CHECK(dl::pretty(dl::parse_concept("!A & B | C")) == "!A & B | C");
  Concept q = dl::parse_concept("exists R . A & B");
  CHECK(q.kind == Concept::Kind::And);
  CHECK(dl::pretty(dl::parse_concept("exists R . (A | B)")) == "exists R . (A | B)");
  CHECK(dl::pretty(dl::parse_concept("A & (B & C)")) == "A & (B & C)");
  CHECK(dl::parse_concept("atleast 0 R").count == 0);
}

TEST_CASE("syntax errors carry positions") {
  try {
    dl::parse_concept("exists R .");
    FAIL("expected syntax error");
  } catch (const dl::SyntaxError& e) {
    CHECK(e.code() == ErrorCode::Syntax);
    CHECK(e.loc().line == 1);
    CHECK(e.loc().column == 11);
  }
  try {
    dl::parse("component 1 ALC { roles R; }\ntbox {\n  A <= exists R B;\n}\n");
    FAIL("expected syntax error");
  } catch (const dl::SyntaxError& e) {
    CHECK(e.loc().line == 3);
    CHECK(e.loc().column == 17);
    CHECK(std::string(e.what()).starts_with("3:17:"));
  }
  CHECK_THROWS_AS(dl::parse_concept("atleast 2147483648 R"), dl::SyntaxError);
  CHECK(dl::parse_concept("atleast 2147483647 R").count == 2147483647U);
  CHECK_THROWS_AS(dl::parse_concept("A $ B"), dl::SyntaxError);
  CHECK_THROWS_AS(dl::parse("query term-sat A; query relativized;"), dl::SyntaxError);
  CHECK_THROWS_AS(dl::parse("abox { (A & B)(a, b); }"), dl::SyntaxError);
}

TEST_CASE("document structure") {
  auto doc = dl::parse(R"(
# ALC_f with a feature fused with transitive roles
component 1 ALC_f { roles G; features F; }
component 2 ALC_R+ { transitive Q; roles Q2; }
tbox { A <= forall Q . A; }
abox { A(a); F(a, b); (A | B)(b); }
query relativized;
)");
  REQUIRE(doc.components.size() == 2);
  CHECK(doc.components[0].roles == std::vector<std::string>{"G", "F"});
  CHECK(doc.components[0].functional == std::vector<std::string>{"F"});
  CHECK(doc.components[1].logic_text == "ALC_R+");
  CHECK(doc.tbox.size() == 1);
  CHECK(doc.abox.size() == 3);
  CHECK(std::holds_alternative<dl::RoleFact>(doc.abox[1]));
  CHECK(dl::validate(doc).empty());
}

TEST_CASE("validation diagnostics") {
  auto cross = dl::parse(R"(
component 1 ALCN { roles R; }
component 2 ALC_R+ { transitive Q; }
abox { (atleast 2 Q)(a); }
)");
  auto ds = dl::validate(cross);
  REQUIRE(has_code(ds, "cross-component role"));
  CHECK(ds[0].loc.line == 4);

  auto complement = dl::parse(std::string(kFusion) + "abox { (forall ~R1 . A)(a); }");
  ds = dl::validate(complement);
  REQUIRE(has_code(ds, "non-local"));
  CHECK(ds[0].message.find("not local") != std::string::npos);

  CHECK(dl::validate(dl::parse("component 1 ALC { roles R; } abox { (exists R . A)(a); }")).empty());

  auto universal = dl::parse(std::string(kFusion) + "abox { (exists U . A)(a); }");
  CHECK(has_code(dl::validate(universal), "non-local"));
  CHECK(dl::validate(universal, {.with_universal = true}).empty());

  auto nominal = dl::parse(std::string(kFusion) + "abox { (exists R1 . {b})(a); }");
  CHECK(has_code(dl::validate(nominal), "non-local"));
  auto conj_role = dl::parse(std::string(kFusion) + "abox { (exists (R1 & R1) . A)(a); }");
  CHECK(has_code(dl::validate(conj_role), "role-constructor"));
  auto mixed = dl::parse(std::string(kFusion) + "abox { (exists (R1 & R2) . A)(a); }");
  CHECK(has_code(dl::validate(mixed), "cross-component role"));

  CHECK(has_code(dl::validate(dl::parse("component 1 ALC { roles R; } abox { (atmost 1 R)(a); }")),
                 "unsupported-constructor"));
  CHECK(has_code(dl::validate(dl::parse("component 1 ALC { roles R; } abox { (exists S . A)(a); }")),
                 "undeclared-role"));
  CHECK(has_code(dl::validate(dl::parse("component 1 ALC { roles R; } component 2 ALC { roles R; }")),
                 "cross-component role"));
  CHECK(has_code(dl::validate(dl::parse("component 1 ALC { transitive R; }")), "logic-flag"));
  CHECK(has_code(dl::validate(dl::parse("component 1 ALCN { features F; }")), "logic-flag"));
  CHECK(has_code(dl::validate(dl::parse("component 1 ALCX { roles R; }")), "logic"));
  CHECK(has_code(dl::validate(dl::parse("component 2 ALC { roles R; }")), "component"));
  CHECK(has_code(dl::validate(dl::parse("component 1 ALC { roles R; } abox { R(a, b); a(b); }")),
                 "name-clash"));
  CHECK(has_code(dl::validate(dl::parse("component 1 ALC { roles R; } tbox { A <= B; } query abox-sat;")),
                 "query"));
  CHECK(has_code(dl::validate(dl::parse("component 1 ALC { roles R; } query term-sat;")), "query"));
}

TEST_CASE("translation goldens") {
  auto doc = dl::parse("component 1 ALCN { roles R1, R2; }");
  Concept c = dl::parse_concept("A & forall (R1 & R2) . !(B & atleast 2 R1)");
  Term t = dl::translate_concept(doc, c);
  Term expected =
      conj(var("A"), mk_app(symbols::forall("(R1 & R2)", Component::First, false),
                            {neg(conj(var("B"), at_least(2, "R1", Component::First)))}));
  CHECK(t == expected);
  CHECK(t.arg(1).symbol()->name() == "forall[(R1 & R2)]");
  CHECK(dl::pretty(t) == "A & forall (R1 & R2) . !(B & atleast 2 R1)");

  auto abox = dl::parse(R"(
component 1 ALC { roles child; }
abox { Woman(MARY); child(MARY, TOM); Human(TOM); }
)");
  auto tr = dl::translate(abox);
  AssertionSet want{Membership{"MARY", var("Woman")}, RoleAssertion{"child", "MARY", "TOM"},
                    Membership{"TOM", var("Human")}};
  CHECK(tr.abox == want);
  CHECK(tr.query_set() == want);
  CHECK(tr.vocabulary.objects() == std::vector<std::string>{"MARY", "TOM"});

  CHECK(dl::translate_concept(doc, dl::parse_concept("top")) == mk_top());
}

TEST_CASE("function symbols are declared in first-occurrence order") {
  auto doc = dl::parse(std::string(kFusion) +
                       "abox { (exists R1 . (atmost 1 R2 & atleast 2 R2))(i); }");
  CHECK(dl::validate(doc).empty());
  auto tr = dl::translate(doc);
  const auto& fs = tr.vocabulary.functions();
  REQUIRE(fs.size() == 3);
  CHECK(fs[0] == symbols::exists("R1", Component::First));
  CHECK(fs[1] == symbols::at_most(1, "R2", Component::Second));
  CHECK(fs[2] == symbols::at_least(2, "R2", Component::Second));
  CHECK(tr.vocabulary.relation_component("R2") == Component::Second);
  auto sig = dl::fusion_signature(tr);
  CHECK(sig.second.logic == Logic::ALCN);
}

TEST_CASE("query sets") {
  auto doc = dl::parse(std::string(kFusion) + "tbox { A <= B; } query term-sat A & !B;");
  auto tr = dl::translate(doc);
  CHECK(tr.mode == dl::QueryMode::TermSat);
  AssertionSet want{Inclusion{var("A"), var("B")}, Membership{"$a", conj(var("A"), neg(var("B")))}};
  CHECK(tr.query_set() == want);
  CHECK_FALSE(tr.uses_universal());
  auto u = dl::translate(dl::parse(std::string(kFusion) + "abox { (forall U . A)(a); }"));
  CHECK(u.uses_universal());
}

TEST_CASE("pretty rejects what the grammar cannot spell") {
  SurrogateTable table;
  Term alien = at_most(1, "R2", Component::Second);
  Term s = surrogate(Component::First, conj(var("A"), alien), table);
  CHECK_THROWS_AS(dl::pretty(s), Error);
  CHECK_THROWS_AS(dl::pretty(mk_app(symbols::opaque("f", 1, Component::First), {var("A")})), Error);
  CHECK_THROWS_AS(dl::pretty(var("top")), Error);
  CHECK_THROWS_AS(dl::pretty(Assertion{Membership{"$a", var("A")}}), Error);
  CHECK(dl::pretty(Assertion{Membership{"a", conj(var("A"), var("B"))}}) == "(A & B)(a)");
  CHECK(dl::pretty(Assertion{Membership{"a", neg(var("A"))}}) == "(!A)(a)");
}

TEST_CASE("round trip on the golden documents") {
  for (const char* text : {
           "component 1 ALCN { roles R1, R2; } abox { (A & forall (R1 & R2) . !(B & atleast 2 R1))(a); }",
           "component 1 ALC { roles child; } abox { Woman(MARY); child(MARY, TOM); Human(TOM); }",
           "component 1 ALC { roles R; } query term-sat top;",
       }) {
    auto tr = dl::translate(dl::parse(text));
    auto back = dl::translate(dl::parse(dl::pretty(tr)));
    CHECK(back.query_set() == tr.query_set());
    CHECK(back.abox == tr.abox);
    CHECK(back.vocabulary.functions() == tr.vocabulary.functions());
  }
}

TEST_CASE("random documents round trip and keep their meaning") {
  gen::Rng rng(7);
  for (const auto& profile : {gen::alc_alcn(), gen::alcf_alcr()}) {
    auto cls = gen::model_class_of(profile);
    for (int i = 0; i < 150; ++i) {
      auto doc = gen::random_document(rng, profile);
      REQUIRE(dl::validate(doc).empty());
      auto tr = dl::translate(doc);
      auto text = dl::pretty(tr);
      auto back = dl::translate(dl::parse(text));
      CHECK_MESSAGE(back.query_set() == tr.query_set(), text);
      CHECK(back.vocabulary.functions() == tr.vocabulary.functions());
      CHECK(dl::validate(dl::parse(text)).empty());

      Concept c = gen::random_concept(rng, profile, 2, 6);
      Term t = dl::translate_concept(doc, c);
      auto m = gen::random_model(rng, gen::uniform(rng, 1, 4), cls, profile.vars);
      CHECK(dl::dl_eval(c, m) == eval(t, m));
    }
  }
}

TEST_CASE("role expression semantics on the tree") {
  FiniteInterpretation m(3);
  m.declare_role("R");
  m.add_edge("R", 0, 1);
  m.add_edge("R", 1, 2);
  auto rel = [&](const char* text) {
    return dl::dl_eval(dl::parse_concept(std::string("exists ") + text + " . top").role, m);
  };
  CHECK(rel("R^+")[0] == (point_bit(1) | point_bit(2)));
  CHECK(rel("R^-")[2] == point_bit(1));
  CHECK(rel("(R ; R)")[0] == point_bit(2));
  CHECK(rel("~R")[0] == (point_bit(0) | point_bit(2)));
  CHECK(rel("U")[1] == m.full());
  m.set_object("i", 2);
  CHECK(dl::dl_eval(dl::parse_concept("exists R . {i}"), m) == point_bit(1));
}

TEST_CASE("json codec round trips") {
  Term t = conj(var("A"), some("R1", neg(at_most(1, "R2", Component::Second))));
  CHECK(codec::term_from_json(codec::to_json(t)) == t);
  auto j = codec::to_json(mk_and(var("x"), var("y")));
  CHECK(j.dump() == R"({"op":"and","args":[{"op":"var","name":"x"},{"op":"var","name":"y"}]})");
  Assertion m = Membership{"a", t};
  CHECK(codec::to_json(m)["kind"] == "member");
  CHECK(codec::to_json(m)["obj"] == "a");
  AssertionSet g{Inclusion{var("A"), mk_top()}, RoleAssertion{"R1", "a", "b"}, m};
  CHECK(codec::assertions_from_json(codec::to_json(g)) == g);

  FiniteInterpretation model(3);
  model.declare_role("R1", {true, false});
  model.add_edge("R1", 0, 1);
  model.set_var("A", point_bit(1));
  model.set_object("a", 0);
  auto mj = codec::to_json(model);
  CHECK(mj["domain"] == 3);
  CHECK(mj["roles"]["R1"].dump() == "[[0,1]]");
  CHECK(codec::model_from_json(mj) == model);

  auto sig = dl::translate(dl::parse(std::string(kFusion) + "abox { (exists R1 . atmost 1 R2)(a); }"))
                 .vocabulary;
  auto sig2 = codec::signature_from_json(codec::to_json(sig));
  CHECK(sig2.functions() == sig.functions());
  CHECK(sig2.relations() == sig.relations());

  CHECK_THROWS_AS(codec::term_from_json(codec::json::parse(R"({"op":"and","args":[]})")), Error);
  CHECK_THROWS_AS(codec::term_from_json(codec::json::parse(R"({"op":"nand"})")), Error);
  CHECK_THROWS_AS(codec::model_from_json(codec::json::parse(R"({"domain":2,"objects":{"a":5}})")),
                  Error);
}
