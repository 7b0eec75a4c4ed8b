#include <doctest.h>

#include "adsfuse/codec.hpp"
#include "adsfuse/error.hpp"
#include "adsfuse/oracle.hpp"
#include "adsfuse/random.hpp"
#include "dl.hpp"

using namespace adsfuse;
using namespace adsfuse::testing;

namespace {

const Term A = mk_var("A");
const Term B = mk_var("B");

FiniteInterpretation one_edge() {
  FiniteInterpretation m(2);
  m.declare_role("R");
  m.add_edge("R", 0, 1);
  return m;
}

// Every interpretation over `domain` points with the given roles, variables
// and objects, found by plain counting. Returns the first that satisfies Γ.
std::optional<FiniteInterpretation> brute_force(const AssertionSet& gamma, const ModelClass& cls,
                                                const std::vector<std::string>& vars, unsigned domain) {
  auto objects = gamma.objects();
  if (objects.size() > domain) return std::nullopt;
  std::vector<std::pair<std::string, RoleFlags>> roles(cls.roles.begin(), cls.roles.end());
  const unsigned edge_bits = static_cast<unsigned>(roles.size()) * domain * domain;
  const unsigned var_bits = static_cast<unsigned>(vars.size()) * domain;
  std::vector<unsigned> placement(domain);
  for (unsigned p = 0; p < domain; ++p) placement[p] = p;
  for (std::uint64_t edges = 0; edges < (std::uint64_t{1} << edge_bits); ++edges) {
    FiniteInterpretation m(domain);
    unsigned bit = 0;
    for (const auto& [r, flags] : roles) {
      m.declare_role(r, flags);
      for (unsigned p = 0; p < domain; ++p)
        for (unsigned q = 0; q < domain; ++q, ++bit)
          if ((edges >> bit) & 1U) m.add_edge(r, p, q);
    }
    if (!m.well_formed()) continue;
    for (std::uint64_t vals = 0; vals < (std::uint64_t{1} << var_bits); ++vals) {
      for (std::size_t v = 0; v < vars.size(); ++v)
        m.set_var(vars[v], (vals >> (v * domain)) & full_set(domain));
      auto order = placement;
      do {
        for (std::size_t k = 0; k < objects.size(); ++k) m.set_object(objects[k], order[k]);
        if (check(gamma, m)) return m;
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("evaluation") {
  auto m = one_edge();
  m.set_var("x", point_bit(1));
  CHECK(eval(mk_top(), m) == m.full());
  CHECK(eval(mk_bot(), m) == 0);
  CHECK(eval(some("R", mk_var("x")), m) == point_bit(0));
  CHECK(eval(only("R", mk_var("x")), m) == m.full());
  CHECK(eval(conj(at_most(1, "R"), at_least(2, "R")), m) == 0);
  CHECK(eval(at_least(1, "R"), m) == point_bit(0));
  try {
    eval(mk_app(symbols::opaque("f", 1, Component::First), {mk_top()}), m);
    FAIL("opaque symbols have no semantics");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UninterpretedSymbol);
  }
}

TEST_CASE("the universal role is all or nothing") {
  auto m = one_edge();
  m.set_var("x", point_bit(1));
  CHECK(eval(mk_app(symbols::universal_exists(), {mk_var("x")}), m) == m.full());
  CHECK(eval(mk_app(symbols::universal_exists(), {mk_bot()}), m) == 0);
  CHECK(eval(mk_app(symbols::universal_forall(), {mk_var("x")}), m) == 0);
  CHECK(eval(mk_app(symbols::universal_forall(), {mk_top()}), m) == m.full());
}

TEST_CASE("pointwise and bottom-up evaluation agree") {
  gen::Rng rng(29);
  for (auto profile : {gen::alc_alcn(), gen::alcf_alcr()}) {
    auto syms = gen::symbols_of(profile);
    syms.push_back(symbols::universal_exists());
    syms.push_back(symbols::universal_forall());
    auto cls = gen::model_class_of(profile);
    for (int k = 0; k < 300; ++k) {
      auto m = gen::random_model(rng, gen::uniform(rng, 1, 5), cls, profile.vars);
      Term t = gen::random_term(rng, profile.vars, syms, 3, 7);
      PointSet pointwise = 0;
      for (unsigned p = 0; p < m.size(); ++p)
        if (holds_at(t, m, p)) pointwise |= point_bit(p);
      CHECK(eval(t, m) == pointwise);
    }
  }
}

TEST_CASE("assertion checks") {
  auto m = one_edge();
  m.set_var("A", point_bit(0));
  m.set_object("a", 1);
  CHECK(check(AssertionSet{Inclusion{mk_top(), mk_top()}}, m));
  CHECK_FALSE(check(AssertionSet{Membership{"a", A}}, m));
  CHECK(check(AssertionSet{Membership{"a", neg(A)}}, m));

  // A two point family: Woman ⊑ Human, Woman(MARY), child(MARY, TOM), Human(TOM).
  FiniteInterpretation fam(2);
  fam.declare_role("child");
  fam.add_edge("child", 0, 1);
  fam.set_var("Woman", point_bit(0));
  fam.set_var("Human", point_bit(0) | point_bit(1));
  fam.set_object("MARY", 0);
  fam.set_object("TOM", 1);
  AssertionSet st{Inclusion{var("Woman"), var("Human")}, Membership{"MARY", var("Woman")},
                  RoleAssertion{"child", "MARY", "TOM"}, Membership{"TOM", var("Human")}};
  CHECK(check(st, fam));
  CHECK(check(Membership{"MARY", some("child", var("Human"))}, fam));
  CHECK_FALSE(check(Membership{"TOM", some("child", mk_top())}, fam));
  CHECK_FALSE(check(Inclusion{var("Human"), var("Woman")}, fam));
  CHECK_FALSE(check(RoleAssertion{"child", "TOM", "MARY"}, fam));
}

TEST_CASE("model finder examples") {
  ModelClass cls;
  cls.add("R1");
  cls.add("R2");
  CHECK_FALSE(find_model({Membership{"a", conj(A, neg(A))}}, cls, 4).found());

  AssertionSet sibling{Membership{"a", conj(conj(some("R1", A), some("R1", neg(A))),
                                            at_most(1, "R2", Component::Second))}};
  auto r = find_model(sibling, cls, 3);
  REQUIRE(r.found());
  // a can be its own R1 successor, so two points suffice.
  CHECK(r.model->size() == 2);
  CHECK(check(sibling, *r.model));
  CHECK(brute_force(sibling, cls, {"A"}, 2).has_value());
  CHECK_FALSE(find_model(sibling, cls, 1).found());

  AssertionSet nested{Membership{"i", some("R1", conj(at_most(1, "R2", Component::Second),
                                                      at_least(2, "R2", Component::Second)))}};
  auto none = find_model(nested, cls, 6);
  CHECK_FALSE(none.found());
  CHECK(none.bound == 6);
}

TEST_CASE("model finder respects role flags") {
  ModelClass cls;
  cls.add("F", {false, true});
  cls.add("Q", {true, false});
  // Two F successors with different labels cannot exist.
  CHECK_FALSE(find_model({Membership{"a", conj(some("F", A), some("F", neg(A)))}}, cls, 4).found());
  // Q(a, b), Q(b, c) force Q(a, c).
  AssertionSet chain{RoleAssertion{"Q", "a", "b"}, RoleAssertion{"Q", "b", "c"}, Membership{"c", A},
                     Membership{"a", only("Q", neg(A))}};
  CHECK_FALSE(find_model(chain, cls, 4).found());
  auto r = find_model({RoleAssertion{"Q", "a", "b"}, RoleAssertion{"Q", "b", "c"}}, cls, 4);
  REQUIRE(r.found());
  CHECK(r.model->well_formed());
  CHECK(r.model->has_edge("Q", *r.model->object("a"), *r.model->object("c")));
}

TEST_CASE("model finder agrees with plain enumeration") {
  gen::Rng rng(31);
  gen::Profile small = gen::alc_alcn();
  small.first.roles = {"R1"};
  small.second.roles = {"R2"};
  small.vars = {"A"};
  small.max_count = 1;
  gen::Profile flagged = gen::alcf_alcr();
  flagged.first.roles = {"F1"};
  flagged.second.roles = {"Q1"};
  flagged.vars = {"A"};
  flagged.max_count = 1;
  gen::GammaShape shape;
  shape.max_size = 3;
  shape.term_size = 4;
  shape.term_assertions = true;
  shape.objects = {"a", "b"};
  int found = 0;
  for (const auto& p : {small, flagged}) {
    auto cls = gen::model_class_of(p);
    for (int k = 0; k < 120; ++k) {
      auto gamma = gen::random_gamma(rng, p, shape);
      std::optional<unsigned> smallest;
      for (unsigned n = 1; n <= 2 && !smallest; ++n)
        if (brute_force(gamma, cls, p.vars, n)) smallest = n;
      auto r = find_model(gamma, cls, 2);
      CHECK(r.found() == smallest.has_value());
      if (r.found()) {
        ++found;
        CHECK(r.model->size() == *smallest);
        CHECK(check(gamma, *r.model));
      }
    }
  }
  CHECK(found > 20);
}

TEST_CASE("disjoint unions") {
  gen::Rng rng(37);
  ModelClass cls;
  cls.add("R");
  std::vector<std::string> vars = {"A"};
  auto m = gen::random_model(rng, 3, cls, vars);
  std::vector<FiniteInterpretation> alone{m};
  CHECK(disjoint_union(alone) == m);

  std::vector<FiniteInterpretation> parts{m, gen::random_model(rng, 2, cls, vars)};
  auto u = disjoint_union(parts);
  CHECK(u.size() == 5);
  Term t = some("R", conj(A, only("R", neg(A))));
  CHECK(eval(t, u) == (eval(t, parts[0]) | (eval(t, parts[1]) << 3)));

  std::vector<FiniteInterpretation> points{FiniteInterpretation(1), FiniteInterpretation(1)};
  for (auto& p : points) p.declare_role("R");
  CHECK_FALSE(union_identity_holds(symbols::universal_exists(), points));
  CHECK(union_identity_holds(symbols::exists("R", Component::First), points));
}

TEST_CASE("covering-term verification") {
  gen::Rng rng(41);
  ModelClass cls;
  cls.add("R");
  std::vector<std::string> vars;
  Symbol ex = symbols::exists("R", Component::First);
  for (int k = 0; k < 50; ++k) {
    auto m = gen::random_model(rng, gen::uniform(rng, 1, 4), cls, vars);
    CHECK(verify_covering_term(m, ex, only("R", mk_var("x"))));
    CHECK(verify_covering_term(m, symbols::at_least(2, "R", Component::First), mk_top()));
  }
  CHECK_FALSE(verify_covering_term(one_edge(), ex, mk_app(ex, {mk_var("x")})));
}

TEST_CASE("normality") {
  gen::Rng rng(43);
  ModelClass cls;
  cls.add("R");
  std::vector<std::string> vars;
  bool refuted = false;
  for (int k = 0; k < 50; ++k) {
    auto m = gen::random_model(rng, gen::uniform(rng, 1, 4), cls, vars);
    CHECK(verify_normality(m, symbols::forall("R", Component::First)));
    refuted = refuted || !verify_normality(m, symbols::at_least(1, "R", Component::First));
  }
  CHECK(refuted);
  CHECK(verify_normality(3, [](std::span<const PointSet> xs) { return xs[0]; }, 1));
  CHECK_FALSE(verify_normality(one_edge(), symbols::exists("R", Component::First)));
}

TEST_CASE("model json") {
  FiniteInterpretation m(3);
  m.declare_role("R1");
  m.add_edge("R1", 0, 1);
  m.declare_role("Q", {true, false});
  m.set_var("A", point_bit(2));
  m.set_object("a", 0);
  auto j = codec::to_json(m);
  CHECK(j["domain"] == 3);
  CHECK(j["roles"]["R1"] == codec::json::parse("[[0,1]]"));
  CHECK(codec::model_from_json(j) == m);
  CHECK_THROWS_AS(codec::model_from_json(codec::json::parse(R"({"domain":0})")), Error);
}
