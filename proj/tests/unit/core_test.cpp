#include <doctest.h>

#include "adsfuse/assertion.hpp"
#include "adsfuse/error.hpp"
#include "adsfuse/random.hpp"
#include "adsfuse/signature.hpp"
#include "adsfuse/term.hpp"

using namespace adsfuse;

namespace {

Symbol f_sym() { return symbols::opaque("f", 1, Component::First); }
Symbol g_sym() { return symbols::opaque("g", 2, Component::Second); }
Term f(Term a) { return mk_app(f_sym(), {a}); }
Term g(Term a, Term b) { return mk_app(g_sym(), {a, b}); }

// Rebuilds t bottom-up through the constructors.
Term rebuild(Term t) {
  switch (t.kind()) {
    case TermKind::Var: return mk_var(t.name());
    case TermKind::Top: return mk_top();
    case TermKind::Bot: return mk_bot();
    case TermKind::Not: return mk_not(rebuild(t.arg(0)));
    case TermKind::And: return mk_and(rebuild(t.arg(0)), rebuild(t.arg(1)));
    case TermKind::Or: return mk_or(rebuild(t.arg(0)), rebuild(t.arg(1)));
    case TermKind::App: {
      std::vector<Term> args;
      for (Term a : t.args()) args.push_back(rebuild(a));
      return mk_app(t.symbol(), std::move(args));
    }
  }
  return {};
}

}  // namespace

TEST_CASE("terms are hash-consed") {
  Term x = mk_var("x");
  CHECK(mk_and(x, mk_not(x)) == mk_and(mk_var("x"), mk_not(mk_var("x"))));
  CHECK(mk_and(x, mk_not(x)) != mk_bot());
  CHECK(mk_and(x, mk_var("y")) != mk_and(mk_var("y"), x));
  CHECK(mk_top() == mk_top());
  CHECK(symbols::exists("R1", Component::First) == symbols::exists("R1", Component::First));
  CHECK(symbols::exists("R1", Component::First) != symbols::exists("R1", Component::Second));

  gen::Rng rng(3);
  auto p = gen::alc_alcn();
  auto syms = gen::symbols_of(p);
  for (int k = 0; k < 300; ++k) {
    Term a = gen::random_term(rng, p.vars, syms, 3, 8);
    Term b = gen::random_term(rng, p.vars, syms, 3, 8);
    CHECK(rebuild(a) == a);
    CHECK((a == b) == (to_prefix(a) == to_prefix(b)));
  }
}

TEST_CASE("application arity is checked") {
  Term x = mk_var("x");
  Symbol ex = symbols::exists("R1", Component::First);
  CHECK(mk_app(ex, {x}).symbol() == ex);
  Symbol ge = symbols::at_least(2, "R", Component::First);
  CHECK(ge->arity() == 0);
  try {
    mk_app(ge, {x});
    FAIL("expected an arity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ArityMismatch);
  }
  CHECK_THROWS_AS(mk_app(g_sym(), {x}), Error);
}

TEST_CASE("free variables") {
  Term x = mk_var("x"), y = mk_var("y");
  CHECK(free_vars(mk_and(x, mk_not(y))) == std::set<std::string>{"x", "y"});
  CHECK(free_vars(mk_top()).empty());
  CHECK(free_vars(f(g(x, f(g(x, y))))) == std::set<std::string>{"x", "y"});

  gen::Rng rng(5);
  auto p = gen::alcf_alcr();
  auto syms = gen::symbols_of(p);
  for (int k = 0; k < 200; ++k) {
    Term a = gen::random_term(rng, p.vars, syms, 2, 5);
    Term b = gen::random_term(rng, p.vars, syms, 2, 5);
    auto both = free_vars(a);
    auto fb = free_vars(b);
    both.insert(fb.begin(), fb.end());
    CHECK(free_vars(mk_and(a, b)) == both);
    CHECK(free_vars(mk_or(a, b)) == both);
    CHECK(free_vars(mk_not(a)) == free_vars(a));
  }
}

TEST_CASE("prefix serialization and constants") {
  Term x = mk_var("x");
  CHECK(to_prefix(mk_and(x, mk_app(symbols::exists("R1", Component::First), {mk_not(mk_var("y"))}))) ==
        "(and x (exists[R1] (not y)))");
  CHECK(to_prefix(mk_app(symbols::at_least(2, "R", Component::First), {})) == "atleast[2,R]");
  std::vector<Term> none;
  CHECK(mk_and_all(none) == mk_top());
  CHECK(mk_or_all(none) == mk_bot());
  CHECK(substitute(f(x), "x", mk_var("z")) == f(mk_var("z")));
  CHECK(subterms(f(f(x))).back() == f(f(x)));
}

TEST_CASE("signature pools are disjoint") {
  Signature s;
  s.add_set_var("A");
  s.add_object("a");
  s.add_relation("R", Component::First);
  s.add_function(f_sym());
  CHECK_THROWS_AS(s.add_object("A"), Error);
  CHECK_THROWS_AS(s.add_set_var("R"), Error);
  CHECK_THROWS_AS(s.add_relation("a", Component::Second), Error);
  try {
    s.add_set_var("$t-1");
    FAIL("reserved names are not declarable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NameClash);
  }
  CHECK(s.rank(f_sym()) == 0);
  CHECK(s.rank(g_sym()) == -1);
  CHECK(s.relation_component("R") == Component::First);

  CHECK(s.app("f", {s.var("A")}) == f(mk_var("A")));
  try {
    s.var("B");
    FAIL("undeclared variable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndeclaredSymbol);
  }
  CHECK_THROWS_AS(s.check(g(mk_var("A"), mk_var("A"))), Error);
  CHECK_NOTHROW(s.check(Membership{"a", f(mk_var("A"))}));
  CHECK_THROWS_AS(s.check(RoleAssertion{"S", "a", "a"}), Error);
  CHECK_THROWS_AS(s.check(Membership{"b", mk_var("A")}), Error);
  CHECK_NOTHROW(s.check(Membership{"a", mk_var("$t-abc")}));
}

TEST_CASE("declaration order drives the term order") {
  Signature s;
  Symbol later = symbols::exists("R2", Component::Second);
  Symbol earlier = symbols::exists("R1", Component::First);
  s.add_function(later);
  s.add_function(earlier);
  auto order = s.order();
  CHECK(order.compare(later, earlier) < 0);
  CHECK(order.compare(mk_app(later, {mk_top()}), mk_app(earlier, {mk_top()})) < 0);
}

TEST_CASE("assertion sets partition and collect") {
  Term x = mk_var("x"), y = mk_var("y");
  AssertionSet g{Inclusion{x, y}, Membership{"a", x}, RoleAssertion{"R", "a", "b"}};
  CHECK(g.term_assertions() == AssertionSet{Inclusion{x, y}});
  CHECK(g.object_assertions() == AssertionSet{Membership{"a", x}, RoleAssertion{"R", "a", "b"}});
  CHECK(g.terms() == std::vector<Term>{x, y});
  CHECK(g.objects() == std::vector<std::string>{"a", "b"});
  CHECK(g.has_term_assertions());
  CHECK_FALSE(g.object_assertions().has_term_assertions());

  AssertionSet empty;
  CHECK(empty.term_assertions().empty());
  CHECK(empty.object_assertions().empty());

  CHECK_FALSE(g.add(Membership{"a", x}));
  CHECK(g.size() == 3);
  AssertionSet h{RoleAssertion{"R", "a", "b"}, Membership{"a", x}, Inclusion{x, y}};
  CHECK(g == h);

  gen::Rng rng(11);
  gen::GammaShape shape;
  shape.term_assertions = true;
  for (int k = 0; k < 200; ++k) {
    auto gamma = gen::random_gamma(rng, gen::alc_alcn(), shape);
    auto t = gamma.term_assertions(), o = gamma.object_assertions();
    CHECK(t.size() + o.size() == gamma.size());
    AssertionSet joined = t;
    joined.add_all(o);
    CHECK(joined == gamma);
    for (const auto& a : t) CHECK_FALSE(o.contains(a));
  }
}

TEST_CASE("connected object groups") {
  Term x = mk_var("x");
  AssertionSet g{Membership{"c", x}, RoleAssertion{"R", "a", "b"}, Membership{"d", x},
                 RoleAssertion{"S", "d", "c"}};
  auto groups = connected_objects(g);
  CHECK(groups == std::vector<std::vector<std::string>>{{"a", "b"}, {"c", "d"}});
  CHECK(restrict_to_objects(g, {"a", "b"}) == AssertionSet{RoleAssertion{"R", "a", "b"}});
}
