#include <doctest.h>

#include <set>

#include "adsfuse/error.hpp"
#include "adsfuse/random.hpp"
#include "adsfuse/surrogation.hpp"
#include "dl.hpp"

using namespace adsfuse;
using namespace adsfuse::testing;

namespace {

// f belongs to the first component, g to the second.
Term f(Term a) { return mk_app(symbols::opaque("f", 1, Component::First), {a}); }
Term g(Term a, Term b) { return mk_app(symbols::opaque("g", 2, Component::Second), {a, b}); }
Term g1(Term a) { return mk_app(symbols::opaque("g", 1, Component::Second), {a}); }

const Term x = mk_var("x");
const Term y = mk_var("y");

std::set<Term> as_set(const TypeAtomSet& atoms) { return {atoms.atoms().begin(), atoms.atoms().end()}; }

bool in_first(Symbol s) { return s->component() == Component::First; }
bool in_second(Symbol s) { return s->component() == Component::Second; }

}  // namespace

TEST_CASE("surrogation replaces topmost alien subterms") {
  SurrogateTable table;
  Term inner = g(x, f(g(x, y)));
  Term t = f(inner);
  Term s = surrogate(Component::First, t, table);
  CHECK(s == f(table.surrogate_for(inner)));
  CHECK(table.size() == 1);

  Term u = mk_and(f(x), g(x, y));
  CHECK(surrogate(Component::First, u, table) == mk_and(f(x), table.surrogate_for(g(x, y))));

  Term pure = f(mk_not(f(x)));
  CHECK(surrogate(Component::First, pure, table) == pure);
  CHECK(surrogate(Component::Second, g(x, y), table) == g(x, y));
}

TEST_CASE("surrogate names are stable and reserved") {
  SurrogateTable a, b;
  Term s1 = a.surrogate_for(g(x, y));
  Term s2 = b.surrogate_for(g(x, y));
  CHECK(s1 == s2);
  CHECK(s1.is_surrogate());
  CHECK(s1.name().starts_with("$t-"));
  CHECK(a.surrogate_for(g(x, y)) == s1);
  CHECK(a.original(s1.name()) == g(x, y));
  CHECK(a.surrogate_for(g(y, x)) != s1);
}

TEST_CASE("desurrogation inverts surrogation") {
  SurrogateTable table;
  Term sx = table.surrogate_for(g(x, y));
  CHECK(desurrogate(f(sx), table) == f(g(x, y)));
  Term t = f(g(x, f(g(x, y))));
  CHECK(desurrogate(surrogate(Component::First, t, table), table) == t);
  CHECK(desurrogate(mk_and(x, f(y)), table) == mk_and(x, f(y)));
  try {
    desurrogate(mk_var("$t-unknown"), table);
    FAIL("expected an unknown-surrogate error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownSurrogate);
  }
}

TEST_CASE("random terms survive the round trip") {
  gen::Rng rng(17);
  for (auto profile : {gen::alc_alcn(), gen::alcf_alcr()}) {
    auto syms = gen::symbols_of(profile);
    for (int k = 0; k < 300; ++k) {
      Term t = gen::random_term(rng, profile.vars, syms, 3, 7);
      SurrogateTable table;
      for (Component c : {Component::First, Component::Second}) {
        Term s = surrogate(c, t, table);
        CHECK(desurrogate(s, table) == t);
        auto alien = c == Component::First ? in_second : in_first;
        CHECK_FALSE(mentions(s, alien));
        auto own = [c](Symbol f) { return f->component() == c; };
        CHECK(e_depth(own, s) <= e_depth(own, t));
      }
    }
  }
}

TEST_CASE("alien closure") {
  Term t = f(g(x, f(g(x, y))));
  auto sub1 = alien_closure(Component::First, std::vector<Term>{t});
  CHECK(as_set(sub1) == std::set<Term>{g(x, f(g(x, y))), f(g(x, y)), g(x, y), x, y});
  CHECK(sub1.size() == 5);

  auto vars_only = alien_closure(Component::First, std::vector<Term>{mk_and(x, mk_not(y))});
  CHECK(as_set(vars_only) == std::set<Term>{x, y});

  auto sub_gf = alien_closure(Component::First, std::vector<Term>{g1(f(x))});
  CHECK(as_set(sub_gf) == std::set<Term>{g1(f(x)), f(x), x});

  CHECK(topmost_aliens(Component::First, mk_and(f(x), g(x, y))) == std::vector<Term>{g(x, y)});
}

TEST_CASE("consistency sets") {
  Term le = at_most(1, "R2", Component::Second);
  Term ge = at_least(2, "R2", Component::Second);
  Signature sig;
  sig.add_function(le.symbol());
  sig.add_function(ge.symbol());
  auto atoms = std::make_shared<const TypeAtomSet>(std::vector<Term>{ge, le}, sig.order());
  REQUIRE(atoms->atoms() == std::vector<Term>{le, ge});
  auto types = consistency_set(atoms);
  std::vector<Term> got;
  for (const auto& t : types) got.push_back(t.materialize());
  CHECK(got == std::vector<Term>{mk_and(le, ge), mk_and(le, mk_not(ge)), mk_and(mk_not(le), ge),
                                 mk_and(mk_not(le), mk_not(ge))});
  CHECK(types[1].sign_string() == "+-");
  CHECK(types[1] == TypeDescriptor(atoms, types[1].signs()));
  CHECK_FALSE(types[1] == types[2]);

  auto none = consistency_set(std::make_shared<const TypeAtomSet>());
  REQUIRE(none.size() == 1);
  CHECK(none[0].materialize() == mk_top());

  for (unsigned n = 0; n <= 6; ++n) {
    std::vector<Term> vs;
    for (unsigned k = 0; k < n; ++k) vs.push_back(mk_var("v" + std::to_string(k)));
    CHECK(consistency_set(std::make_shared<const TypeAtomSet>(vs, TermOrder{})).size() == (1U << n));
  }
}

TEST_CASE("type cap") {
  std::vector<Term> vs;
  for (unsigned k = 0; k < 17; ++k) vs.push_back(mk_var("v" + std::to_string(k)));
  auto atoms = std::make_shared<const TypeAtomSet>(vs, TermOrder{});
  try {
    consistency_set(atoms);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(e.detail() == "type-cap");
  }
  CHECK(consistency_set(atoms, 17).size() == (1U << 17));
}

TEST_CASE("E-depth") {
  CHECK(e_depth(in_first, mk_and(x, mk_not(y))) == 0);
  Term t = f(g1(f(x)));
  CHECK(e_depth(in_first, t) == 2);
  CHECK(e_depth(in_second, t) == 1);
  CHECK(component_depth(Component::First, t) == 2);
  std::vector<Term> ts{f(x), t, y};
  CHECK(e_depth(in_first, ts) == 2);
}

TEST_CASE("alternation depths") {
  CHECK(alternation_depths(mk_and(x, y)).total() == 0);
  auto d = alternation_depths(f(g1(f(x))));
  CHECK(d.first == 2);
  CHECK(d.second == 3);
  CHECK(d.total() == 5);
  auto pure = alternation_depths(f(f(x)));
  CHECK(pure.first == 0);
  CHECK(pure.second == 1);

  // Sets combine componentwise maxima.
  std::vector<Term> mixed{f(x), g1(x)};
  CHECK(alternation_depth(mixed) == 2);
  CHECK(alternation_depth(alien_closure(Component::First, mixed).atoms()) < 2);
}

TEST_CASE("alternation depth drops for one consistency set") {
  gen::Rng rng(23);
  for (auto profile : {gen::alc_alcn(), gen::alcf_alcr()}) {
    auto syms = gen::symbols_of(profile);
    for (int k = 0; k < 300; ++k) {
      std::vector<Term> ts;
      for (unsigned n = gen::uniform(rng, 1, 3); n > 0; --n)
        ts.push_back(gen::random_term(rng, profile.vars, syms, 3, 6));
      unsigned a = alternation_depth(ts);
      if (a == 0) continue;
      unsigned a1 = alternation_depth(alien_closure(Component::First, ts).atoms());
      unsigned a2 = alternation_depth(alien_closure(Component::Second, ts).atoms());
      CHECK(std::min(a1, a2) < a);
    }
  }
}

TEST_CASE("iterated covers") {
  Term t = f(x);
  CHECK(iterate_cover(t, 0) == x);
  CHECK(iterate_cover(t, 1) == mk_and(f(x), x));
  CHECK(iterate_cover(t, 2) == mk_and(f(f(x)), mk_and(f(x), x)));
  CHECK(apply_cover(t, "x", 1, y) == mk_and(f(y), y));
  CHECK_THROWS_AS(iterate_cover(g(x, y), 1), Error);
}
