#include "adsfuse/random.hpp"

#include <algorithm>

namespace adsfuse::gen {

unsigned uniform(Rng& rng, unsigned lo, unsigned hi) {
  return std::uniform_int_distribution<unsigned>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

namespace {

ComponentSpec component(Component index, Logic logic, std::vector<std::string> roles) {
  ComponentSpec c;
  c.index = index;
  c.logic = logic;
  c.roles = std::move(roles);
  return c;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[uniform(rng, 0, static_cast<unsigned>(xs.size()) - 1)];
}

}  // namespace

Profile alc_alcn() {
  Profile p;
  p.name = "ALC+ALCN";
  p.first = component(Component::First, Logic::ALC, {"R1", "S1"});
  p.second = component(Component::Second, Logic::ALCN, {"R2", "S2"});
  p.vars = {"A", "B"};
  return p;
}

Profile alcf_alcr() {
  Profile p;
  p.name = "ALC_f+ALC_R+";
  p.first = component(Component::First, Logic::ALC_f, {"F1", "G1"});
  p.first.functional = {"F1"};
  p.second = component(Component::Second, Logic::ALC_Rplus, {"Q1", "Q2"});
  p.second.transitive = {"Q1"};
  p.vars = {"A", "B"};
  return p;
}

std::vector<Symbol> symbols_of(const ComponentSpec& c, unsigned max_count) {
  std::vector<Symbol> out;
  for (const auto& r : c.roles) {
    out.push_back(symbols::exists(r, c.index));
    out.push_back(symbols::forall(r, c.index));
    if (c.logic == Logic::ALCN)
      for (unsigned n = 0; n <= max_count; ++n) {
        out.push_back(symbols::at_least(n, r, c.index));
        out.push_back(symbols::at_most(n, r, c.index));
      }
  }
  return out;
}

std::vector<Symbol> symbols_of(const Profile& p) {
  auto out = symbols_of(p.first, p.max_count);
  auto more = symbols_of(p.second, p.max_count);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

FusionSignature signature_of(const Profile& p) {
  Signature v;
  for (const auto& x : p.vars) v.add_set_var(x);
  for (Symbol f : symbols_of(p)) v.add_function(f);
  return fuse(p.first, p.second, v);
}

ModelClass model_class_of(const Profile& p) {
  ModelClass cls = p.first.model_class();
  for (const auto& [r, f] : p.second.model_class().roles) cls.add(r, f);
  return cls;
}

Term random_term(Rng& rng, std::span<const std::string> vars, std::span<const Symbol> syms,
                 unsigned depth, unsigned size) {
  std::vector<Symbol> unary, nullary;
  for (Symbol f : syms) (f->arity() == 0 ? nullary : unary).push_back(f);
  auto leaf = [&]() -> Term {
    unsigned r = uniform(rng, 0, 9);
    if (r < 6 || nullary.empty()) {
      if (vars.empty()) return r % 2 ? mk_top() : mk_bot();
      return mk_var(vars[uniform(rng, 0, static_cast<unsigned>(vars.size()) - 1)]);
    }
    if (r < 9) return mk_app(pick(rng, nullary), {});
    return coin(rng, 0.5) ? mk_top() : mk_bot();
  };
  auto rec = [&](auto& self, unsigned d, unsigned budget) -> Term {
    if (budget == 0) return leaf();
    unsigned r = uniform(rng, 0, 9);
    if (r < 2) return leaf();
    if (r < 4) return mk_not(self(self, d, budget - 1));
    if (r < 6 || d == 0 || unary.empty()) {
      if (budget < 2) return leaf();
      unsigned left = uniform(rng, 0, budget - 2);
      Term a = self(self, d, left);
      Term b = self(self, d, budget - 2 - left);
      return coin(rng, 0.5) ? mk_and(a, b) : mk_or(a, b);
    }
    return mk_app(pick(rng, unary), {self(self, d - 1, budget - 1)});
  };
  return rec(rec, depth, size);
}

AssertionSet random_gamma(Rng& rng, const Profile& p, const GammaShape& shape) {
  auto syms = symbols_of(p);
  std::vector<std::string> roles = p.first.roles;
  roles.insert(roles.end(), p.second.roles.begin(), p.second.roles.end());
  AssertionSet g;
  unsigned target = uniform(rng, 1, shape.max_size);
  auto term = [&] { return random_term(rng, p.vars, syms, shape.depth, shape.term_size); };
  g.add(Membership{pick(rng, shape.objects), term()});
  for (unsigned guard = 0; g.size() < target && guard < 50; ++guard) {
    unsigned r = uniform(rng, 0, 9);
    if (shape.term_assertions && r < 3) {
      g.add(Inclusion{term(), term()});
    } else if (shape.role_assertions && r < 5) {
      g.add(RoleAssertion{pick(rng, roles), pick(rng, shape.objects), pick(rng, shape.objects)});
    } else {
      g.add(Membership{pick(rng, shape.objects), term()});
    }
  }
  return g;
}

FiniteInterpretation random_model(Rng& rng, unsigned domain, const ModelClass& cls,
                                  std::span<const std::string> vars,
                                  std::span<const std::string> objects, double edge_p) {
  FiniteInterpretation m(domain);
  for (const auto& [role, flags] : cls.roles) {
    m.declare_role(role, flags);
    for (unsigned p = 0; p < domain; ++p) {
      if (flags.functional) {
        if (coin(rng, edge_p * 1.5)) m.add_edge(role, p, uniform(rng, 0, domain - 1));
        continue;
      }
      for (unsigned q = 0; q < domain; ++q)
        if (coin(rng, edge_p)) m.add_edge(role, p, q);
    }
  }
  m.close_transitive();
  for (const auto& v : vars) {
    PointSet s = 0;
    for (unsigned p = 0; p < domain; ++p)
      if (coin(rng, 0.5)) s |= point_bit(p);
    m.set_var(v, s);
  }
  std::vector<unsigned> points(domain);
  for (unsigned p = 0; p < domain; ++p) points[p] = p;
  std::shuffle(points.begin(), points.end(), rng);
  for (std::size_t k = 0; k < objects.size(); ++k)
    m.set_object(objects[k], points[k % domain]);
  return m;
}

namespace {

struct RolePool {
  std::vector<std::string> all;
  std::vector<std::string> counted;  // roles of an ALCN component
};

RolePool roles_of(const Profile& p) {
  RolePool pool;
  for (const auto* c : {&p.first, &p.second})
    for (const auto& r : c->roles) {
      pool.all.push_back(r);
      if (c->logic == Logic::ALCN) pool.counted.push_back(r);
    }
  return pool;
}

dl::Concept node(dl::Concept::Kind k) {
  dl::Concept c;
  c.kind = k;
  return c;
}

dl::RoleExpr role_name(const std::string& r) {
  dl::RoleExpr e;
  e.name = r;
  return e;
}

dl::Concept concept_rec(Rng& rng, const Profile& p, const RolePool& roles, unsigned depth,
                        unsigned budget) {
  using K = dl::Concept::Kind;
  auto leaf = [&] {
    unsigned r = uniform(rng, 0, 9);
    if (r < 6) {
      dl::Concept c = node(K::Name);
      c.name = pick(rng, p.vars);
      return c;
    }
    if (r < 9 && !roles.counted.empty()) {
      dl::Concept c = node(coin(rng, 0.5) ? K::AtLeast : K::AtMost);
      c.count = uniform(rng, 0, p.max_count);
      c.role = role_name(pick(rng, roles.counted));
      return c;
    }
    return node(coin(rng, 0.5) ? K::Top : K::Bot);
  };
  if (budget == 0) return leaf();
  unsigned r = uniform(rng, 0, 9);
  if (r < 2) return leaf();
  if (r < 4) {
    dl::Concept c = node(K::Not);
    c.args.push_back(concept_rec(rng, p, roles, depth, budget - 1));
    return c;
  }
  if (r < 6 || depth == 0) {
    if (budget < 2) return leaf();
    unsigned left = uniform(rng, 0, budget - 2);
    dl::Concept c = node(coin(rng, 0.5) ? K::And : K::Or);
    c.args.push_back(concept_rec(rng, p, roles, depth, left));
    c.args.push_back(concept_rec(rng, p, roles, depth, budget - 2 - left));
    return c;
  }
  dl::Concept c = node(coin(rng, 0.5) ? K::Exists : K::Forall);
  c.role = role_name(pick(rng, roles.all));
  c.args.push_back(concept_rec(rng, p, roles, depth - 1, budget - 1));
  return c;
}

}  // namespace

dl::Concept random_concept(Rng& rng, const Profile& p, unsigned depth, unsigned size) {
  return concept_rec(rng, p, roles_of(p), depth, size);
}

dl::Document random_document(Rng& rng, const Profile& p, unsigned depth) {
  dl::Document doc;
  for (const auto* c : {&p.first, &p.second}) {
    dl::ComponentDecl d;
    d.index = index_of(c->index);
    d.logic_text = std::string(logic_name(c->logic));
    d.roles = c->roles;
    d.transitive = {c->transitive.begin(), c->transitive.end()};
    d.functional = {c->functional.begin(), c->functional.end()};
    doc.components.push_back(std::move(d));
  }
  RolePool roles = roles_of(p);
  const std::vector<std::string> individuals = {"a", "b", "c"};
  dl::Query q;
  unsigned mode = uniform(rng, 0, 2);
  q.mode = mode == 0 ? dl::QueryMode::AboxSat
                     : mode == 1 ? dl::QueryMode::TermSat : dl::QueryMode::Relativized;
  if (q.mode != dl::QueryMode::AboxSat)
    for (unsigned k = uniform(rng, 0, 2); k > 0; --k)
      doc.tbox.push_back({concept_rec(rng, p, roles, depth, 3), concept_rec(rng, p, roles, depth, 3), {}});
  if (q.mode == dl::QueryMode::TermSat) {
    q.target = concept_rec(rng, p, roles, depth, 5);
  } else {
    for (unsigned k = uniform(rng, 1, 3); k > 0; --k) {
      if (coin(rng, 0.3))
        doc.abox.push_back(dl::RoleFact{pick(rng, roles.all), pick(rng, individuals),
                                        pick(rng, individuals), {}});
      else
        doc.abox.push_back(dl::ConceptFact{concept_rec(rng, p, roles, depth, 4),
                                           pick(rng, individuals), {}});
    }
  }
  doc.query = std::move(q);
  return doc;
}

}  // namespace adsfuse::gen
