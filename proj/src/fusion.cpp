#include "adsfuse/fusion.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "adsfuse/error.hpp"

namespace adsfuse {

std::optional<Component> FusionSignature::role_owner(const std::string& role) const {
  if (first.has_role(role)) return Component::First;
  if (second.has_role(role)) return Component::Second;
  return std::nullopt;
}

std::optional<Component> FusionSignature::owner(Symbol f) const {
  if (first.admits(f)) return Component::First;
  if (second.admits(f)) return Component::Second;
  return std::nullopt;
}

FusionSignature fuse(ComponentSpec first, ComponentSpec second, Signature vocabulary) {
  for (const auto* c : {&first, &second})
    if (!c->is_local())
      throw Error(ErrorCode::NonLocalComponent,
                  std::string(logic_name(c->logic)) +
                      " component uses nominals, role complement or the universal role");
  for (const auto& r : first.roles)
    if (second.has_role(r))
      throw Error(ErrorCode::SymbolCollision, "role " + r + " is declared in both components");
  first.index = Component::First;
  second.index = Component::Second;
  for (const auto* c : {&first, &second}) {
    for (const auto& r : c->roles) {
      if (auto owner = vocabulary.relation_component(r)) {
        if (*owner != c->index)
          throw Error(ErrorCode::SymbolCollision, "role " + r + " is tagged with the other component");
      } else {
        vocabulary.add_relation(r, c->index);
      }
    }
  }
  return FusionSignature{std::move(first), std::move(second), std::move(vocabulary)};
}

namespace {

Term rebuild(Term t, std::vector<Term> args) {
  switch (t.kind()) {
    case TermKind::Not: return mk_not(args[0]);
    case TermKind::And: return mk_and(args[0], args[1]);
    case TermKind::Or: return mk_or(args[0], args[1]);
    case TermKind::App: return mk_app(t.symbol(), std::move(args));
    default: return t;
  }
}

// Replaces whole subterms, outermost first.
Term replace_subterms(Term t, const std::unordered_map<Term, Term>& repl,
                      std::unordered_map<Term, Term>& memo) {
  if (auto it = repl.find(t); it != repl.end()) return it->second;
  if (t.args().empty()) return t;
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  std::vector<Term> args;
  bool changed = false;
  for (Term a : t.args()) {
    args.push_back(replace_subterms(a, repl, memo));
    changed |= args.back() != a;
  }
  Term out = changed ? rebuild(t, std::move(args)) : t;
  memo.emplace(t, out);
  return out;
}

std::string fresh_name(const std::string& stem, std::size_t k, const std::set<std::string>& taken) {
  std::string name = stem + std::to_string(k);
  while (taken.count(name)) name += "'";
  return name;
}

std::vector<Term> materialize_all(const std::vector<TypeDescriptor>& types) {
  std::vector<Term> out;
  out.reserve(types.size());
  for (const auto& t : types) out.push_back(t.materialize());
  return out;
}

}  // namespace

FusionEngine::FusionEngine(FusionSignature sig, FusionOptions opts)
    : sig_(std::move(sig)), opts_(std::move(opts)) {
  if (!sig_.first.is_local() || !sig_.second.is_local())
    throw Error(ErrorCode::NonLocalComponent, "fusion components must be local");
  if (opts_.caps.types == 0 || opts_.caps.subsets == 0 || opts_.caps.sigma == 0)
    throw Error(ErrorCode::Precondition, "caps must be positive");
  sig_.first.index = Component::First;
  sig_.second.index = Component::Second;
  reasoners_[0] = make_reasoner(sig_.first, opts_.reasoner);
  reasoners_[1] = make_reasoner(sig_.second, opts_.reasoner);
  order_ = sig_.vocabulary.order();
}

void FusionEngine::trace(const std::string& line) const {
  if (opts_.trace) opts_.trace(line);
}

void FusionEngine::check_vocabulary(const AssertionSet& gamma) const {
  for (Term t : gamma.terms())
    for (Term s : subterms(t))
      if (s.is_app() && !sig_.owner(s.symbol()))
        throw Error(ErrorCode::UnsupportedSymbol,
                    "symbol " + s.symbol()->name() + " belongs to neither component");
  for (const auto& r : gamma.role_assertions())
    if (!sig_.role_owner(r.role))
      throw Error(ErrorCode::UnsupportedSymbol, "role " + r.role + " belongs to neither component");
}

Verdict FusionEngine::component_query(Component c, const AssertionSet& gamma, bool split) {
  ++stats_.component_calls[index_of(c)];
  auto& r = reasoner(c);
  if (!split || !gamma.role_assertions().empty()) return r.decide_relativized_sat(gamma, false);
  // Without relations every object is its own piece: one term query each.
  auto tbox = gamma.inclusions();
  std::map<std::string, std::vector<Term>> by_object;
  for (const auto& m : gamma.memberships()) by_object[m.object].push_back(m.term);
  if (by_object.empty()) return r.decide_relativized_sat(gamma, false);
  for (const auto& [obj, ts] : by_object) {
    Verdict v = r.decide_relativized_term_sat(mk_and_all(ts), tbox, false);
    if (!v.is_sat()) return v;
  }
  return Verdict::sat();
}

// ---------------------------------------------------------------------------
// Typing search shared by both theorems.

namespace {

struct Stage {
  AssertionSet base1;
  AssertionSet base2;
  std::function<Term(std::size_t, Component)> typed;  // assertion term for an object of type k
  std::function<Term(Term, Component)> sur;
  const FusionSignature* sig = nullptr;
  // Which component sets receive the surrogated membership assertions of Γ.
  bool memberships1 = true;
  bool memberships2 = false;
};

std::pair<AssertionSet, AssertionSet> assemble(const AssertionSet& gamma, const Stage& st,
                                               const std::map<std::string, std::size_t>& typing,
                                               const std::set<std::string>& objs) {
  AssertionSet g1 = st.base1;
  AssertionSet g2 = st.base2;
  for (const auto& a : objs) {
    auto k = typing.at(a);
    g1.add(Membership{a, st.typed(k, Component::First)});
    g2.add(Membership{a, st.typed(k, Component::Second)});
  }
  for (const auto& r : gamma.role_assertions()) {
    if (!objs.count(r.from) || !objs.count(r.to)) continue;
    (*st.sig->role_owner(r.role) == Component::First ? g1 : g2).add(r);
  }
  for (const auto& m : gamma.memberships()) {
    if (!objs.count(m.object)) continue;
    if (st.memberships1) g1.add(Membership{m.object, st.sur(m.term, Component::First)});
    if (st.memberships2) g2.add(Membership{m.object, st.sur(m.term, Component::Second)});
  }
  return {std::move(g1), std::move(g2)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Relativized satisfiability by type guessing.

FusionResult FusionEngine::typed_search(const AssertionSet& gamma, bool split) {
  check_vocabulary(gamma);
  FusionResult result;
  auto sur = [this](Term t, Component c) { return surrogate(c, t, table_); };
  auto atoms = std::make_shared<const TypeAtomSet>(alien_closure(Component::First, gamma, order_));
  require_type_cap(*atoms, opts_.caps.types);
  const std::size_t n = atoms->size();
  trace("typed: " + std::to_string(n) + " type atoms");

  AssertionSet tbox1, tbox2;
  for (const auto& inc : gamma.inclusions()) {
    tbox1.add(Inclusion{sur(inc.lhs, Component::First), sur(inc.rhs, Component::First)});
    if (opts_.symmetric_typed)
      tbox2.add(Inclusion{sur(inc.lhs, Component::Second), sur(inc.rhs, Component::Second)});
  }
  const std::string probe = "$v";
  auto piece_ok = [&](Term t, const AssertionSet& t1, const AssertionSet& t2) {
    AssertionSet g1 = t1, g2 = t2;
    g1.add(Membership{probe, sur(t, Component::First)});
    g2.add(Membership{probe, sur(t, Component::Second)});
    return component_query(Component::First, g1, split).is_sat() &&
           component_query(Component::Second, g2, split).is_sat();
  };

  // Viable types, pruned on literal prefixes; positive literal first keeps
  // the consistency-set order.
  std::vector<TypeDescriptor> viable;
  std::vector<Term> lits;
  std::function<void(std::size_t, std::uint64_t)> grow = [&](std::size_t k, std::uint64_t signs) {
    if (k == n) {
      viable.emplace_back(atoms, signs);
      return;
    }
    for (bool positive : {true, false}) {
      lits.push_back(positive ? (*atoms)[k] : mk_not((*atoms)[k]));
      if (piece_ok(mk_and_all(lits), tbox1, tbox2))
        grow(k + 1, positive ? signs | (std::uint64_t{1} << k) : signs);
      lits.pop_back();
    }
  };
  if (n == 0) {
    if (piece_ok(mk_top(), tbox1, tbox2)) viable.emplace_back(atoms, 0);
  } else {
    grow(0, 0);
  }
  trace("typed: " + std::to_string(viable.size()) + " viable types");

  const auto objects_vec = gamma.objects();
  const std::set<std::string> taken(objects_vec.begin(), objects_vec.end());
  const auto groups = connected_objects(gamma);

  // Tries one D: every a_t piece, then a typing for each object group.
  std::size_t choice = 0;
  auto attempt = [&](const std::vector<TypeDescriptor>& d) -> bool {
    auto terms = materialize_all(d);
    Term any = mk_or_all(terms);
    Stage st;
    st.sig = &sig_;
    st.sur = sur;
    st.memberships2 = opts_.symmetric_typed;
    st.base1 = tbox1;
    st.base1.add(Inclusion{mk_top(), sur(any, Component::First)});
    st.base2 = tbox2;
    st.base2.add(Inclusion{mk_top(), sur(any, Component::Second)});
    st.typed = [&](std::size_t k, Component c) { return sur(terms[k], c); };

    std::vector<std::string> fresh;
    for (std::size_t k = 0; k < d.size(); ++k) fresh.push_back(fresh_name("$a", k, taken));
    AssertionSet full1 = st.base1, full2 = st.base2;
    for (std::size_t k = 0; k < d.size(); ++k) {
      full1.add(Membership{fresh[k], sur(terms[k], Component::First)});
      full2.add(Membership{fresh[k], sur(terms[k], Component::Second)});
    }
    const std::size_t this_choice = choice++;
    auto record = [&](const AssertionSet& g1, const AssertionSet& g2, Verdict::Kind k1,
                      Verdict::Kind k2) {
      if (!opts_.record_subproblems) return;
      result.subproblems.push_back({this_choice, Component::First, g1, k1});
      result.subproblems.push_back({this_choice, Component::Second, g2, k2});
    };

    std::map<std::string, std::size_t> typing;
    for (const auto& group : groups) {
      std::vector<std::vector<std::size_t>> cand(group.size());
      for (std::size_t i = 0; i < group.size(); ++i) {
        for (std::size_t k = 0; k < d.size(); ++k) {
          typing[group[i]] = k;
          auto [g1, g2] = assemble(gamma, st, typing, {group[i]});
          if (component_query(Component::First, g1, split).is_sat() &&
              component_query(Component::Second, g2, split).is_sat())
            cand[i].push_back(k);
        }
        typing.erase(group[i]);
      }
      std::set<std::string> placed;
      std::function<bool(std::size_t)> place = [&](std::size_t i) {
        if (i == group.size()) return true;
        placed.insert(group[i]);
        for (std::size_t k : cand[i]) {
          typing[group[i]] = k;
          if (i > 0) {
            auto [g1, g2] = assemble(gamma, st, typing, placed);
            if (!component_query(Component::First, g1, split).is_sat() ||
                !component_query(Component::Second, g2, split).is_sat())
              continue;
          }
          if (place(i + 1)) return true;
        }
        placed.erase(group[i]);
        typing.erase(group[i]);
        return false;
      };
      if (!place(0)) {
        record(full1, full2, Verdict::Kind::Unsat, Verdict::Kind::Unsat);
        return false;
      }
    }
    auto [g1, g2] = assemble(gamma, st, typing, taken);
    g1.add_all(full1);
    g2.add_all(full2);
    // Locality makes the union of satisfiable pieces satisfiable; recheck anyway.
    Verdict v1 = component_query(Component::First, g1, split);
    Verdict v2 = component_query(Component::Second, g2, split);
    record(g1, g2, v1.kind, v2.kind);
    if (!v1.is_sat() || !v2.is_sat())
      throw Error(ErrorCode::Internal, "assembled component sets disagree with their pieces");
    TypedSearchState state;
    state.atoms = atoms;
    state.types = d;
    state.fresh_objects = fresh;
    state.typing = typing;
    state.gamma1 = std::move(g1);
    state.gamma2 = std::move(g2);
    result.typed = std::move(state);
    return true;
  };

  if (opts_.d_search == DSearch::Maximal) {
    // Greatest fixpoint: drop types whose a_t piece fails under ⊤ ⊑ ⋁D.
    // Any working D survives every round, so the limit works whenever one does.
    std::vector<TypeDescriptor> d = viable;
    while (!d.empty()) {
      Term any = mk_or_all(materialize_all(d));
      AssertionSet cover1 = tbox1, cover2 = tbox2;
      cover1.add(Inclusion{mk_top(), sur(any, Component::First)});
      cover2.add(Inclusion{mk_top(), sur(any, Component::Second)});
      std::vector<TypeDescriptor> keep;
      for (const auto& t : d)
        if (piece_ok(t.materialize(), cover1, cover2)) keep.push_back(t);
      if (keep.size() == d.size()) break;
      d = std::move(keep);
    }
    trace("typed: fixpoint keeps " + std::to_string(d.size()) + " types");
    result.verdict = !d.empty() && attempt(d) ? Verdict::sat() : Verdict::unsat();
    return result;
  }

  // Exhaustive: subsets of the viable types, smallest first.
  if (viable.size() > opts_.caps.subsets)
    throw ResourceError("subset-cap", std::to_string(viable.size()) + " viable types exceed the cap of " +
                                          std::to_string(opts_.caps.subsets));
  const std::size_t v = viable.size();
  for (std::size_t size = 1; size <= v; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      std::vector<TypeDescriptor> d;
      for (auto i : pick) d.push_back(viable[i]);
      Term any = mk_or_all(materialize_all(d));
      AssertionSet cover1 = tbox1, cover2 = tbox2;
      cover1.add(Inclusion{mk_top(), sur(any, Component::First)});
      cover2.add(Inclusion{mk_top(), sur(any, Component::Second)});
      bool pieces = std::all_of(d.begin(), d.end(), [&](const TypeDescriptor& t) {
        return piece_ok(t.materialize(), cover1, cover2);
      });
      if (pieces && attempt(d)) {
        result.verdict = Verdict::sat();
        return result;
      }
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == v - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  result.verdict = Verdict::unsat();
  return result;
}

FusionResult FusionEngine::decide_relativized_sat(const AssertionSet& gamma) {
  return typed_search(gamma, false);
}

FusionResult FusionEngine::decide_relativized_term_sat(Term t, std::span<const Inclusion> tbox) {
  AssertionSet gamma;
  for (const auto& inc : tbox) gamma.add(inc);
  gamma.add(Membership{"$a", t});
  return typed_search(gamma, true);
}

// ---------------------------------------------------------------------------
// Satisfiability through covering terms.

Component FusionEngine::sigma_index_for(const AssertionSet& gamma) const {
  return pick_index(gamma, opts_.sigma_index);
}

Component FusionEngine::pick_index(const AssertionSet& gamma, SigmaIndex preference) const {
  auto terms = gamma.terms();
  const unsigned a = alternation_depth(terms);
  auto lowers = [&](Component i) {
    auto theta = alien_closure(i, gamma, order_);
    return alternation_depth(theta.atoms()) < a;
  };
  switch (preference) {
    case SigmaIndex::First:
      if (!lowers(Component::First))
        throw Error(ErrorCode::Precondition, "first consistency set does not lower the alternation depth");
      return Component::First;
    case SigmaIndex::Second:
      if (!lowers(Component::Second))
        throw Error(ErrorCode::Precondition, "second consistency set does not lower the alternation depth");
      return Component::Second;
    case SigmaIndex::Auto: break;
  }
  if (lowers(Component::First)) return Component::First;
  if (lowers(Component::Second)) return Component::Second;
  throw Error(ErrorCode::Internal, "neither consistency set lowers the alternation depth");
}

bool FusionEngine::fusion_term_sat(Term t, unsigned depth, unsigned limit) {
  ++stats_.sigma_queries;
  if (auto it = term_sat_memo_.find(t.id()); it != term_sat_memo_.end()) {
    ++stats_.sigma_cache_hits;
    return it->second;
  }
  AssertionSet probe{Membership{"$a", t}};
  bool sat = covering_search(probe, true, depth + 1, limit).verdict.is_sat();
  term_sat_memo_.emplace(t.id(), sat);
  return sat;
}

std::vector<TypeDescriptor> FusionEngine::sigma_for(Component i, const AssertionSet& gamma,
                                                    unsigned depth, unsigned limit) {
  auto atoms = std::make_shared<const TypeAtomSet>(alien_closure(i, gamma, order_));
  require_type_cap(*atoms, opts_.caps.types);
  const std::size_t n = atoms->size();
  std::vector<TypeDescriptor> sigma;
  if (n == 0) {
    sigma.emplace_back(atoms, 0);
    return sigma;
  }
  std::vector<Term> lits;
  std::function<void(std::size_t, std::uint64_t)> grow = [&](std::size_t k, std::uint64_t signs) {
    if (k == n) {
      sigma.emplace_back(atoms, signs);
      return;
    }
    for (bool positive : {true, false}) {
      lits.push_back(positive ? (*atoms)[k] : mk_not((*atoms)[k]));
      if (fusion_term_sat(mk_and_all(lits), depth, limit))
        grow(k + 1, positive ? signs | (std::uint64_t{1} << k) : signs);
      lits.pop_back();
    }
  };
  grow(0, 0);
  return sigma;
}

std::vector<TypeDescriptor> FusionEngine::compute_sigma(Component i, const AssertionSet& gamma) {
  check_vocabulary(gamma);
  const unsigned a = alternation_depth(gamma.terms());
  if (a > 0) {
    auto theta = alien_closure(i, gamma, order_);
    if (alternation_depth(theta.atoms()) >= a)
      throw Error(ErrorCode::Precondition, "consistency set does not lower the alternation depth");
  }
  return sigma_for(i, gamma, 0, a + 1);
}

FusionResult FusionEngine::covering_search(const AssertionSet& gamma, bool split, unsigned depth, unsigned limit) {
  if (gamma.has_term_assertions())
    throw Error(ErrorCode::Precondition, "the covering-term search takes object assertions only");
  check_vocabulary(gamma);
  if (depth > limit) throw Error(ErrorCode::Internal, "recursion exceeded the alternation bound");
  stats_.max_recursion = std::max(stats_.max_recursion, depth);
  FusionResult result;
  auto terms = gamma.terms();
  const unsigned a = alternation_depth(terms);
  if (a == 0) {
    result.verdict = decide_propositional(gamma);
    result.verdict.witness.reset();
    return result;
  }
  // A forced index only applies to the outermost call.
  const Component i = pick_index(gamma, depth == 0 ? opts_.sigma_index : SigmaIndex::Auto);
  auto sur = [this](Term t, Component c) { return surrogate(c, t, table_); };
  auto sigma = sigma_for(i, gamma, depth, limit);
  trace("covering: depth " + std::to_string(depth) + ", index " + std::to_string(index_of(i)) + ", |sigma| " +
        std::to_string(sigma.size()));

  CoveringPlan plan;
  plan.index = i;
  plan.sigma = sigma;
  plan.atoms = sigma.empty() ? std::make_shared<const TypeAtomSet>() : sigma.front().atoms_ptr();
  plan.first_depth = component_depth(Component::First, terms);
  plan.second_depth = component_depth(Component::Second, terms);
  std::vector<Symbol> used[2];
  {
    std::set<Symbol> seen;
    for (Term t : terms)
      for (Term s : subterms(t))
        if (s.is_app() && seen.insert(s.symbol()).second)
          used[*sig_.owner(s.symbol()) == Component::First ? 0 : 1].push_back(s.symbol());
    for (auto& u : used)
      std::sort(u.begin(), u.end(), [&](Symbol x, Symbol y) { return order_.compare(x, y) < 0; });
  }
  plan.first_cover = reasoner(Component::First).combined_covering_term(used[0]);
  plan.second_cover = reasoner(Component::Second).combined_covering_term(used[1]);
  if (sigma.empty()) {
    result.verdict = Verdict::unsat();
    result.covering = std::move(plan);
    return result;
  }

  auto sigma_terms = materialize_all(sigma);
  Term any = mk_or_all(sigma_terms);
  const std::string var(kCoverVar);
  Term reach1 = apply_cover(plan.first_cover, var, plan.first_depth, sur(any, Component::First));
  Term reach2 = apply_cover(plan.second_cover, var, plan.second_depth, sur(any, Component::Second));
  Stage st;
  st.sig = &sig_;
  st.sur = sur;
  // With the second consistency set the roles of the components swap.
  st.memberships1 = i == Component::First;
  st.memberships2 = i == Component::Second;
  st.typed = [&](std::size_t k, Component c) {
    return sur(mk_and(sigma_terms[k], c == Component::First ? reach1 : reach2), c);
  };

  const auto objects_vec = gamma.objects();
  const std::set<std::string> taken(objects_vec.begin(), objects_vec.end());
  AssertionSet full1, full2;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    plan.fresh_objects.push_back(fresh_name("$a", k, taken));
    full1.add(Membership{plan.fresh_objects[k], st.typed(k, Component::First)});
    full2.add(Membership{plan.fresh_objects[k], st.typed(k, Component::Second)});
  }
  auto record = [&](const AssertionSet& g1, const AssertionSet& g2, Verdict::Kind k1, Verdict::Kind k2) {
    if (!opts_.record_subproblems || depth > 0) return;
    result.subproblems.push_back({0, Component::First, g1, k1});
    result.subproblems.push_back({0, Component::Second, g2, k2});
  };
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    AssertionSet p1{Membership{plan.fresh_objects[k], st.typed(k, Component::First)}};
    AssertionSet p2{Membership{plan.fresh_objects[k], st.typed(k, Component::Second)}};
    if (!component_query(Component::First, p1, split).is_sat() ||
        !component_query(Component::Second, p2, split).is_sat()) {
      record(full1, full2, Verdict::Kind::Unsat, Verdict::Kind::Unsat);
      result.verdict = Verdict::unsat();
      result.covering = std::move(plan);
      return result;
    }
  }

  std::map<std::string, std::size_t> typing;
  for (const auto& group : connected_objects(gamma)) {
    std::vector<std::vector<std::size_t>> cand(group.size());
    for (std::size_t g = 0; g < group.size(); ++g) {
      for (std::size_t k = 0; k < sigma.size(); ++k) {
        typing[group[g]] = k;
        auto [g1, g2] = assemble(gamma, st, typing, {group[g]});
        if (component_query(Component::First, g1, split).is_sat() &&
            component_query(Component::Second, g2, split).is_sat())
          cand[g].push_back(k);
      }
      typing.erase(group[g]);
    }
    std::set<std::string> placed;
    std::function<bool(std::size_t)> place = [&](std::size_t g) {
      if (g == group.size()) return true;
      placed.insert(group[g]);
      for (std::size_t k : cand[g]) {
        typing[group[g]] = k;
        if (g > 0) {
          auto [g1, g2] = assemble(gamma, st, typing, placed);
          if (!component_query(Component::First, g1, split).is_sat() ||
              !component_query(Component::Second, g2, split).is_sat())
            continue;
        }
        if (place(g + 1)) return true;
      }
      placed.erase(group[g]);
      typing.erase(group[g]);
      return false;
    };
    if (!place(0)) {
      record(full1, full2, Verdict::Kind::Unsat, Verdict::Kind::Unsat);
      result.verdict = Verdict::unsat();
      result.covering = std::move(plan);
      return result;
    }
  }
  auto [g1, g2] = assemble(gamma, st, typing, taken);
  g1.add_all(full1);
  g2.add_all(full2);
  Verdict v1 = component_query(Component::First, g1, split);
  Verdict v2 = component_query(Component::Second, g2, split);
  record(g1, g2, v1.kind, v2.kind);
  if (!v1.is_sat() || !v2.is_sat())
    throw Error(ErrorCode::Internal, "assembled component sets disagree with their pieces");
  plan.typing = typing;
  plan.gamma1 = std::move(g1);
  plan.gamma2 = std::move(g2);
  result.covering = std::move(plan);
  result.verdict = Verdict::sat();
  return result;
}

FusionResult FusionEngine::decide_sat(const AssertionSet& gamma) {
  const unsigned a = alternation_depth(gamma.terms());
  return covering_search(gamma, false, 0, a + 1);
}

FusionResult FusionEngine::decide_term_sat(Term t) {
  AssertionSet gamma{Membership{"$a", t}};
  const unsigned a = alternation_depth(gamma.terms());
  return covering_search(gamma, true, 0, a + 1);
}

FusionResult FusionEngine::decide(const AssertionSet& gamma, FusionEngineKind kind) {
  switch (kind) {
    case FusionEngineKind::Typed: return decide_relativized_sat(gamma);
    case FusionEngineKind::Covering: return decide_sat(gamma);
    case FusionEngineKind::Auto: break;
  }
  return gamma.has_term_assertions() ? decide_relativized_sat(gamma) : decide_sat(gamma);
}

Verdict FusionEngine::decide_with_universal(const AssertionSet& gamma) {
  return lift_universal(
      gamma, [this](const AssertionSet& s) { return typed_search(s, true).verdict; }, opts_.caps.sigma);
}

// ---------------------------------------------------------------------------
// Universal role.

Term eliminate_universal_exists(Term t) {
  std::unordered_map<Term, Term> memo;
  std::function<Term(Term)> go = [&](Term s) -> Term {
    if (s.args().empty()) return s;
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    std::vector<Term> args;
    for (Term a : s.args()) args.push_back(go(a));
    Term out = s.is_app() && s.symbol()->constructor() == Constructor::UniversalExists
                   ? mk_not(mk_app(symbols::universal_forall(), {mk_not(args[0])}))
                   : rebuild(s, std::move(args));
    memo.emplace(s, out);
    return out;
  };
  return go(t);
}

Term internalize(Term t, std::span<const Inclusion> tbox) {
  if (tbox.empty()) return t;
  std::vector<Term> clauses;
  for (const auto& inc : tbox) clauses.push_back(mk_or(mk_not(inc.lhs), inc.rhs));
  return mk_and(t, mk_app(symbols::universal_forall(), {mk_and_all(clauses)}));
}

Verdict lift_universal(const AssertionSet& gamma, const RelativizedProcedure& base, std::size_t cap) {
  if (!gamma.role_assertions().empty())
    throw Error(ErrorCode::Precondition, "universal-role lifting takes no relation assertions");
  AssertionSet rewritten;
  for (const auto& a : gamma) {
    if (auto* inc = std::get_if<Inclusion>(&a))
      rewritten.add(Inclusion{eliminate_universal_exists(inc->lhs), eliminate_universal_exists(inc->rhs)});
    else if (auto* m = std::get_if<Membership>(&a))
      rewritten.add(Membership{m->object, eliminate_universal_exists(m->term)});
  }
  std::vector<Term> uterms;
  {
    std::set<std::uint64_t> seen;
    for (Term t : rewritten.terms())
      for (Term s : subterms(t))
        if (s.is_app() && s.symbol()->constructor() == Constructor::UniversalForall &&
            seen.insert(s.id()).second)
          uterms.push_back(s);
  }
  if (uterms.size() > cap)
    throw ResourceError("sigma-cap", std::to_string(uterms.size()) + " universal subterms exceed the cap of " +
                                         std::to_string(cap));
  const auto objs = rewritten.objects();
  const std::set<std::string> taken(objs.begin(), objs.end());
  std::vector<std::string> fresh;
  for (std::size_t k = 0; k < uterms.size(); ++k) fresh.push_back(fresh_name("$u", k, taken));

  const std::uint64_t guesses = std::uint64_t{1} << uterms.size();
  for (std::uint64_t mask = 0; mask < guesses; ++mask) {
    std::unordered_map<Term, Term> sigma;
    for (std::size_t k = 0; k < uterms.size(); ++k)
      sigma.emplace(uterms[k], (mask >> k) & 1U ? mk_bot() : mk_top());
    std::unordered_map<Term, Term> memo;
    auto apply = [&](Term t) { return replace_subterms(t, sigma, memo); };
    AssertionSet reduced;
    for (const auto& a : rewritten) {
      if (auto* inc = std::get_if<Inclusion>(&a))
        reduced.add(Inclusion{apply(inc->lhs), apply(inc->rhs)});
      else if (auto* m = std::get_if<Membership>(&a))
        reduced.add(Membership{m->object, apply(m->term)});
    }
    for (std::size_t k = 0; k < uterms.size(); ++k) {
      Term body = apply(uterms[k].arg(0));
      if ((mask >> k) & 1U)
        reduced.add(Membership{fresh[k], mk_not(body)});
      else
        reduced.add(Inclusion{mk_top(), body});
    }
    Verdict v = base(reduced);
    if (v.is_sat()) return v;
  }
  return Verdict::unsat();
}

}  // namespace adsfuse
