#include "adsfuse/reasoner.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_set>

#include "adsfuse/error.hpp"
#include "adsfuse/surrogation.hpp"
#include "adsfuse/tableau.hpp"

namespace adsfuse {

std::string_view to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Sat: return "sat";
    case Verdict::Kind::Unsat: return "unsat";
    case Verdict::Kind::Resource: return "resource";
  }
  return "?";
}

std::string_view logic_name(Logic l) {
  switch (l) {
    case Logic::ALC: return "ALC";
    case Logic::ALCN: return "ALCN";
    case Logic::ALC_Rplus: return "ALC_R+";
    case Logic::ALC_f: return "ALC_f";
  }
  return "?";
}

std::optional<Logic> parse_logic(std::string_view name) {
  for (Logic l : {Logic::ALC, Logic::ALCN, Logic::ALC_Rplus, Logic::ALC_f})
    if (logic_name(l) == name) return l;
  if (name == "ALCR+" || name == "ALC_Rplus") return Logic::ALC_Rplus;
  if (name == "ALCf") return Logic::ALC_f;
  return std::nullopt;
}

bool ComponentSpec::has_role(const std::string& r) const {
  return std::find(roles.begin(), roles.end(), r) != roles.end();
}

bool ComponentSpec::admits(Symbol f) const {
  if (f->component() != index || !f->role_atomic() || !has_role(f->role())) return false;
  switch (f->constructor()) {
    case Constructor::Exists:
    case Constructor::Forall: return true;
    case Constructor::AtLeast:
    case Constructor::AtMost: return logic == Logic::ALCN;
    default: return false;
  }
}

ComponentCapabilities ComponentSpec::capabilities() const {
  ComponentCapabilities c;
  c.local = is_local();
  c.logic_name = std::string(logic_name(logic));
  return c;
}

ModelClass ComponentSpec::model_class() const {
  ModelClass cls;
  for (const auto& r : roles) cls.add(r, RoleFlags{transitive.count(r) > 0, functional.count(r) > 0});
  return cls;
}

Verdict ComponentReasoner::decide_term_sat(Term t, bool want_witness) {
  return decide_object_sat(AssertionSet{Membership{"$a", t}}, want_witness);
}

Verdict ComponentReasoner::decide_relativized_term_sat(Term t, std::span<const Inclusion> tbox,
                                                       bool want_witness) {
  AssertionSet gamma;
  for (const auto& inc : tbox) gamma.add(inc);
  gamma.add(Membership{"$a", t});
  return decide_relativized_sat(gamma, want_witness);
}

Term ComponentReasoner::combined_covering_term(std::span<const Symbol> e) const {
  std::vector<Term> parts;
  for (Symbol f : e) {
    Term t = covering_term(f);
    if (t.kind() == TermKind::Top) continue;
    if (std::find(parts.begin(), parts.end(), t) == parts.end()) parts.push_back(t);
  }
  return mk_and_all(parts);
}

namespace {

class TableauReasoner final : public ComponentReasoner {
 public:
  TableauReasoner(ComponentSpec spec, ReasonerOptions opts)
      : spec_(std::move(spec)), opts_(opts) {
    if (!spec_.is_local())
      throw Error(ErrorCode::NonLocalComponent,
                  "component " + std::string(logic_name(spec_.logic)) + " is not local");
  }

  const ComponentSpec& spec() const override { return spec_; }

  Verdict decide_object_sat(const AssertionSet& gamma, bool want_witness) override {
    if (gamma.has_term_assertions())
      throw Error(ErrorCode::Precondition, "object satisfiability takes no term assertions");
    return decide_relativized_sat(gamma, want_witness);
  }

  Verdict decide_relativized_sat(const AssertionSet& gamma, bool want_witness) override {
    check_symbols(gamma);
    auto tbox = gamma.inclusions();
    std::string tkey;
    for (const auto& inc : tbox)
      tkey += std::to_string(inc.lhs.id()) + "<" + std::to_string(inc.rhs.id()) + ";";
    auto groups = connected_objects(gamma);
    if (groups.empty()) groups.emplace_back();
    std::vector<FiniteInterpretation> parts;
    bool have_all = want_witness;
    for (const auto& group : groups) {
      std::set<std::string> objs(group.begin(), group.end());
      AssertionSet piece = restrict_to_objects(gamma, objs);
      std::string key = tkey + "|" + piece_key(piece, group);
      Verdict v;
      {
        std::lock_guard lock(mu_);
        ++stats_.calls;
        auto it = memo_.find(key);
        if (it != memo_.end() && (!want_witness || it->second.is_unsat() || it->second.witness)) {
          ++stats_.cache_hits;
          v = it->second;
        } else {
          auto& tab = session(tkey, tbox);
          auto before = tab.expansions();
          v = tab.decide(piece, want_witness);
          stats_.expansions += tab.expansions() - before;
          memo_[key] = v;
        }
      }
      if (v.is_unsat()) return v;
      if (want_witness && v.witness) {
        parts.push_back(rename_objects(*v.witness, piece, group));
      } else {
        have_all = false;
      }
    }
    if (!have_all) return Verdict::sat();
    auto merged = parts.size() == 1 ? parts[0] : safe_union(parts);
    if (!merged) return Verdict::sat();
    if (!check(gamma, *merged))
      throw Error(ErrorCode::Internal, "tableau witness fails the model check");
    return Verdict::sat(std::move(merged));
  }

  Term covering_term(Symbol f) const override {
    if (!spec_.admits(f))
      throw Error(ErrorCode::UnsupportedSymbol, "no covering term for " + f->name());
    if (f->arity() == 0) return mk_top();
    return mk_app(symbols::forall(f->role(), spec_.index), {mk_var(kCoverVar)});
  }

  ReasonerStats stats() const override {
    std::lock_guard lock(mu_);
    return stats_;
  }

 private:
  void check_symbols(const AssertionSet& gamma) const {
    for (Term t : gamma.terms())
      for (Term s : subterms(t))
        if (s.is_app() && !spec_.admits(s.symbol()))
          throw Error(ErrorCode::UnsupportedSymbol,
                      "symbol " + s.symbol()->name() + " does not belong to component " +
                          std::string(logic_name(spec_.logic)));
    for (const auto& r : gamma.role_assertions())
      if (!spec_.has_role(r.role))
        throw Error(ErrorCode::UnsupportedSymbol, "role " + r.role + " does not belong to this component");
  }

  // Object names are replaced by their position so renamed copies share a key.
  static std::string piece_key(const AssertionSet& piece, const std::vector<std::string>& group) {
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < group.size(); ++i) pos[group[i]] = i;
    std::vector<std::string> parts;
    for (const auto& a : piece) {
      if (auto* m = std::get_if<Membership>(&a))
        parts.push_back("m" + std::to_string(pos[m->object]) + ":" + std::to_string(m->term.id()));
      else if (auto* r = std::get_if<RoleAssertion>(&a))
        parts.push_back("r" + r->role + ":" + std::to_string(pos[r->from]) + ":" +
                        std::to_string(pos[r->to]));
    }
    std::sort(parts.begin(), parts.end());
    std::string key = std::to_string(group.size());
    for (const auto& p : parts) key += "," + p;
    return key;
  }

  // A memoized witness may come from a renamed copy of the piece.
  static FiniteInterpretation rename_objects(const FiniteInterpretation& w, const AssertionSet& piece,
                                             const std::vector<std::string>& group) {
    if (check(piece, w)) return w;
    // Objects sit on points 0..k-1 in name order, so rebind by position.
    FiniteInterpretation out(w.size());
    for (const auto& [r, f] : w.role_flags()) out.declare_role(r, f);
    for (const auto& [r, succ] : w.roles())
      for (unsigned p = 0; p < w.size(); ++p)
        for (unsigned q = 0; q < w.size(); ++q)
          if ((succ[p] >> q) & 1U) out.add_edge(r, p, q);
    for (const auto& [v, s] : w.vars()) out.set_var(v, s);
    for (std::size_t i = 0; i < group.size(); ++i) out.set_object(group[i], static_cast<unsigned>(i));
    return out;
  }

  static std::optional<FiniteInterpretation> safe_union(const std::vector<FiniteInterpretation>& parts) {
    unsigned total = 0;
    for (const auto& p : parts) total += p.size();
    if (total > kMaxDomain) return std::nullopt;
    return disjoint_union(parts);
  }

  Tableau& session(const std::string& key, const std::vector<Inclusion>& tbox) {
    auto it = sessions_.find(key);
    if (it != sessions_.end()) return *it->second;
    if (sessions_.size() > 256) sessions_.clear();
    TableauConfig cfg;
    cfg.gcis = tbox;
    cfg.roles.insert(spec_.roles.begin(), spec_.roles.end());
    cfg.transitive_roles = spec_.transitive;
    cfg.functional_roles = spec_.functional;
    cfg.number_restrictions = spec_.logic == Logic::ALCN;
    cfg.blocking = true;
    cfg.max_expansions = opts_.max_expansions;
    cfg.max_witness_points = std::min(opts_.max_witness_points, kMaxDomain);
    cfg.fault_ignore_atom_clash = opts_.fault_ignore_atom_clash;
    auto [pos, _] = sessions_.emplace(key, std::make_unique<Tableau>(std::move(cfg)));
    return *pos->second;
  }

  ComponentSpec spec_;
  ReasonerOptions opts_;
  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<Tableau>> sessions_;
  std::map<std::string, Verdict> memo_;
  ReasonerStats stats_;
};

}  // namespace

std::shared_ptr<ComponentReasoner> make_reasoner(ComponentSpec spec, ReasonerOptions opts) {
  return std::make_shared<TableauReasoner>(std::move(spec), opts);
}

// ---------------------------------------------------------------------------
// Propositional base

namespace {

// Three-valued evaluation under a partial valuation: 1, 0 or -1 (unknown).
int eval3(Term t, const std::map<std::string, bool>& val) {
  switch (t.kind()) {
    case TermKind::Var: {
      auto it = val.find(t.name());
      return it == val.end() ? -1 : (it->second ? 1 : 0);
    }
    case TermKind::Top: return 1;
    case TermKind::Bot: return 0;
    case TermKind::Not: {
      int v = eval3(t.arg(0), val);
      return v < 0 ? -1 : 1 - v;
    }
    case TermKind::And: {
      int a = eval3(t.arg(0), val);
      if (a == 0) return 0;
      int b = eval3(t.arg(1), val);
      if (b == 0) return 0;
      return (a == 1 && b == 1) ? 1 : -1;
    }
    case TermKind::Or: {
      int a = eval3(t.arg(0), val);
      if (a == 1) return 1;
      int b = eval3(t.arg(1), val);
      if (b == 1) return 1;
      return (a == 0 && b == 0) ? 0 : -1;
    }
    case TermKind::App: break;
  }
  throw Error(ErrorCode::Precondition, "propositional reasoning met a function symbol");
}

bool extend(Term t, const std::vector<std::string>& vars, std::size_t i, std::map<std::string, bool>& val) {
  int v = eval3(t, val);
  if (v >= 0) return v == 1;
  for (bool b : {true, false}) {
    val[vars[i]] = b;
    if (extend(t, vars, i + 1, val)) return true;
  }
  val.erase(vars[i]);
  return false;
}

std::optional<std::map<std::string, bool>> solve_propositional(Term t) {
  auto fv = free_vars(t);
  std::vector<std::string> vars(fv.begin(), fv.end());
  std::map<std::string, bool> val;
  if (!extend(t, vars, 0, val)) return std::nullopt;
  return val;
}

}  // namespace

bool propositionally_satisfiable(Term t) { return solve_propositional(t).has_value(); }

Verdict decide_propositional(const AssertionSet& gamma) {
  if (gamma.has_term_assertions())
    throw Error(ErrorCode::Precondition, "propositional base takes object assertions only");
  auto objects = gamma.objects();
  if (objects.empty()) return Verdict::sat(FiniteInterpretation(1));
  std::map<std::string, std::vector<Term>> by_object;
  for (const auto& m : gamma.memberships()) by_object[m.object].push_back(m.term);
  FiniteInterpretation w(static_cast<unsigned>(std::min<std::size_t>(objects.size(), kMaxDomain)));
  const bool fits = objects.size() <= kMaxDomain;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    Term conj = mk_and_all(by_object[objects[i]]);
    auto val = solve_propositional(conj);
    if (!val) return Verdict::unsat();
    if (!fits) continue;
    w.set_object(objects[i], static_cast<unsigned>(i));
    for (const auto& [name, b] : *val)
      if (b) w.set_var(name, w.var(name) | point_bit(static_cast<unsigned>(i)));
  }
  if (!fits) return Verdict::sat();
  for (const auto& r : gamma.role_assertions())
    w.add_edge(r.role, *w.object(r.from), *w.object(r.to));
  return Verdict::sat(std::move(w));
}

}  // namespace adsfuse
