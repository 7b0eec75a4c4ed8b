#include "adsfuse/tableau.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <unordered_map>

#include "adsfuse/error.hpp"

namespace adsfuse {

namespace {

using CId = int;
using Label = std::vector<CId>;  // sorted, duplicate free
constexpr unsigned kUnbounded = UINT_MAX;

enum class CKind : std::uint8_t { Top, Bot, Atom, NegAtom, And, Or, Some, All, AtLeast, AtMost };

struct CNode {
  CKind kind;
  int atom = -1;
  int role = -1;
  unsigned n = 0;
  std::vector<CId> kids;  // And/Or members, or the single filler of Some/All
};

// Interned concepts in negation normal form.
class ConceptTable {
 public:
  CId intern(CNode node) {
    std::vector<long> key{static_cast<long>(node.kind), node.atom, node.role,
                          static_cast<long>(node.n)};
    key.insert(key.end(), node.kids.begin(), node.kids.end());
    auto [it, fresh] = index_.emplace(std::move(key), static_cast<CId>(nodes_.size()));
    if (fresh) nodes_.push_back(std::move(node));
    return it->second;
  }
  const CNode& at(CId c) const { return nodes_[c]; }

  CId top() { return intern({CKind::Top, -1, -1, 0, {}}); }
  CId bot() { return intern({CKind::Bot, -1, -1, 0, {}}); }
  CId atom(int a, bool positive) { return intern({positive ? CKind::Atom : CKind::NegAtom, a, -1, 0, {}}); }
  CId some(int r, CId c) { return intern({CKind::Some, -1, r, 0, {c}}); }
  CId all(int r, CId c) { return intern({CKind::All, -1, r, 0, {c}}); }
  CId at_least(int r, unsigned n) { return n == 0 ? top() : intern({CKind::AtLeast, -1, r, n, {}}); }
  CId at_most(int r, unsigned n) { return intern({CKind::AtMost, -1, r, n, {}}); }

  CId junction(CKind kind, std::vector<CId> kids) {
    const bool is_and = kind == CKind::And;
    const CKind unit = is_and ? CKind::Top : CKind::Bot;
    const CKind zero = is_and ? CKind::Bot : CKind::Top;
    std::vector<CId> flat;
    for (CId k : kids) {
      const auto& node = at(k);
      if (node.kind == unit) continue;
      if (node.kind == zero) return k;
      if (node.kind == kind)
        flat.insert(flat.end(), node.kids.begin(), node.kids.end());
      else
        flat.push_back(k);
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return is_and ? top() : bot();
    if (flat.size() == 1) return flat[0];
    return intern({kind, -1, -1, 0, std::move(flat)});
  }

  int atom_index(const std::string& name) {
    auto [it, fresh] = atom_ids_.emplace(name, static_cast<int>(atom_names_.size()));
    if (fresh) atom_names_.push_back(name);
    return it->second;
  }
  const std::string& atom_name(int a) const { return atom_names_[a]; }

 private:
  std::vector<CNode> nodes_;
  std::map<std::vector<long>, CId> index_;
  std::map<std::string, int> atom_ids_;
  std::vector<std::string> atom_names_;
};

struct PlanNode {
  Label label;
  std::vector<std::pair<int, std::shared_ptr<PlanNode>>> succ;
  const PlanNode* blocker = nullptr;  // set when this node reuses an ancestor
};
using PlanPtr = std::shared_ptr<PlanNode>;

bool contains(const Label& l, CId c) { return std::binary_search(l.begin(), l.end(), c); }

Label with(const Label& l, CId c) {
  Label out = l;
  auto it = std::lower_bound(out.begin(), out.end(), c);
  if (it == out.end() || *it != c) out.insert(it, c);
  return out;
}

// Per-role view of a label.
struct RoleDemands {
  std::vector<CId> exists;  // fillers of ∃R.C
  std::vector<CId> alls;    // what every R-successor must carry
  unsigned need = 0;
  unsigned avail = kUnbounded;
};

}  // namespace

struct Tableau::Impl {
  TableauConfig cfg;
  ConceptTable ct;
  std::vector<std::string> role_names;
  std::map<std::string, int> role_ids;
  std::vector<char> transitive;
  CId universal = -1;  // GCIs and functional roles, added to every node
  std::unordered_map<std::uint64_t, CId> translated[2];

  std::map<Label, PlanPtr> sat_cache;
  std::set<Label> unsat_cache;
  struct Frame {
    const Label* label;
    const PlanNode* node;
  };
  std::vector<Frame> stack;
  std::size_t min_dep = SIZE_MAX;
  std::uint64_t expansions = 0;

  explicit Impl(TableauConfig c) : cfg(std::move(c)) {
    for (const auto& r : cfg.roles) role_index(r);
    std::vector<CId> parts;
    for (const auto& inc : cfg.gcis) parts.push_back(translate(mk_or(mk_not(inc.lhs), inc.rhs), true));
    for (const auto& r : cfg.functional_roles) parts.push_back(ct.at_most(role_index(r), 1));
    universal = ct.junction(CKind::And, parts);
  }

  int role_index(const std::string& r) {
    auto [it, fresh] = role_ids.emplace(r, static_cast<int>(role_names.size()));
    if (fresh) {
      role_names.push_back(r);
      transitive.push_back(cfg.transitive_roles.count(r) ? 1 : 0);
    }
    return it->second;
  }

  int checked_role(Symbol f) {
    if (!f->role_atomic() || !cfg.roles.count(f->role()))
      throw Error(ErrorCode::UnsupportedSymbol,
                  "role of " + f->name() + " is not a role of this component");
    return role_index(f->role());
  }

  CId translate(Term t, bool pos) {
    auto& memo = translated[pos ? 1 : 0];
    if (auto it = memo.find(t.id()); it != memo.end()) return it->second;
    CId r = -1;
    switch (t.kind()) {
      case TermKind::Var: r = ct.atom(ct.atom_index(t.name()), pos); break;
      case TermKind::Top: r = pos ? ct.top() : ct.bot(); break;
      case TermKind::Bot: r = pos ? ct.bot() : ct.top(); break;
      case TermKind::Not: r = translate(t.arg(0), !pos); break;
      case TermKind::And:
      case TermKind::Or: {
        bool conj = (t.kind() == TermKind::And) == pos;
        r = ct.junction(conj ? CKind::And : CKind::Or,
                        {translate(t.arg(0), pos), translate(t.arg(1), pos)});
        break;
      }
      case TermKind::App: r = translate_app(t, pos); break;
    }
    memo.emplace(t.id(), r);
    return r;
  }

  CId translate_app(Term t, bool pos) {
    Symbol f = t.symbol();
    switch (f->constructor()) {
      case Constructor::Exists:
      case Constructor::Forall: {
        int r = checked_role(f);
        CId body = translate(t.arg(0), pos);
        bool some = (f->constructor() == Constructor::Exists) == pos;
        return some ? ct.some(r, body) : ct.all(r, body);
      }
      case Constructor::AtLeast:
      case Constructor::AtMost: {
        if (!cfg.number_restrictions)
          throw Error(ErrorCode::UnsupportedSymbol, "number restrictions are not enabled");
        int r = checked_role(f);
        unsigned n = f->count();
        if (f->constructor() == Constructor::AtLeast)
          return pos ? ct.at_least(r, n) : (n == 0 ? ct.bot() : ct.at_most(r, n - 1));
        return pos ? ct.at_most(r, n) : ct.at_least(r, n + 1);
      }
      default:
        throw Error(ErrorCode::UnsupportedSymbol, "no tableau rule for " + f->name());
    }
  }

  // -- labels ---------------------------------------------------------------

  Label close(Label l) {
    std::vector<CId> work = l;
    while (!work.empty()) {
      CId c = work.back();
      work.pop_back();
      const auto& node = ct.at(c);
      if (node.kind != CKind::And) continue;
      for (CId k : node.kids)
        if (!contains(l, k)) {
          l = with(l, k);
          work.push_back(k);
        }
    }
    return l;
  }

  bool clash(const Label& l) const {
    std::map<int, unsigned> most, least;
    std::vector<int> pos_atoms, neg_atoms;
    for (CId c : l) {
      const auto& node = ct.at(c);
      switch (node.kind) {
        case CKind::Bot: return true;
        case CKind::Atom: pos_atoms.push_back(node.atom); break;
        case CKind::NegAtom: neg_atoms.push_back(node.atom); break;
        case CKind::AtLeast: {
          auto& v = least[node.role];
          v = std::max(v, node.n);
          break;
        }
        case CKind::AtMost: {
          auto it = most.find(node.role);
          if (it == most.end() || node.n < it->second) most[node.role] = node.n;
          break;
        }
        default: break;
      }
    }
    if (!cfg.fault_ignore_atom_clash) {
      std::sort(neg_atoms.begin(), neg_atoms.end());
      for (int a : pos_atoms)
        if (std::binary_search(neg_atoms.begin(), neg_atoms.end(), a)) return true;
    }
    for (const auto& [r, n] : least)
      if (auto it = most.find(r); it != most.end() && n > it->second) return true;
    return false;
  }

  // An Or none of whose members is in the label, or -1.
  CId open_disjunction(const Label& l) const {
    for (CId c : l) {
      const auto& node = ct.at(c);
      if (node.kind != CKind::Or) continue;
      bool done = std::any_of(node.kids.begin(), node.kids.end(),
                              [&](CId k) { return contains(l, k); });
      if (!done) return c;
    }
    return -1;
  }

  bool obviously_clashes(const Label& l, CId c) {
    const auto& node = ct.at(c);
    if (node.kind == CKind::Bot) return true;
    if (node.kind == CKind::Atom) return contains(l, ct.atom(node.atom, false));
    if (node.kind == CKind::NegAtom) return contains(l, ct.atom(node.atom, true));
    return false;
  }

  std::map<int, RoleDemands> demands(const Label& l) {
    std::map<int, RoleDemands> out;
    for (CId c : l) {
      const auto& node = ct.at(c);
      switch (node.kind) {
        case CKind::Some: out[node.role].exists.push_back(node.kids[0]); break;
        case CKind::All:
          out[node.role].alls.push_back(node.kids[0]);
          if (transitive[node.role]) out[node.role].alls.push_back(c);
          break;
        case CKind::AtLeast: {
          auto& d = out[node.role];
          d.need = std::max(d.need, node.n);
          break;
        }
        case CKind::AtMost: {
          auto& d = out[node.role];
          d.avail = std::min(d.avail, node.n);
          break;
        }
        default: break;
      }
    }
    return out;
  }

  Label base_label(const std::vector<CId>& alls) {
    Label l = alls;
    l.push_back(universal);
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    return l;
  }

  void tick() {
    if (++expansions > cfg.max_expansions)
      throw ResourceError("tableau-steps", "tableau expansion budget exhausted");
  }

  // -- anonymous nodes -------------------------------------------------------

  PlanPtr solve(const Label& init) {
    Label key = close(init);
    if (unsat_cache.count(key)) return nullptr;
    if (auto it = sat_cache.find(key); it != sat_cache.end()) return it->second;
    const std::size_t depth = stack.size();
    const std::size_t saved = min_dep;
    min_dep = SIZE_MAX;
    PlanPtr r = expand(key);
    if (!r)
      unsat_cache.insert(key);
    else if (min_dep >= depth)
      sat_cache.emplace(key, r);
    min_dep = std::min(saved, min_dep);
    return r;
  }

  PlanPtr expand(const Label& l) {
    tick();
    if (clash(l)) return nullptr;
    if (CId d = open_disjunction(l); d >= 0) {
      for (CId k : ct.at(d).kids) {
        if (obviously_clashes(l, k)) continue;
        Label next = close(with(l, k));
        if (unsat_cache.count(next)) continue;
        if (auto r = expand(next)) return r;
        unsat_cache.insert(next);
      }
      return nullptr;
    }
    if (cfg.blocking) {
      for (std::size_t i = 0; i < stack.size(); ++i) {
        const Label& anc = *stack[i].label;
        if (std::includes(anc.begin(), anc.end(), l.begin(), l.end())) {
          min_dep = std::min(min_dep, i);
          auto b = std::make_shared<PlanNode>();
          b->label = l;
          b->blocker = stack[i].node;
          return b;
        }
      }
    }
    auto node = std::make_shared<PlanNode>();
    node->label = l;
    stack.push_back({&node->label, node.get()});
    bool ok = true;
    for (auto& [role, d] : demands(l)) {
      if (!plan_role(*node, role, d.exists, base_label(d.alls), d.need, d.avail)) {
        ok = false;
        break;
      }
    }
    stack.pop_back();
    return ok ? node : nullptr;
  }

  // Chooses successors for one role: every ∃ filler lands in some successor,
  // at least `need` and at most `avail` successors in total.
  bool plan_role(PlanNode& node, int role, const std::vector<CId>& exists, const Label& base,
                 unsigned need, unsigned avail) {
    if (exists.empty() && need == 0) return true;
    if (need > avail) return false;
    std::vector<PlanPtr> single;
    for (CId c : exists) {
      auto p = solve(with(base, c));
      if (!p) return false;
      single.push_back(std::move(p));
    }
    const std::size_t e = exists.size();
    auto padding = [&](std::size_t groups, std::vector<std::pair<int, PlanPtr>>& out) {
      if (need <= groups) return true;
      auto p = solve(base);
      if (!p) return false;
      for (std::size_t i = groups; i < need; ++i) out.emplace_back(role, p);
      return true;
    };
    if (avail == kUnbounded || std::max<std::size_t>(e, need) <= avail) {
      std::vector<std::pair<int, PlanPtr>> out;
      for (auto& p : single) out.emplace_back(role, p);
      if (!padding(e, out)) return false;
      node.succ.insert(node.succ.end(), out.begin(), out.end());
      return true;
    }
    if (e > 10) throw ResourceError("partition-cap", "too many existential demands to merge");
    // Merge demands: set partitions of the ∃ fillers into at most `avail`
    // groups, finer partitions first.
    std::vector<std::vector<int>> by_groups[11];
    std::vector<int> rgs(e, 0);
    for (;;) {
      int g = *std::max_element(rgs.begin(), rgs.end()) + 1;
      if (static_cast<unsigned>(g) <= avail) by_groups[g].push_back(rgs);
      std::size_t i = e;
      bool advanced = false;
      while (i-- > 1) {
        int prefix_max = *std::max_element(rgs.begin(), rgs.begin() + static_cast<long>(i));
        if (rgs[i] <= prefix_max) {
          ++rgs[i];
          std::fill(rgs.begin() + static_cast<long>(i) + 1, rgs.end(), 0);
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
    for (int g = static_cast<int>(std::min<std::size_t>(e, avail)); g >= 1; --g) {
      for (const auto& part : by_groups[g]) {
        std::vector<Label> groups(g, base);
        for (std::size_t k = 0; k < e; ++k) groups[part[k]] = with(groups[part[k]], exists[k]);
        std::vector<std::pair<int, PlanPtr>> out;
        bool ok = true;
        for (const auto& gl : groups) {
          auto p = solve(gl);
          if (!p) {
            ok = false;
            break;
          }
          out.emplace_back(role, p);
        }
        if (ok && padding(static_cast<std::size_t>(g), out)) {
          node.succ.insert(node.succ.end(), out.begin(), out.end());
          return true;
        }
      }
    }
    return false;
  }

  // -- named individuals -----------------------------------------------------

  struct Edge {
    int role;
    int from;
    int to;
  };

  struct NamedState {
    std::vector<Label> labels;
    std::set<std::tuple<int, int, CId>> anonymous;  // (x, role, filler) kept off named nodes
  };

  std::vector<Edge> edges;
  std::vector<std::map<int, std::vector<int>>> neighbors;
  std::vector<PlanNode> named_plans;

  bool satisfied_by_neighbor(const NamedState& s, int x, int role, CId c) const {
    auto it = neighbors[x].find(role);
    if (it == neighbors[x].end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](int y) { return contains(s.labels[y], c); });
  }

  std::size_t neighbor_count(int x, int role) const {
    auto it = neighbors[x].find(role);
    return it == neighbors[x].end() ? 0 : it->second.size();
  }

  void saturate(NamedState& s) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& l : s.labels) l = close(std::move(l));
      for (const auto& e : edges) {
        const Label source = s.labels[e.from];  // copy: from == to for R(a, a)
        for (CId c : source) {
          const auto& node = ct.at(c);
          if (node.kind != CKind::All || node.role != e.role) continue;
          Label& target = s.labels[e.to];
          if (!contains(target, node.kids[0])) {
            target = with(target, node.kids[0]);
            changed = true;
          }
          if (transitive[e.role] && !contains(target, c)) {
            target = with(target, c);
            changed = true;
          }
        }
      }
    }
  }

  bool search(NamedState s) {
    tick();
    saturate(s);
    const int n = static_cast<int>(s.labels.size());
    for (int x = 0; x < n; ++x) {
      if (clash(s.labels[x])) return false;
      for (CId c : s.labels[x]) {
        const auto& node = ct.at(c);
        if (node.kind == CKind::AtMost && neighbor_count(x, node.role) > node.n) return false;
      }
    }
    for (int x = 0; x < n; ++x) {
      if (CId d = open_disjunction(s.labels[x]); d >= 0) {
        for (CId k : ct.at(d).kids) {
          if (obviously_clashes(s.labels[x], k)) continue;
          NamedState next = s;
          next.labels[x] = with(next.labels[x], k);
          if (search(std::move(next))) return true;
        }
        return false;
      }
    }
    // Under an upper bound, an ∃ filler may have to live on a named neighbor.
    for (int x = 0; x < n; ++x) {
      auto ds = demands(s.labels[x]);
      for (const auto& [role, d] : ds) {
        if (d.avail == kUnbounded) continue;
        for (CId c : d.exists) {
          if (satisfied_by_neighbor(s, x, role, c)) continue;
          if (s.anonymous.count({x, role, c})) continue;
          auto it = neighbors[x].find(role);
          if (it != neighbors[x].end()) {
            for (int y : it->second) {
              NamedState next = s;
              next.labels[y] = with(next.labels[y], c);
              if (search(std::move(next))) return true;
            }
          }
          NamedState next = s;
          next.anonymous.insert({x, role, c});
          return search(std::move(next));
        }
      }
    }
    std::vector<PlanNode> plans(n);
    for (int x = 0; x < n; ++x) {
      plans[x].label = s.labels[x];
      for (const auto& [role, d] : demands(s.labels[x])) {
        std::vector<CId> open;
        for (CId c : d.exists)
          if (!satisfied_by_neighbor(s, x, role, c)) open.push_back(c);
        unsigned k = static_cast<unsigned>(neighbor_count(x, role));
        unsigned need = d.need > k ? d.need - k : 0;
        unsigned avail = d.avail == kUnbounded ? kUnbounded : d.avail - k;
        if (!plan_role(plans[x], role, open, base_label(d.alls), need, avail)) return false;
      }
    }
    named_plans = std::move(plans);
    return true;
  }

  // -- witness ---------------------------------------------------------------

  struct Builder {
    Impl& impl;
    std::vector<Label> labels;
    std::vector<std::vector<std::pair<int, int>>> out;  // role, target point
    std::unordered_map<const PlanNode*, int> point_of;
    std::vector<std::pair<int, const PlanNode*>> deferred;  // blocked point, blocker
    unsigned cap;
    bool overflow = false;

    int fresh(const Label& l) {
      if (labels.size() >= cap) {
        overflow = true;
        return 0;
      }
      labels.push_back(l);
      out.emplace_back();
      return static_cast<int>(labels.size()) - 1;
    }

    int clone(int p) {
      int q = fresh(labels[p]);
      if (!overflow) out[q] = out[p];
      return q;
    }

    int instantiate(const PlanNode* n) {
      if (overflow) return 0;
      if (n->blocker) {
        int p = fresh(n->blocker->label);
        deferred.emplace_back(p, n->blocker);
        return p;
      }
      if (auto it = point_of.find(n); it != point_of.end()) return it->second;
      int p = fresh(n->label);
      if (overflow) return 0;
      point_of.emplace(n, p);
      attach(p, *n);
      return p;
    }

    void attach(int p, const PlanNode& n) {
      for (const auto& [role, child] : n.succ) {
        int q = instantiate(child.get());
        if (overflow) return;
        bool dup = std::any_of(out[p].begin(), out[p].end(),
                               [&](const auto& e) { return e.first == role && e.second == q; });
        if (dup) q = clone(q);
        if (overflow) return;
        out[p].emplace_back(role, q);
      }
    }

    void finish() {
      for (auto [p, blocker] : deferred) out[p] = out[point_of.at(blocker)];
    }
  };

  std::optional<FiniteInterpretation> witness(const std::vector<std::string>& object_names,
                                              const std::vector<Edge>& named_edges) {
    Builder b{*this, {}, {}, {}, {}, cfg.max_witness_points};
    for (const auto& plan : named_plans) b.fresh(plan.label);
    if (b.overflow) return std::nullopt;
    for (std::size_t x = 0; x < named_plans.size(); ++x) {
      b.attach(static_cast<int>(x), named_plans[x]);
      if (b.overflow) return std::nullopt;
    }
    b.finish();
    FiniteInterpretation m(static_cast<unsigned>(b.labels.size()));
    for (const auto& r : cfg.roles)
      m.declare_role(r, RoleFlags{cfg.transitive_roles.count(r) > 0,
                                  cfg.functional_roles.count(r) > 0});
    std::map<std::string, PointSet> vars;
    for (std::size_t p = 0; p < b.labels.size(); ++p) {
      for (CId c : b.labels[p])
        if (ct.at(c).kind == CKind::Atom) vars[ct.atom_name(ct.at(c).atom)] |= point_bit(p);
      for (const auto& [role, q] : b.out[p]) m.add_edge(role_names[role], p, q);
    }
    for (const auto& e : named_edges) m.add_edge(role_names[e.role], e.from, e.to);
    for (const auto& [name, s] : vars) m.set_var(name, s);
    for (std::size_t i = 0; i < object_names.size(); ++i)
      if (!object_names[i].empty()) m.set_object(object_names[i], static_cast<unsigned>(i));
    m.close_transitive();
    return m;
  }

  Verdict decide(const AssertionSet& gamma, bool want_witness) {
    if (gamma.has_term_assertions())
      throw Error(ErrorCode::Precondition, "tableau queries take object assertions only");
    stack.clear();
    min_dep = SIZE_MAX;
    auto objects = gamma.objects();
    if (objects.empty()) objects.push_back("");  // models are nonempty
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < objects.size(); ++i) index[objects[i]] = static_cast<int>(i);
    NamedState s;
    s.labels.assign(objects.size(), Label{universal});
    edges.clear();
    neighbors.assign(objects.size(), {});
    for (const auto& a : gamma) {
      if (auto* m = std::get_if<Membership>(&a)) {
        auto& l = s.labels[index.at(m->object)];
        l = with(l, translate(m->term, true));
      } else if (auto* r = std::get_if<RoleAssertion>(&a)) {
        if (!cfg.roles.count(r->role))
          throw Error(ErrorCode::UnsupportedSymbol, "role " + r->role + " is not in this component");
        Edge e{role_index(r->role), index.at(r->from), index.at(r->to)};
        edges.push_back(e);
        auto& nb = neighbors[e.from][e.role];
        if (std::find(nb.begin(), nb.end(), e.to) == nb.end()) nb.push_back(e.to);
      }
    }
    if (!search(std::move(s))) return Verdict::unsat();
    if (!want_witness) return Verdict::sat();
    return Verdict::sat(witness(objects, edges));
  }
};

Tableau::Tableau(TableauConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {}
Tableau::~Tableau() = default;

Verdict Tableau::decide(const AssertionSet& gamma, bool want_witness) {
  return impl_->decide(gamma, want_witness);
}

std::uint64_t Tableau::expansions() const { return impl_->expansions; }

}  // namespace adsfuse
