#include "adsfuse/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "adsfuse/error.hpp"
#include "adsfuse/sat.hpp"

namespace adsfuse {

namespace {

void require_interpretable(Symbol f) {
  if (f->constructor() == Constructor::Opaque || f->constructor() == Constructor::Agreement ||
      f->constructor() == Constructor::Disagreement)
    throw Error(ErrorCode::UninterpretedSymbol, "symbol " + f->name() + " has no fixed semantics");
  if (!f->role_atomic())
    throw Error(ErrorCode::UninterpretedSymbol,
                "symbol " + f->name() + " is over a complex role description");
}

}  // namespace

SetFunction interpret(Symbol f, const FiniteInterpretation& m) {
  require_interpretable(f);
  const unsigned n = m.size();
  const PointSet all = m.full();
  const std::string role = f->role();
  const unsigned k = f->count();
  switch (f->constructor()) {
    case Constructor::Exists:
      return [&m, role, n](std::span<const PointSet> a) {
        PointSet out = 0;
        for (unsigned p = 0; p < n; ++p)
          if (m.successors(role, p) & a[0]) out |= point_bit(p);
        return out;
      };
    case Constructor::Forall:
      return [&m, role, n](std::span<const PointSet> a) {
        PointSet out = 0;
        for (unsigned p = 0; p < n; ++p)
          if ((m.successors(role, p) & ~a[0]) == 0) out |= point_bit(p);
        return out;
      };
    case Constructor::AtLeast:
    case Constructor::AtMost:
    case Constructor::QualifiedAtLeast:
    case Constructor::QualifiedAtMost: {
      bool at_least = f->constructor() == Constructor::AtLeast ||
                      f->constructor() == Constructor::QualifiedAtLeast;
      bool qualified = f->arity() == 1;
      return [&m, role, n, k, at_least, qualified, all](std::span<const PointSet> a) {
        PointSet filter = qualified ? a[0] : all;
        PointSet out = 0;
        for (unsigned p = 0; p < n; ++p) {
          unsigned c = cardinality(m.successors(role, p) & filter);
          if (at_least ? c >= k : c <= k) out |= point_bit(p);
        }
        return out;
      };
    }
    case Constructor::UniversalExists:
      return [all](std::span<const PointSet> a) { return a[0] ? all : PointSet{0}; };
    case Constructor::UniversalForall:
      return [all](std::span<const PointSet> a) { return a[0] == all ? all : PointSet{0}; };
    case Constructor::Nominal: {
      auto p = m.nominal(f->role());
      if (!p) throw Error(ErrorCode::UninterpretedSymbol, "nominal " + f->role() + " unassigned");
      PointSet s = point_bit(*p);
      return [s](std::span<const PointSet>) { return s; };
    }
    default: break;
  }
  throw Error(ErrorCode::UninterpretedSymbol, "symbol " + f->name() + " has no fixed semantics");
}

PointSet eval(Term t, const FiniteInterpretation& m) {
  std::unordered_map<Term, PointSet> memo;
  std::unordered_map<Symbol, SetFunction> fns;
  const PointSet all = m.full();
  std::function<PointSet(Term)> go = [&](Term s) -> PointSet {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    PointSet r = 0;
    switch (s.kind()) {
      case TermKind::Var: r = m.var(s.name()); break;
      case TermKind::Top: r = all; break;
      case TermKind::Bot: r = 0; break;
      case TermKind::Not: r = all & ~go(s.arg(0)); break;
      case TermKind::And: r = go(s.arg(0)) & go(s.arg(1)); break;
      case TermKind::Or: r = go(s.arg(0)) | go(s.arg(1)); break;
      case TermKind::App: {
        auto it = fns.find(s.symbol());
        if (it == fns.end()) it = fns.emplace(s.symbol(), interpret(s.symbol(), m)).first;
        std::vector<PointSet> args;
        for (Term a : s.args()) args.push_back(go(a));
        r = it->second(args);
        break;
      }
    }
    memo.emplace(s, r);
    return r;
  };
  return go(t);
}

bool holds_at(Term t, const FiniteInterpretation& m, unsigned p) {
  switch (t.kind()) {
    case TermKind::Var: return (m.var(t.name()) >> p) & 1U;
    case TermKind::Top: return true;
    case TermKind::Bot: return false;
    case TermKind::Not: return !holds_at(t.arg(0), m, p);
    case TermKind::And: return holds_at(t.arg(0), m, p) && holds_at(t.arg(1), m, p);
    case TermKind::Or: return holds_at(t.arg(0), m, p) || holds_at(t.arg(1), m, p);
    case TermKind::App: break;
  }
  Symbol f = t.symbol();
  require_interpretable(f);
  const std::string& role = f->role();
  auto count_where = [&](bool qualified) {
    unsigned c = 0;
    for (unsigned q = 0; q < m.size(); ++q)
      if (m.has_edge(role, p, q) && (!qualified || holds_at(t.arg(0), m, q))) ++c;
    return c;
  };
  switch (f->constructor()) {
    case Constructor::Exists:
      for (unsigned q = 0; q < m.size(); ++q)
        if (m.has_edge(role, p, q) && holds_at(t.arg(0), m, q)) return true;
      return false;
    case Constructor::Forall:
      for (unsigned q = 0; q < m.size(); ++q)
        if (m.has_edge(role, p, q) && !holds_at(t.arg(0), m, q)) return false;
      return true;
    case Constructor::AtLeast: return count_where(false) >= f->count();
    case Constructor::AtMost: return count_where(false) <= f->count();
    case Constructor::QualifiedAtLeast: return count_where(true) >= f->count();
    case Constructor::QualifiedAtMost: return count_where(true) <= f->count();
    case Constructor::UniversalExists:
      for (unsigned q = 0; q < m.size(); ++q)
        if (holds_at(t.arg(0), m, q)) return true;
      return false;
    case Constructor::UniversalForall:
      for (unsigned q = 0; q < m.size(); ++q)
        if (!holds_at(t.arg(0), m, q)) return false;
      return true;
    case Constructor::Nominal: {
      auto q = m.nominal(f->role());
      if (!q) throw Error(ErrorCode::UninterpretedSymbol, "nominal " + f->role() + " unassigned");
      return *q == p;
    }
    default: break;
  }
  throw Error(ErrorCode::UninterpretedSymbol, "symbol " + f->name() + " has no fixed semantics");
}

bool check(const Assertion& a, const FiniteInterpretation& m) {
  if (auto* inc = std::get_if<Inclusion>(&a)) {
    return (eval(inc->lhs, m) & ~eval(inc->rhs, m)) == 0;
  }
  if (auto* r = std::get_if<RoleAssertion>(&a)) {
    auto x = m.object(r->from), y = m.object(r->to);
    return x && y && m.has_edge(r->role, *x, *y);
  }
  const auto& mem = std::get<Membership>(a);
  auto x = m.object(mem.object);
  return x && ((eval(mem.term, m) >> *x) & 1U);
}

bool check(const AssertionSet& gamma, const FiniteInterpretation& m) {
  if (!m.well_formed()) return false;
  return std::all_of(gamma.begin(), gamma.end(), [&](const Assertion& a) { return check(a, m); });
}

// ---------------------------------------------------------------------------
// Model search: propositional encoding of "Γ holds in some model with n points".

namespace {

class Encoder {
 public:
  Encoder(const ModelClass& cls, unsigned n, std::map<std::string, unsigned> objects)
      : cls_(cls), n_(n), objects_(std::move(objects)) {
    true_ = solver_.new_var();
    solver_.add_clause({true_});
  }

  std::vector<int> lits(Term t) {
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    std::vector<int> out(n_);
    switch (t.kind()) {
      case TermKind::Var: out = set_var(t.name()); break;
      case TermKind::Top: std::fill(out.begin(), out.end(), true_); break;
      case TermKind::Bot: std::fill(out.begin(), out.end(), -true_); break;
      case TermKind::Not: {
        auto a = lits(t.arg(0));
        for (unsigned p = 0; p < n_; ++p) out[p] = -a[p];
        break;
      }
      case TermKind::And:
      case TermKind::Or: {
        auto a = lits(t.arg(0)), b = lits(t.arg(1));
        for (unsigned p = 0; p < n_; ++p)
          out[p] = t.kind() == TermKind::And ? conj(a[p], b[p]) : -conj(-a[p], -b[p]);
        break;
      }
      case TermKind::App: out = app(t); break;
    }
    memo_.emplace(t, out);
    return out;
  }

  void assert_role(const std::string& role, const std::string& a, const std::string& b) {
    solver_.add_clause({edge(role, objects_.at(a), objects_.at(b))});
  }
  void assert_member(const std::string& a, Term t) { solver_.add_clause({lits(t)[objects_.at(a)]}); }
  void assert_inclusion(Term lhs, Term rhs) {
    auto l = lits(lhs), r = lits(rhs);
    for (unsigned p = 0; p < n_; ++p) solver_.add_clause({-l[p], r[p]});
  }

  SatSolver::Result solve(std::uint64_t budget) { return solver_.solve(budget); }

  FiniteInterpretation extract() const {
    FiniteInterpretation m(n_);
    for (const auto& [role, flags] : cls_.roles) m.declare_role(role, flags);
    for (const auto& [role, vars] : edges_)
      for (unsigned p = 0; p < n_; ++p)
        for (unsigned q = 0; q < n_; ++q)
          if (value(vars[p * n_ + q])) m.add_edge(role, p, q);
    for (const auto& [name, vars] : set_vars_) {
      PointSet s = 0;
      for (unsigned p = 0; p < n_; ++p)
        if (value(vars[p])) s |= point_bit(p);
      m.set_var(name, s);
    }
    for (const auto& [name, p] : objects_) m.set_object(name, p);
    for (const auto& [name, vars] : nominals_)
      for (unsigned p = 0; p < n_; ++p)
        if (value(vars[p])) m.set_nominal(name, p);
    return m;
  }

 private:
  bool value(int lit) const { return lit > 0 ? solver_.value(lit) : !solver_.value(-lit); }

  int conj(int a, int b) {
    if (a == true_) return b;
    if (b == true_) return a;
    if (a == -true_ || b == -true_) return -true_;
    if (a == b) return a;
    if (a == -b) return -true_;
    auto key = std::minmax(a, b);
    if (auto it = and_cache_.find(key); it != and_cache_.end()) return it->second;
    int v = solver_.new_var();
    solver_.add_clause({-v, a});
    solver_.add_clause({-v, b});
    solver_.add_clause({v, -a, -b});
    and_cache_.emplace(key, v);
    return v;
  }

  int disj_of(const std::vector<int>& xs) {
    std::vector<int> neg;
    for (int x : xs) neg.push_back(-x);
    return -conj_of(neg);
  }

  int conj_of(const std::vector<int>& xs) {
    std::vector<int> live;
    for (int x : xs) {
      if (x == true_) continue;
      if (x == -true_) return -true_;
      live.push_back(x);
    }
    if (live.empty()) return true_;
    if (live.size() == 1) return live[0];
    int v = solver_.new_var();
    std::vector<int> back{v};
    for (int x : live) {
      solver_.add_clause({-v, x});
      back.push_back(-x);
    }
    solver_.add_clause(back);
    return v;
  }

  // Literal for "at least k of items are true".
  int at_least(const std::vector<int>& items, unsigned k) {
    if (k == 0) return true_;
    if (k > items.size()) return -true_;
    int v = solver_.new_var();
    const std::size_t m = items.size();
    // v -> every (m-k+1)-subset contains a true item.
    for_each_subset(m, m - k + 1, [&](const std::vector<std::size_t>& sel) {
      std::vector<int> c{-v};
      for (auto i : sel) c.push_back(items[i]);
      solver_.add_clause(c);
    });
    // !v -> no k-subset is all true.
    for_each_subset(m, k, [&](const std::vector<std::size_t>& sel) {
      std::vector<int> c{v};
      for (auto i : sel) c.push_back(-items[i]);
      solver_.add_clause(c);
    });
    return v;
  }

  template <class Fn>
  static void for_each_subset(std::size_t m, std::size_t k, Fn&& fn) {
    std::vector<std::size_t> sel(k);
    for (std::size_t i = 0; i < k; ++i) sel[i] = i;
    for (;;) {
      fn(sel);
      std::size_t i = k;
      while (i > 0 && sel[i - 1] == m - k + i - 1) --i;
      if (i == 0) return;
      ++sel[i - 1];
      for (std::size_t j = i; j < k; ++j) sel[j] = sel[j - 1] + 1;
    }
  }

  std::vector<int> fresh_row() {
    std::vector<int> v(n_);
    for (auto& x : v) x = solver_.new_var();
    return v;
  }

  const std::vector<int>& set_var(const std::string& name) {
    auto it = set_vars_.find(name);
    if (it == set_vars_.end()) it = set_vars_.emplace(name, fresh_row()).first;
    return it->second;
  }

  int edge(const std::string& role, unsigned p, unsigned q) {
    auto it = edges_.find(role);
    if (it == edges_.end()) {
      auto cls = cls_.roles.find(role);
      if (cls == cls_.roles.end())
        throw Error(ErrorCode::Precondition, "role " + role + " is not part of the model class");
      std::vector<int> vars(n_ * n_);
      for (auto& x : vars) x = solver_.new_var();
      it = edges_.emplace(role, std::move(vars)).first;
      const auto& e = it->second;
      if (cls->second.transitive)
        for (unsigned a = 0; a < n_; ++a)
          for (unsigned b = 0; b < n_; ++b)
            for (unsigned c = 0; c < n_; ++c)
              solver_.add_clause({-e[a * n_ + b], -e[b * n_ + c], e[a * n_ + c]});
      if (cls->second.functional)
        for (unsigned a = 0; a < n_; ++a)
          for (unsigned b = 0; b < n_; ++b)
            for (unsigned c = b + 1; c < n_; ++c)
              solver_.add_clause({-e[a * n_ + b], -e[a * n_ + c]});
    }
    return it->second[p * n_ + q];
  }

  std::vector<int> app(Term t) {
    Symbol f = t.symbol();
    require_interpretable(f);
    std::vector<int> out(n_);
    const std::string& role = f->role();
    auto successors = [&](unsigned p, const std::vector<int>* filter) {
      std::vector<int> items;
      for (unsigned q = 0; q < n_; ++q)
        items.push_back(filter ? conj(edge(role, p, q), (*filter)[q]) : edge(role, p, q));
      return items;
    };
    switch (f->constructor()) {
      case Constructor::Exists: {
        auto c = lits(t.arg(0));
        for (unsigned p = 0; p < n_; ++p) out[p] = disj_of(successors(p, &c));
        return out;
      }
      case Constructor::Forall: {
        auto c = lits(t.arg(0));
        for (auto& x : c) x = -x;
        for (unsigned p = 0; p < n_; ++p) out[p] = -disj_of(successors(p, &c));
        return out;
      }
      case Constructor::AtLeast:
      case Constructor::AtMost:
      case Constructor::QualifiedAtLeast:
      case Constructor::QualifiedAtMost: {
        bool ge = f->constructor() == Constructor::AtLeast ||
                  f->constructor() == Constructor::QualifiedAtLeast;
        std::vector<int> c;
        if (f->arity() == 1) c = lits(t.arg(0));
        for (unsigned p = 0; p < n_; ++p) {
          auto items = successors(p, f->arity() == 1 ? &c : nullptr);
          out[p] = ge ? at_least(items, f->count()) : -at_least(items, f->count() + 1);
        }
        return out;
      }
      case Constructor::UniversalExists: {
        int v = disj_of(lits(t.arg(0)));
        std::fill(out.begin(), out.end(), v);
        return out;
      }
      case Constructor::UniversalForall: {
        int v = conj_of(lits(t.arg(0)));
        std::fill(out.begin(), out.end(), v);
        return out;
      }
      case Constructor::Nominal: {
        auto it = nominals_.find(f->role());
        if (it == nominals_.end()) {
          auto row = fresh_row();
          solver_.add_clause(row);
          for (unsigned a = 0; a < n_; ++a)
            for (unsigned b = a + 1; b < n_; ++b) solver_.add_clause({-row[a], -row[b]});
          it = nominals_.emplace(f->role(), std::move(row)).first;
        }
        return it->second;
      }
      default: break;
    }
    throw Error(ErrorCode::UninterpretedSymbol, "symbol " + f->name() + " has no fixed semantics");
  }

  const ModelClass& cls_;
  unsigned n_;
  std::map<std::string, unsigned> objects_;
  SatSolver solver_;
  int true_ = 0;
  std::unordered_map<Term, std::vector<int>> memo_;
  std::map<std::pair<int, int>, int> and_cache_;
  std::map<std::string, std::vector<int>> set_vars_;
  std::map<std::string, std::vector<int>> edges_;
  std::map<std::string, std::vector<int>> nominals_;
};

}  // namespace

OracleResult find_model(const AssertionSet& gamma, const ModelClass& cls, unsigned max_domain,
                        const OracleOptions& opts) {
  if (max_domain == 0) throw Error(ErrorCode::Precondition, "max domain must be positive");
  if (max_domain > kMaxDomain) throw ResourceError("oracle-domain", "oracle domain above 64");
  auto objs = gamma.objects();
  OracleResult result;
  result.bound = max_domain;
  std::map<std::string, unsigned> pinned;
  for (unsigned i = 0; i < objs.size(); ++i) pinned[objs[i]] = i;
  for (unsigned n = std::max<unsigned>(1, static_cast<unsigned>(objs.size())); n <= max_domain; ++n) {
    Encoder enc(cls, n, pinned);
    for (const auto& a : gamma) {
      if (auto* inc = std::get_if<Inclusion>(&a))
        enc.assert_inclusion(inc->lhs, inc->rhs);
      else if (auto* r = std::get_if<RoleAssertion>(&a))
        enc.assert_role(r->role, r->from, r->to);
      else {
        const auto& m = std::get<Membership>(a);
        enc.assert_member(m.object, m.term);
      }
    }
    auto res = enc.solve(opts.conflict_budget);
    if (res == SatSolver::Result::Unknown)
      throw ResourceError("oracle-budget", "model search exceeded its conflict budget at size " +
                                               std::to_string(n));
    if (res == SatSolver::Result::Sat) {
      auto m = enc.extract();
      if (!check(gamma, m))
        throw Error(ErrorCode::Internal, "model search produced a model that fails the check");
      result.model = std::move(m);
      return result;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Disjoint unions and law checks

FiniteInterpretation disjoint_union(std::span<const FiniteInterpretation> parts) {
  unsigned total = 0;
  for (const auto& p : parts) total += p.size();
  if (total == 0) throw Error(ErrorCode::Precondition, "union of no points");
  if (total > kMaxDomain) throw ResourceError("union-domain", "union exceeds 64 points");
  FiniteInterpretation u(total);
  unsigned offset = 0;
  for (const auto& part : parts) {
    for (const auto& [role, flags] : part.role_flags())
      if (!u.has_role(role)) u.declare_role(role, flags);
    for (const auto& [role, succ] : part.roles())
      for (unsigned p = 0; p < part.size(); ++p)
        for (unsigned q = 0; q < part.size(); ++q)
          if ((succ[p] >> q) & 1U) u.add_edge(role, p + offset, q + offset);
    for (const auto& [name, s] : part.vars()) u.set_var(name, u.var(name) | (s << offset));
    for (const auto& [name, p] : part.objects())
      if (!u.object(name)) u.set_object(name, p + offset);
    for (const auto& [name, p] : part.nominals())
      if (!u.nominal(name)) u.set_nominal(name, p + offset);
    offset += part.size();
  }
  return u;
}

bool union_identity_holds(Symbol f, std::span<const FiniteInterpretation> parts) {
  auto u = disjoint_union(parts);
  if (u.size() > 10) throw ResourceError("union-domain", "identity check limited to 10 points");
  auto whole = interpret(f, u);
  std::vector<SetFunction> local;
  std::vector<unsigned> offsets;
  unsigned offset = 0;
  for (const auto& p : parts) {
    local.push_back(interpret(f, p));
    offsets.push_back(offset);
    offset += p.size();
  }
  const PointSet limit = PointSet{1} << u.size();
  auto compare = [&](std::span<const PointSet> args) {
    PointSet expect = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::vector<PointSet> restricted;
      for (PointSet a : args) restricted.push_back((a >> offsets[i]) & parts[i].full());
      expect |= local[i](restricted) << offsets[i];
    }
    return whole(args) == expect;
  };
  if (f->arity() == 0) return compare({});
  for (PointSet x = 0; x < limit; ++x) {
    PointSet arg[1] = {x};
    if (!compare(arg)) return false;
  }
  return true;
}

bool verify_covering_term(const FiniteInterpretation& m, Symbol f, Term cover, std::string_view var) {
  if (m.size() > 6) throw ResourceError("law-domain", "covering check limited to 6 points");
  if (f->arity() > 1) throw Error(ErrorCode::Precondition, "covering check supports arity ≤ 1");
  const PointSet limit = PointSet{1} << m.size();
  const PointSet all = m.full();
  std::vector<PointSet> table(limit);
  FiniteInterpretation probe = m;
  for (PointSet x = 0; x < limit; ++x) {
    probe.set_var(std::string(var), x);
    table[x] = eval(cover, probe);
  }
  if (table[all] != all) return false;
  for (PointSet x = 0; x < limit; ++x)
    for (PointSet y = 0; y < limit; ++y)
      if (table[x & y] != (table[x] & table[y])) return false;
  if (f->arity() == 0) return true;
  auto fn = interpret(f, m);
  std::vector<PointSet> fx(limit);
  for (PointSet x = 0; x < limit; ++x) {
    PointSet arg[1] = {x};
    fx[x] = fn(arg);
  }
  for (PointSet x = 0; x < limit; ++x) {
    const PointSet outside = all & ~x;
    for (PointSet x1 = 0; x1 < limit; ++x1) {
      // Y1 ranges over sets agreeing with X1 on X.
      for (PointSet z = outside;; z = (z - 1) & outside) {
        PointSet y1 = (x & x1) | z;
        if ((table[x] & fx[x1]) != (table[x] & fx[y1])) return false;
        if (z == 0) break;
      }
    }
  }
  return true;
}

bool verify_normality(unsigned n, const SetFunction& fn, unsigned arity) {
  if (n > 6) throw ResourceError("law-domain", "normality check limited to 6 points");
  if (arity > 2) throw Error(ErrorCode::Precondition, "normality check supports arity ≤ 2");
  const PointSet limit = PointSet{1} << n;
  const PointSet all = full_set(n);
  // Nullary: the unit condition degenerates to F() = W.
  if (arity == 0) return fn({}) == all;
  if (arity == 1) {
    PointSet w[1] = {all};
    if (fn(w) != all) return false;
    for (PointSet x = 0; x < limit; ++x)
      for (PointSet y = 0; y < limit; ++y) {
        PointSet a[1] = {x & y}, b[1] = {x}, c[1] = {y};
        if (fn(a) != (fn(b) & fn(c))) return false;
      }
    return true;
  }
  PointSet u1[2] = {all, 0}, u2[2] = {0, all};
  if (fn(u1) != all || fn(u2) != all) return false;
  for (PointSet o = 0; o < limit; ++o)
    for (PointSet x = 0; x < limit; ++x)
      for (PointSet y = 0; y < limit; ++y) {
        PointSet a[2] = {x & y, o}, b[2] = {x, o}, c[2] = {y, o};
        PointSet d[2] = {o, x & y}, e[2] = {o, x}, g[2] = {o, y};
        if (fn(a) != (fn(b) & fn(c))) return false;
        if (fn(d) != (fn(e) & fn(g))) return false;
      }
  return true;
}

bool verify_normality(const FiniteInterpretation& m, Symbol f) {
  return verify_normality(m.size(), interpret(f, m), f->arity());
}

}  // namespace adsfuse
