#include "adsfuse/term.hpp"

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_set>

#include "adsfuse/error.hpp"

namespace adsfuse {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::UndeclaredSymbol: return "undeclared-symbol";
    case ErrorCode::NameClash: return "name-clash";
    case ErrorCode::UnknownSurrogate: return "unknown-surrogate";
    case ErrorCode::UnsupportedSymbol: return "unsupported-symbol";
    case ErrorCode::UninterpretedSymbol: return "uninterpreted-symbol";
    case ErrorCode::SymbolCollision: return "symbol-collision";
    case ErrorCode::NonLocalComponent: return "non-local-component";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::Resource: return "resource";
    case ErrorCode::Syntax: return "syntax-error";
    case ErrorCode::Validation: return "validation";
    case ErrorCode::Untranslatable: return "untranslatable-symbol";
    case ErrorCode::Json: return "json";
    case ErrorCode::Internal: return "internal-error";
  }
  return "unknown";
}

std::string_view to_string(Constructor c) {
  switch (c) {
    case Constructor::Opaque: return "opaque";
    case Constructor::Exists: return "exists";
    case Constructor::Forall: return "forall";
    case Constructor::AtLeast: return "atleast";
    case Constructor::AtMost: return "atmost";
    case Constructor::QualifiedAtLeast: return "qatleast";
    case Constructor::QualifiedAtMost: return "qatmost";
    case Constructor::UniversalExists: return "existsU";
    case Constructor::UniversalForall: return "forallU";
    case Constructor::Nominal: return "nominal";
    case Constructor::Agreement: return "agree";
    case Constructor::Disagreement: return "disagree";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Symbol interning

struct SymbolPool {
  std::mutex mu;
  std::map<std::string, std::unique_ptr<FunctionSymbol>> by_key;

  static SymbolPool& instance() {
    static SymbolPool pool;
    return pool;
  }

  Symbol intern(Constructor ctor, std::string name, unsigned arity, Component comp,
                std::string role, bool atomic, unsigned count) {
    std::string key = name + '|' + std::to_string(arity) + '|' +
                      std::to_string(index_of(comp)) + '|' + std::string(to_string(ctor)) +
                      (atomic ? "|a" : "|c");
    std::lock_guard lock(mu);
    auto& slot = by_key[key];
    if (!slot) {
      slot = std::make_unique<FunctionSymbol>();
      slot->name_ = std::move(name);
      slot->arity_ = arity;
      slot->component_ = comp;
      slot->ctor_ = ctor;
      slot->role_ = std::move(role);
      slot->role_atomic_ = atomic;
      slot->count_ = count;
    }
    return slot.get();
  }
};

namespace symbols {
namespace {
std::string bracket(std::string_view head, std::string_view inner) {
  std::string s(head);
  s += '[';
  s += inner;
  s += ']';
  return s;
}
std::string counted(unsigned n, std::string_view role) {
  return std::to_string(n) + "," + std::string(role);
}
}  // namespace

Symbol opaque(std::string_view name, unsigned arity, Component c) {
  return SymbolPool::instance().intern(Constructor::Opaque, std::string(name), arity, c, "", true,
                                       0);
}
Symbol exists(std::string_view role, Component c, bool atomic) {
  return SymbolPool::instance().intern(Constructor::Exists, bracket("exists", role), 1, c,
                                       std::string(role), atomic, 0);
}
Symbol forall(std::string_view role, Component c, bool atomic) {
  return SymbolPool::instance().intern(Constructor::Forall, bracket("forall", role), 1, c,
                                       std::string(role), atomic, 0);
}
Symbol at_least(unsigned n, std::string_view role, Component c, bool atomic) {
  return SymbolPool::instance().intern(Constructor::AtLeast, bracket("atleast", counted(n, role)),
                                       0, c, std::string(role), atomic, n);
}
Symbol at_most(unsigned n, std::string_view role, Component c, bool atomic) {
  return SymbolPool::instance().intern(Constructor::AtMost, bracket("atmost", counted(n, role)), 0,
                                       c, std::string(role), atomic, n);
}
Symbol qualified_at_least(unsigned n, std::string_view role, Component c) {
  return SymbolPool::instance().intern(Constructor::QualifiedAtLeast,
                                       bracket("qatleast", counted(n, role)), 1, c,
                                       std::string(role), true, n);
}
Symbol qualified_at_most(unsigned n, std::string_view role, Component c) {
  return SymbolPool::instance().intern(Constructor::QualifiedAtMost,
                                       bracket("qatmost", counted(n, role)), 1, c,
                                       std::string(role), true, n);
}
Symbol universal_exists() {
  return SymbolPool::instance().intern(Constructor::UniversalExists, "existsU", 1,
                                       Component::Shared, "U", true, 0);
}
Symbol universal_forall() {
  return SymbolPool::instance().intern(Constructor::UniversalForall, "forallU", 1,
                                       Component::Shared, "U", true, 0);
}
Symbol nominal(std::string_view individual, Component c) {
  return SymbolPool::instance().intern(Constructor::Nominal, bracket("nominal", individual), 0, c,
                                       std::string(individual), true, 0);
}
Symbol agreement(std::string_view lhs, std::string_view rhs, Component c, bool negated) {
  std::string inner = std::string(lhs) + "," + std::string(rhs);
  auto ctor = negated ? Constructor::Disagreement : Constructor::Agreement;
  return SymbolPool::instance().intern(ctor, bracket(negated ? "disagree" : "agree", inner), 0, c,
                                       inner, true, 0);
}

Symbol make(Constructor ctor, std::string_view name_or_role, unsigned arity, unsigned count,
            Component c, bool atomic) {
  switch (ctor) {
    case Constructor::Opaque: return opaque(name_or_role, arity, c);
    case Constructor::Exists: return exists(name_or_role, c, atomic);
    case Constructor::Forall: return forall(name_or_role, c, atomic);
    case Constructor::AtLeast: return at_least(count, name_or_role, c, atomic);
    case Constructor::AtMost: return at_most(count, name_or_role, c, atomic);
    case Constructor::QualifiedAtLeast: return qualified_at_least(count, name_or_role, c);
    case Constructor::QualifiedAtMost: return qualified_at_most(count, name_or_role, c);
    case Constructor::UniversalExists: return universal_exists();
    case Constructor::UniversalForall: return universal_forall();
    case Constructor::Nominal: return nominal(name_or_role, c);
    case Constructor::Agreement:
    case Constructor::Disagreement: {
      auto comma = name_or_role.find(',');
      if (comma == std::string_view::npos)
        throw Error(ErrorCode::Json, "agreement symbol needs two chains");
      return agreement(name_or_role.substr(0, comma), name_or_role.substr(comma + 1), c,
                       ctor == Constructor::Disagreement);
    }
  }
  throw Error(ErrorCode::Internal, "unknown constructor");
}
}  // namespace symbols

// ---------------------------------------------------------------------------
// Term interning

namespace {
std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct NodeHash {
  std::size_t operator()(const detail::TermNode* n) const { return n->hash; }
};
struct NodeEq {
  bool operator()(const detail::TermNode* a, const detail::TermNode* b) const {
    return a->kind == b->kind && a->symbol == b->symbol && a->name == b->name && a->args == b->args;
  }
};
}  // namespace

struct TermPool {
  std::mutex mu;
  std::deque<detail::TermNode> storage;
  std::unordered_set<const detail::TermNode*, NodeHash, NodeEq> table;

  static TermPool& instance() {
    static TermPool pool;
    return pool;
  }

  Term intern(TermKind kind, std::string name, Symbol sym, std::vector<Term> args) {
    detail::TermNode probe{kind, 0, 0, std::move(name), sym, std::move(args)};
    std::size_t h = std::hash<int>{}(static_cast<int>(kind));
    h = mix(h, std::hash<std::string>{}(probe.name));
    h = mix(h, std::hash<const void*>{}(sym));
    for (Term a : probe.args) h = mix(h, a.hash());
    probe.hash = h;
    std::lock_guard lock(mu);
    if (auto it = table.find(&probe); it != table.end()) return Term(*it);
    probe.id = storage.size();
    storage.push_back(std::move(probe));
    const detail::TermNode* node = &storage.back();
    table.insert(node);
    return Term(node);
  }
};

Term mk_var(std::string_view name) {
  return TermPool::instance().intern(TermKind::Var, std::string(name), nullptr, {});
}
Term mk_top() {
  static const Term t = TermPool::instance().intern(TermKind::Top, "", nullptr, {});
  return t;
}
Term mk_bot() {
  static const Term t = TermPool::instance().intern(TermKind::Bot, "", nullptr, {});
  return t;
}
Term mk_not(Term t) { return TermPool::instance().intern(TermKind::Not, "", nullptr, {t}); }
Term mk_and(Term a, Term b) {
  return TermPool::instance().intern(TermKind::And, "", nullptr, {a, b});
}
Term mk_or(Term a, Term b) { return TermPool::instance().intern(TermKind::Or, "", nullptr, {a, b}); }

Term mk_app(Symbol f, std::vector<Term> args) {
  if (args.size() != f->arity())
    throw Error(ErrorCode::ArityMismatch, "symbol " + f->name() + " expects " +
                                              std::to_string(f->arity()) + " argument(s), got " +
                                              std::to_string(args.size()));
  return TermPool::instance().intern(TermKind::App, "", f, std::move(args));
}

Term mk_and_all(std::span<const Term> ts) {
  if (ts.empty()) return mk_top();
  Term acc = ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i) acc = mk_and(acc, ts[i]);
  return acc;
}

Term mk_or_all(std::span<const Term> ts) {
  if (ts.empty()) return mk_bot();
  Term acc = ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i) acc = mk_or(acc, ts[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Traversals

std::vector<Term> subterms(Term t) {
  std::vector<Term> out;
  std::unordered_set<Term> seen;
  // Iterative post-order so deep chains do not exhaust the stack.
  std::vector<std::pair<Term, bool>> stack{{t, false}};
  while (!stack.empty()) {
    auto [cur, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      out.push_back(cur);
      continue;
    }
    if (!seen.insert(cur).second) continue;
    stack.push_back({cur, true});
    auto args = cur.args();
    for (auto it = args.rbegin(); it != args.rend(); ++it)
      if (!seen.count(*it)) stack.push_back({*it, false});
  }
  return out;
}

std::set<std::string> free_vars(Term t) {
  std::set<std::string> out;
  for (Term s : subterms(t))
    if (s.is_var()) out.insert(s.name());
  return out;
}

std::size_t term_size(Term t) {
  std::unordered_map<Term, std::size_t> memo;
  std::function<std::size_t(Term)> go = [&](Term s) -> std::size_t {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    std::size_t n = 1;
    for (Term a : s.args()) n += go(a);
    memo.emplace(s, n);
    return n;
  };
  return go(t);
}

bool mentions(Term t, const std::function<bool(Symbol)>& pred) {
  for (Term s : subterms(t))
    if (s.is_app() && pred(s.symbol())) return true;
  return false;
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
}  // namespace

Term substitute(Term t, const std::unordered_map<std::string, Term>& by_var) {
  std::unordered_map<Term, Term> memo;
  std::function<Term(Term)> go = [&](Term s) -> Term {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    Term r;
    if (s.is_var()) {
      auto it = by_var.find(s.name());
      r = it == by_var.end() ? s : it->second;
    } else if (s.args().empty()) {
      r = s;
    } else {
      std::vector<Term> args;
      args.reserve(s.args().size());
      for (Term a : s.args()) args.push_back(go(a));
      r = rebuild(s, std::move(args));
    }
    memo.emplace(s, r);
    return r;
  };
  return go(t);
}

Term substitute(Term t, std::string_view var, Term replacement) {
  return substitute(t, {{std::string(var), replacement}});
}

std::string to_prefix(Symbol f) { return f->name(); }

std::string to_prefix(Term t) {
  switch (t.kind()) {
    case TermKind::Var: return t.name();
    case TermKind::Top: return "top";
    case TermKind::Bot: return "bot";
    case TermKind::Not: return "(not " + to_prefix(t.arg(0)) + ")";
    case TermKind::And: return "(and " + to_prefix(t.arg(0)) + " " + to_prefix(t.arg(1)) + ")";
    case TermKind::Or: return "(or " + to_prefix(t.arg(0)) + " " + to_prefix(t.arg(1)) + ")";
    case TermKind::App: {
      if (t.args().empty()) return t.symbol()->name();
      std::string s = "(" + t.symbol()->name();
      for (Term a : t.args()) s += " " + to_prefix(a);
      return s + ")";
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Ordering

namespace {
int kind_rank(TermKind k) {
  switch (k) {
    case TermKind::App: return 0;
    case TermKind::Not: return 1;
    case TermKind::And: return 2;
    case TermKind::Or: return 3;
    case TermKind::Top: return 4;
    case TermKind::Bot: return 5;
    case TermKind::Var: return 6;
  }
  return 7;
}
template <class T>
int cmp3(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}
}  // namespace

int TermOrder::compare(Symbol a, Symbol b) const {
  if (a == b) return 0;
  if (rank_) {
    long ra = rank_(a), rb = rank_(b);
    bool ka = ra >= 0, kb = rb >= 0;
    if (ka != kb) return ka ? -1 : 1;
    if (ka && ra != rb) return cmp3(ra, rb);
  }
  if (int c = cmp3(index_of(a->component()), index_of(b->component()))) return c;
  if (int c = cmp3(static_cast<int>(a->constructor()), static_cast<int>(b->constructor())))
    return c;
  if (int c = cmp3(a->role(), b->role())) return c;
  if (int c = cmp3(a->count(), b->count())) return c;
  if (int c = cmp3(a->arity(), b->arity())) return c;
  return cmp3(a->name(), b->name());
}

int TermOrder::compare(Term a, Term b) const {
  if (a == b) return 0;
  if (int c = cmp3(kind_rank(a.kind()), kind_rank(b.kind()))) return c;
  switch (a.kind()) {
    case TermKind::Var: {
      // Declared variables before surrogates, then by name.
      if (int c = cmp3(a.is_surrogate(), b.is_surrogate())) return c;
      return cmp3(a.name(), b.name());
    }
    case TermKind::App:
      if (int c = compare(a.symbol(), b.symbol())) return c;
      break;
    default: break;
  }
  auto xs = a.args(), ys = b.args();
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i)
    if (int c = compare(xs[i], ys[i])) return c;
  return cmp3(xs.size(), ys.size());
}

}  // namespace adsfuse
