#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace adsfuse {

// Which side of a fusion a symbol belongs to. Booleans and variables are Shared.
enum class Component : std::uint8_t { Shared = 0, First = 1, Second = 2 };

inline Component other(Component c) {
  return c == Component::First ? Component::Second : Component::First;
}
inline int index_of(Component c) { return static_cast<int>(c); }

enum class Constructor : std::uint8_t {
  Opaque,            // uninterpreted f/g of a generic signature
  Exists,            // ∃R.·
  Forall,            // ∀R.·
  AtLeast,           // (≥ n R), nullary
  AtMost,            // (≤ n R), nullary
  QualifiedAtLeast,  // (≥ n R ·), represented only
  QualifiedAtMost,
  UniversalExists,   // ∃U.·
  UniversalForall,   // ∀U.·
  Nominal,           // {i}
  Agreement,         // u ↓ v over feature chains, represented only
  Disagreement,
};

std::string_view to_string(Constructor c);

class FunctionSymbol {
 public:
  const std::string& name() const { return name_; }
  unsigned arity() const { return arity_; }
  Component component() const { return component_; }
  Constructor constructor() const { return ctor_; }
  // Role text for role-indexed constructors; for Nominal the individual name.
  const std::string& role() const { return role_; }
  bool role_atomic() const { return role_atomic_; }
  unsigned count() const { return count_; }

  bool is_universal() const {
    return ctor_ == Constructor::UniversalExists || ctor_ == Constructor::UniversalForall;
  }

 private:
  friend struct SymbolPool;
  std::string name_;
  unsigned arity_ = 0;
  Component component_ = Component::First;
  Constructor ctor_ = Constructor::Opaque;
  std::string role_;
  bool role_atomic_ = true;
  unsigned count_ = 0;
};

// Interned: equal symbols share one address.
using Symbol = const FunctionSymbol*;

namespace symbols {
Symbol opaque(std::string_view name, unsigned arity, Component c);
Symbol exists(std::string_view role, Component c, bool atomic = true);
Symbol forall(std::string_view role, Component c, bool atomic = true);
Symbol at_least(unsigned n, std::string_view role, Component c, bool atomic = true);
Symbol at_most(unsigned n, std::string_view role, Component c, bool atomic = true);
Symbol qualified_at_least(unsigned n, std::string_view role, Component c);
Symbol qualified_at_most(unsigned n, std::string_view role, Component c);
Symbol universal_exists();
Symbol universal_forall();
Symbol nominal(std::string_view individual, Component c);
Symbol agreement(std::string_view lhs, std::string_view rhs, Component c, bool negated);
// Rebuilds a symbol from its descriptive parts (used by the JSON codec).
Symbol make(Constructor ctor, std::string_view name_or_role, unsigned arity, unsigned count,
            Component c, bool atomic);
}  // namespace symbols

enum class TermKind : std::uint8_t { Var, Top, Bot, Not, And, Or, App };

class Term;

namespace detail {
struct TermNode;
}

class Term {
 public:
  Term() = default;

  bool is_null() const { return node_ == nullptr; }
  explicit operator bool() const { return node_ != nullptr; }

  TermKind kind() const;
  const std::string& name() const;  // Var only
  Symbol symbol() const;            // App only
  std::span<const Term> args() const;
  Term arg(std::size_t i) const { return args()[i]; }
  std::uint64_t id() const;
  std::size_t hash() const;

  bool is_var() const { return kind() == TermKind::Var; }
  bool is_app() const { return kind() == TermKind::App; }
  bool is_boolean_connective() const {
    auto k = kind();
    return k == TermKind::Not || k == TermKind::And || k == TermKind::Or;
  }
  bool is_surrogate() const;

  friend bool operator==(Term a, Term b) { return a.node_ == b.node_; }
  // Creation-order comparison; stable within a process, not across inputs.
  friend bool operator<(Term a, Term b) { return a.id() < b.id(); }

 private:
  friend struct TermPool;
  explicit Term(const detail::TermNode* n) : node_(n) {}
  const detail::TermNode* node_ = nullptr;
};

namespace detail {
struct TermNode {
  TermKind kind;
  std::uint64_t id;
  std::size_t hash;
  std::string name;
  Symbol symbol = nullptr;
  std::vector<Term> args;
};
}  // namespace detail

inline TermKind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline Symbol Term::symbol() const { return node_->symbol; }
inline std::span<const Term> Term::args() const { return node_->args; }
inline std::uint64_t Term::id() const { return node_->id; }
inline std::size_t Term::hash() const { return node_->hash; }

inline constexpr std::string_view kSurrogatePrefix = "$t-";
inline bool is_reserved_name(std::string_view s) { return !s.empty() && s.front() == '$'; }
inline bool Term::is_surrogate() const {
  return kind() == TermKind::Var && name().starts_with(kSurrogatePrefix);
}

Term mk_var(std::string_view name);
Term mk_top();
Term mk_bot();
Term mk_not(Term t);
Term mk_and(Term a, Term b);
Term mk_or(Term a, Term b);
// Throws ArityMismatch when args.size() != arity.
Term mk_app(Symbol f, std::vector<Term> args);
// Left-folded; ⋀∅ = ⊤, ⋁∅ = ⊥.
Term mk_and_all(std::span<const Term> ts);
Term mk_or_all(std::span<const Term> ts);

std::set<std::string> free_vars(Term t);
// Every distinct subterm, children before parents.
std::vector<Term> subterms(Term t);
std::size_t term_size(Term t);
bool mentions(Term t, const std::function<bool(Symbol)>& pred);
Term substitute(Term t, const std::unordered_map<std::string, Term>& by_var);
Term substitute(Term t, std::string_view var, Term replacement);

// Canonical prefix serialization, e.g. "(and x (exists[R1] (not y)))".
std::string to_prefix(Term t);
std::string to_prefix(Symbol f);

// Canonical ordering. `rank` maps a symbol to its declaration index; symbols it
// does not know are ordered after ranked ones, structurally.
class TermOrder {
 public:
  TermOrder() = default;
  explicit TermOrder(std::function<long(Symbol)> rank) : rank_(std::move(rank)) {}
  int compare(Term a, Term b) const;
  int compare(Symbol a, Symbol b) const;
  bool operator()(Term a, Term b) const { return compare(a, b) < 0; }

 private:
  std::function<long(Symbol)> rank_;
};

}  // namespace adsfuse

template <>
struct std::hash<adsfuse::Term> {
  std::size_t operator()(adsfuse::Term t) const noexcept { return t.is_null() ? 0 : t.hash(); }
};
