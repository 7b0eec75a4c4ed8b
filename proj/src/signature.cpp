#include "adsfuse/signature.hpp"

#include "adsfuse/error.hpp"

namespace adsfuse {

void Signature::claim(const std::string& name, char pool) {
  if (is_reserved_name(name))
    throw Error(ErrorCode::NameClash, "name '" + name + "' uses the reserved '$' prefix");
  auto [it, fresh] = pool_of_.emplace(name, pool);
  if (!fresh && it->second != pool)
    throw Error(ErrorCode::NameClash, "name '" + name + "' is declared in two different pools");
}

void Signature::add_set_var(const std::string& name) {
  bool known = has_set_var(name);
  claim(name, 'v');
  if (!known) set_vars_.push_back(name);
}

void Signature::add_object(const std::string& name) {
  bool known = has_object(name);
  claim(name, 'o');
  if (!known) objects_.push_back(name);
}

void Signature::add_relation(const std::string& name, Component c) {
  if (auto existing = relation_component(name)) {
    if (*existing != c)
      throw Error(ErrorCode::SymbolCollision,
                  "relation '" + name + "' is declared in both components");
    return;
  }
  claim(name, 'r');
  relations_.emplace_back(name, c);
}

void Signature::add_function(Symbol f) {
  if (function_rank_.count(f)) return;
  if (auto it = function_by_name_.find(f->name()); it != function_by_name_.end())
    throw Error(ErrorCode::SymbolCollision,
                "function symbol '" + f->name() + "' declared twice with different shapes");
  claim(f->name(), 'f');
  function_rank_[f] = static_cast<long>(functions_.size());
  function_by_name_[f->name()] = f;
  functions_.push_back(f);
}

bool Signature::has_set_var(const std::string& name) const {
  auto it = pool_of_.find(name);
  return it != pool_of_.end() && it->second == 'v';
}
bool Signature::has_object(const std::string& name) const {
  auto it = pool_of_.find(name);
  return it != pool_of_.end() && it->second == 'o';
}
bool Signature::has_relation(const std::string& name) const {
  return relation_component(name).has_value();
}
bool Signature::has_function(Symbol f) const { return function_rank_.count(f) > 0; }

std::optional<Component> Signature::relation_component(const std::string& name) const {
  for (const auto& [n, c] : relations_)
    if (n == name) return c;
  return std::nullopt;
}

long Signature::rank(Symbol f) const {
  auto it = function_rank_.find(f);
  return it == function_rank_.end() ? -1 : it->second;
}

TermOrder Signature::order() const {
  auto ranks = function_rank_;
  return TermOrder([ranks = std::move(ranks)](Symbol f) -> long {
    auto it = ranks.find(f);
    return it == ranks.end() ? -1 : it->second;
  });
}

Term Signature::var(const std::string& name) const {
  if (!has_set_var(name)) throw Error(ErrorCode::UndeclaredSymbol, "undeclared set variable '" + name + "'");
  return mk_var(name);
}

Term Signature::app(const std::string& function_name, std::vector<Term> args) const {
  auto it = function_by_name_.find(function_name);
  if (it == function_by_name_.end())
    throw Error(ErrorCode::UndeclaredSymbol, "undeclared function symbol '" + function_name + "'");
  for (Term a : args) check(a);
  return mk_app(it->second, std::move(args));
}

void Signature::check(Term t) const {
  for (Term s : subterms(t)) {
    if (s.is_var() && !s.is_surrogate() && !has_set_var(s.name()))
      throw Error(ErrorCode::UndeclaredSymbol, "undeclared set variable '" + s.name() + "'");
    if (s.is_app() && !has_function(s.symbol()))
      throw Error(ErrorCode::UndeclaredSymbol,
                  "undeclared function symbol '" + s.symbol()->name() + "'");
  }
}

void Signature::check(const Assertion& a) const {
  auto need_object = [&](const std::string& o) {
    if (!has_object(o)) throw Error(ErrorCode::UndeclaredSymbol, "undeclared object '" + o + "'");
  };
  if (auto* inc = std::get_if<Inclusion>(&a)) {
    check(inc->lhs);
    check(inc->rhs);
  } else if (auto* r = std::get_if<RoleAssertion>(&a)) {
    if (!has_relation(r->role))
      throw Error(ErrorCode::UndeclaredSymbol, "undeclared relation '" + r->role + "'");
    need_object(r->from);
    need_object(r->to);
  } else if (auto* m = std::get_if<Membership>(&a)) {
    need_object(m->object);
    check(m->term);
  }
}

void Signature::check(const AssertionSet& gamma) const {
  for (const auto& a : gamma) check(a);
}

}  // namespace adsfuse
