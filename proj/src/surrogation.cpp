#include "adsfuse/surrogation.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "adsfuse/error.hpp"

namespace adsfuse {

namespace {
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

bool is_alien(Component i, Term t) {
  return t.is_app() && t.symbol()->component() == other(i);
}
}  // namespace

SurrogateTable::SurrogateTable(const SurrogateTable& other) {
  std::lock_guard lock(other.mu_);
  forward_ = other.forward_;
  backward_ = other.backward_;
}

SurrogateTable& SurrogateTable::operator=(const SurrogateTable& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  forward_ = other.forward_;
  backward_ = other.backward_;
  return *this;
}

Term SurrogateTable::surrogate_for(Term alien) {
  if (!alien.is_app())
    throw Error(ErrorCode::Precondition, "surrogates stand only for App-rooted terms");
  std::lock_guard lock(mu_);
  if (auto it = forward_.find(alien); it != forward_.end()) return it->second;
  std::string base = std::string(kSurrogatePrefix) + hex16(fnv1a(to_prefix(alien)));
  std::string name = base;
  for (int k = 1; backward_.count(name); ++k) name = base + "-" + std::to_string(k);
  Term var = mk_var(name);
  forward_.emplace(alien, var);
  backward_.emplace(name, alien);
  return var;
}

std::optional<Term> SurrogateTable::original(const std::string& surrogate_name) const {
  std::lock_guard lock(mu_);
  auto it = backward_.find(surrogate_name);
  if (it == backward_.end()) return std::nullopt;
  return it->second;
}

std::size_t SurrogateTable::size() const {
  std::lock_guard lock(mu_);
  return forward_.size();
}

Term surrogate(Component i, Term t, SurrogateTable& table) {
  std::unordered_map<Term, Term> memo;
  std::function<Term(Term)> go = [&](Term s) -> Term {
    if (s.args().empty() && !is_alien(i, s)) return s;
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    Term r;
    if (is_alien(i, s)) {
      r = table.surrogate_for(s);
    } else {
      std::vector<Term> args;
      for (Term a : s.args()) args.push_back(go(a));
      switch (s.kind()) {
        case TermKind::Not: r = mk_not(args[0]); break;
        case TermKind::And: r = mk_and(args[0], args[1]); break;
        case TermKind::Or: r = mk_or(args[0], args[1]); break;
        default: r = mk_app(s.symbol(), std::move(args)); break;
      }
    }
    memo.emplace(s, r);
    return r;
  };
  return go(t);
}

Term desurrogate(Term t, const SurrogateTable& table) {
  std::unordered_map<std::string, Term> by_var;
  for (const auto& name : free_vars(t)) {
    if (!name.starts_with(kSurrogatePrefix)) continue;
    auto orig = table.original(name);
    if (!orig) throw Error(ErrorCode::UnknownSurrogate, "unknown surrogate variable '" + name + "'");
    by_var.emplace(name, desurrogate(*orig, table));
  }
  return by_var.empty() ? t : substitute(t, by_var);
}

std::vector<Term> topmost_aliens(Component i, Term t) {
  std::vector<Term> out;
  std::unordered_set<Term> seen;
  std::vector<Term> stack{t};
  while (!stack.empty()) {
    Term s = stack.back();
    stack.pop_back();
    if (!seen.insert(s).second) continue;
    if (is_alien(i, s)) {
      out.push_back(s);
      continue;
    }
    for (Term a : s.args()) stack.push_back(a);
  }
  return out;
}

TypeAtomSet::TypeAtomSet(std::vector<Term> atoms, const TermOrder& order) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end(), order);
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

TypeAtomSet alien_closure(Component i, std::span<const Term> terms, const TermOrder& order) {
  std::unordered_set<Term> acc;
  for (Term t : terms) {
    for (Term alien : topmost_aliens(i, t))
      for (Term s : subterms(alien)) acc.insert(s);
    for (Term s : subterms(t))
      if (s.is_var()) acc.insert(s);
  }
  std::vector<Term> atoms;
  for (Term s : acc)
    if (s.kind() != TermKind::Top && s.kind() != TermKind::Bot) atoms.push_back(s);
  return TypeAtomSet(std::move(atoms), order);
}

TypeAtomSet alien_closure(Component i, const AssertionSet& gamma, const TermOrder& order) {
  auto terms = gamma.terms();
  return alien_closure(i, terms, order);
}

Term TypeDescriptor::materialize() const {
  std::vector<Term> lits;
  lits.reserve(atoms_->size());
  for (std::size_t k = 0; k < atoms_->size(); ++k)
    lits.push_back(positive(k) ? (*atoms_)[k] : mk_not((*atoms_)[k]));
  return mk_and_all(lits);
}

std::string TypeDescriptor::sign_string() const {
  std::string s;
  for (std::size_t k = 0; k < atoms_->size(); ++k) s += positive(k) ? '+' : '-';
  return s;
}

void require_type_cap(const TypeAtomSet& atoms, std::size_t cap) {
  if (atoms.size() > cap || atoms.size() > 62)
    throw ResourceError("type-cap", "type atom set has " + std::to_string(atoms.size()) +
                                        " members, cap is " + std::to_string(cap));
}

std::vector<TypeDescriptor> consistency_set(std::shared_ptr<const TypeAtomSet> atoms,
                                            std::size_t cap) {
  require_type_cap(*atoms, cap);
  const std::size_t n = atoms->size();
  std::vector<TypeDescriptor> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t k = (std::uint64_t{1} << n); k-- > 0;) {
    // Atom 0 is the most significant position of the counter.
    std::uint64_t signs = 0;
    for (std::size_t j = 0; j < n; ++j)
      if ((k >> (n - 1 - j)) & 1U) signs |= std::uint64_t{1} << j;
    out.emplace_back(atoms, signs);
  }
  return out;
}

unsigned e_depth(const std::function<bool(Symbol)>& in_e, Term t) {
  std::unordered_map<Term, unsigned> memo;
  std::function<unsigned(Term)> go = [&](Term s) -> unsigned {
    if (s.args().empty()) return s.is_app() && in_e(s.symbol()) ? 1 : 0;
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    unsigned d = 0;
    for (Term a : s.args()) d = std::max(d, go(a));
    if (s.is_app() && in_e(s.symbol())) ++d;
    memo.emplace(s, d);
    return d;
  };
  return go(t);
}

unsigned e_depth(const std::function<bool(Symbol)>& in_e, std::span<const Term> terms) {
  unsigned d = 0;
  for (Term t : terms) d = std::max(d, e_depth(in_e, t));
  return d;
}

unsigned component_depth(Component c, Term t) {
  return e_depth([c](Symbol f) { return f->component() == c; }, t);
}

unsigned component_depth(Component c, std::span<const Term> terms) {
  unsigned d = 0;
  for (Term t : terms) d = std::max(d, component_depth(c, t));
  return d;
}

AlternationDepths alternation_depths(Term t) {
  // best[c](s): longest alternating chain in s whose outermost symbol is in c.
  std::unordered_map<Term, std::pair<unsigned, unsigned>> memo;
  std::function<std::pair<unsigned, unsigned>(Term)> go = [&](Term s) -> std::pair<unsigned, unsigned> {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    unsigned from_first = 0, from_second = 0;  // chains starting in component 1 / 2
    for (Term a : s.args()) {
      auto [f1, f2] = go(a);
      from_first = std::max(from_first, f1);
      from_second = std::max(from_second, f2);
    }
    std::pair<unsigned, unsigned> r{from_first, from_second};
    if (s.is_app()) {
      auto comp = s.symbol()->component();
      if (comp == Component::First) r.first = std::max(from_first, from_second + 1);
      if (comp == Component::Second) r.second = std::max(from_second, from_first + 1);
    }
    memo.emplace(s, r);
    return r;
  };
  auto [starts_first, starts_second] = go(t);
  return {starts_second, starts_first};
}

AlternationDepths alternation_depths(std::span<const Term> terms) {
  AlternationDepths out;
  for (Term t : terms) {
    auto d = alternation_depths(t);
    out.first = std::max(out.first, d.first);
    out.second = std::max(out.second, d.second);
  }
  return out;
}

unsigned alternation_depth(std::span<const Term> terms) { return alternation_depths(terms).total(); }

Term iterate_cover(Term t, std::string_view var, unsigned m) {
  Term x = mk_var(var);
  Term power = x;  // t^k(x)
  Term upto = x;   // t^{≤k}(x)
  for (unsigned k = 1; k <= m; ++k) {
    power = substitute(t, var, power);
    upto = mk_and(power, upto);
  }
  return upto;
}

Term iterate_cover(Term t, unsigned m) {
  auto vars = free_vars(t);
  if (vars.size() > 1)
    throw Error(ErrorCode::Precondition, "covering iteration needs a one-variable term");
  return iterate_cover(t, vars.empty() ? std::string("x") : *vars.begin(), m);
}

Term apply_cover(Term t, std::string_view var, unsigned m, Term s) {
  return substitute(iterate_cover(t, var, m), var, s);
}

}  // namespace adsfuse
