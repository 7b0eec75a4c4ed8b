#pragma once

// Shorthands for building DL-shaped terms in tests.

#include <string>

#include "adsfuse/term.hpp"

namespace adsfuse::testing {

inline Term var(const std::string& name) { return mk_var(name); }
inline Term neg(Term t) { return mk_not(t); }
inline Term conj(Term a, Term b) { return mk_and(a, b); }
inline Term disj(Term a, Term b) { return mk_or(a, b); }

inline Term some(const std::string& role, Term t, Component c = Component::First) {
  return mk_app(symbols::exists(role, c), {t});
}
inline Term only(const std::string& role, Term t, Component c = Component::First) {
  return mk_app(symbols::forall(role, c), {t});
}
inline Term at_least(unsigned n, const std::string& role, Component c = Component::First) {
  return mk_app(symbols::at_least(n, role, c), {});
}
inline Term at_most(unsigned n, const std::string& role, Component c = Component::First) {
  return mk_app(symbols::at_most(n, role, c), {});
}

}  // namespace adsfuse::testing
