#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "adsfuse/assertion.hpp"
#include "adsfuse/model.hpp"
#include "adsfuse/term.hpp"

namespace adsfuse {

// Bottom-up evaluation t^{W,A}. Throws UninterpretedSymbol for symbols with
// no fixed semantics (opaque symbols, complex roles, unassigned nominals).
PointSet eval(Term t, const FiniteInterpretation& m);
// Independent point-by-point evaluator, used to cross-check eval.
bool holds_at(Term t, const FiniteInterpretation& m, unsigned point);

bool check(const Assertion& a, const FiniteInterpretation& m);
// All assertions hold and the model is well formed.
bool check(const AssertionSet& gamma, const FiniteInterpretation& m);

// The set function a symbol denotes in m.
using SetFunction = std::function<PointSet(std::span<const PointSet>)>;
SetFunction interpret(Symbol f, const FiniteInterpretation& m);

// Admitted role interpretations for a model search.
struct ModelClass {
  std::map<std::string, RoleFlags> roles;
  void add(const std::string& role, RoleFlags flags = {}) { roles[role] = flags; }
};

struct OracleOptions {
  // Conflict budget per domain size; 0 = unbounded.
  std::uint64_t conflict_budget = 2'000'000;
};

// Found(model) or NotFoundUpTo(bound). NotFound is not a proof of
// unsatisfiability.
struct OracleResult {
  std::optional<FiniteInterpretation> model;
  unsigned bound = 0;
  bool found() const { return model.has_value(); }
};

// Smallest model with at most max_domain points. Objects are pinned to the
// first points in name order (every model is isomorphic to one of that shape).
// Throws ResourceError("oracle-budget") when the solver budget runs out.
OracleResult find_model(const AssertionSet& gamma, const ModelClass& cls, unsigned max_domain,
                        const OracleOptions& opts = {});

// Points of later parts are shifted past earlier ones; objects and nominals
// keep their first occurrence.
FiniteInterpretation disjoint_union(std::span<const FiniteInterpretation> parts);

// f^{union}(X) = ⋃_p f^{W_p}(X ∩ W_p) for all argument tuples over the union
// of `parts` (exhaustive over subsets; union domain ≤ 10).
bool union_identity_holds(Symbol f, std::span<const FiniteInterpretation> parts);

// The three covering-term conditions for `cover` (one variable `var`) against
// f, exhaustively over subsets of m's domain (domain ≤ 6).
bool verify_covering_term(const FiniteInterpretation& m, Symbol f, Term cover,
                          std::string_view var = "x");

// Meet distribution in every argument and the unit condition (F() = W for a
// nullary function).
bool verify_normality(unsigned domain_size, const SetFunction& fn, unsigned arity);
bool verify_normality(const FiniteInterpretation& m, Symbol f);

}  // namespace adsfuse
