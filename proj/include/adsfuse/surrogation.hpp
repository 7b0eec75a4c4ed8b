#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "adsfuse/assertion.hpp"
#include "adsfuse/term.hpp"

namespace adsfuse {

// Bijection between alien App-rooted terms and their surrogate variables.
// Names are "$t-" followed by a hash of the canonical prefix form, so the
// same term gets the same name in every run.
class SurrogateTable {
 public:
  SurrogateTable() = default;
  SurrogateTable(const SurrogateTable& other);
  SurrogateTable& operator=(const SurrogateTable& other);

  Term surrogate_for(Term alien);
  std::optional<Term> original(const std::string& surrogate_name) const;
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<Term, Term> forward_;
  std::unordered_map<std::string, Term> backward_;
};

// sur_i(t): replaces the topmost subterms rooted in the other component's
// symbols by surrogates. Shared (Boolean) structure is traversed.
Term surrogate(Component i, Term t, SurrogateTable& table);
// Replaces surrogates by their originals until none remain.
Term desurrogate(Term t, const SurrogateTable& table);

// The topmost alien subterms of t with respect to component i.
std::vector<Term> topmost_aliens(Component i, Term t);

class TypeAtomSet {
 public:
  TypeAtomSet() = default;
  // Sorts and deduplicates with `order`.
  TypeAtomSet(std::vector<Term> atoms, const TermOrder& order);

  const std::vector<Term>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  Term operator[](std::size_t i) const { return atoms_[i]; }
  friend bool operator==(const TypeAtomSet&, const TypeAtomSet&) = default;

 private:
  std::vector<Term> atoms_;
};

// sub^i(Θ): all subterms of the topmost alien terms of Θ plus var(Θ). The
// constants ⊤ and ⊥ are left out since their truth value is fixed.
TypeAtomSet alien_closure(Component i, std::span<const Term> terms, const TermOrder& order = {});
TypeAtomSet alien_closure(Component i, const AssertionSet& gamma, const TermOrder& order = {});

// t_c over Θ: bit k of `signs` says whether atom k is taken positively.
class TypeDescriptor {
 public:
  TypeDescriptor() = default;
  TypeDescriptor(std::shared_ptr<const TypeAtomSet> atoms, std::uint64_t signs)
      : atoms_(std::move(atoms)), signs_(signs) {}

  const TypeAtomSet& atoms() const { return *atoms_; }
  const std::shared_ptr<const TypeAtomSet>& atoms_ptr() const { return atoms_; }
  std::uint64_t signs() const { return signs_; }
  bool positive(std::size_t k) const { return (signs_ >> k) & 1U; }

  // Conjunction of literals in atom order; ⊤ for an empty atom set.
  Term materialize() const;
  // Sign string such as "+-+" in atom order.
  std::string sign_string() const;

  friend bool operator==(const TypeDescriptor& a, const TypeDescriptor& b) {
    return a.signs_ == b.signs_ && (a.atoms_ == b.atoms_ || *a.atoms_ == *b.atoms_);
  }

 private:
  std::shared_ptr<const TypeAtomSet> atoms_;
  std::uint64_t signs_ = 0;
};

inline constexpr std::size_t kDefaultTypeCap = 16;

// C(Θ): all 2^|Θ| types, starting with the all-positive one and ending with
// the all-negative one. Throws ResourceError("type-cap") when |Θ| > cap.
std::vector<TypeDescriptor> consistency_set(std::shared_ptr<const TypeAtomSet> atoms,
                                            std::size_t cap = kDefaultTypeCap);
void require_type_cap(const TypeAtomSet& atoms, std::size_t cap);

// d_E(t): nesting depth of symbols selected by `in_e`.
unsigned e_depth(const std::function<bool(Symbol)>& in_e, Term t);
unsigned e_depth(const std::function<bool(Symbol)>& in_e, std::span<const Term> terms);
unsigned component_depth(Component c, Term t);
unsigned component_depth(Component c, std::span<const Term> terms);

struct AlternationDepths {
  unsigned first = 0;   // a₁: chains starting with a component-2 symbol
  unsigned second = 0;  // a₂: chains starting with a component-1 symbol
  unsigned total() const { return first + second; }
  friend bool operator==(const AlternationDepths&, const AlternationDepths&) = default;
};

AlternationDepths alternation_depths(Term t);
// Componentwise maximum over the set.
AlternationDepths alternation_depths(std::span<const Term> terms);
// a(Θ) = a₁(Θ) + a₂(Θ) with componentwise maxima. Taking the maximum of the
// per-term sums instead would not decrease on {∃R1.A, ∃R2.B}.
unsigned alternation_depth(std::span<const Term> terms);

// t^{≤m}(x) for a term whose only variable is `var`.
Term iterate_cover(Term t, std::string_view var, unsigned m);
// Same, with the variable read off t; t must have at most one free variable.
Term iterate_cover(Term t, unsigned m);
// t^{≤m}(s): iterate_cover with `var` replaced by s.
Term apply_cover(Term t, std::string_view var, unsigned m, Term s);

}  // namespace adsfuse
