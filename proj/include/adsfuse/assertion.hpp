#pragma once

#include <initializer_list>
#include <set>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "adsfuse/term.hpp"

namespace adsfuse {

// t₁ ⊑ t₂
struct Inclusion {
  Term lhs;
  Term rhs;
  friend bool operator==(const Inclusion&, const Inclusion&) = default;
};

// R(a, b)
struct RoleAssertion {
  std::string role;
  std::string from;
  std::string to;
  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

// a : t
struct Membership {
  std::string object;
  Term term;
  friend bool operator==(const Membership&, const Membership&) = default;
};

using Assertion = std::variant<Inclusion, RoleAssertion, Membership>;

inline bool is_term_assertion(const Assertion& a) { return std::holds_alternative<Inclusion>(a); }

std::string to_prefix(const Assertion& a);

// Finite set of assertions. Keeps first-insertion order for deterministic
// iteration; duplicates are dropped.
class AssertionSet {
 public:
  AssertionSet() = default;
  AssertionSet(std::initializer_list<Assertion> items);

  bool add(const Assertion& a);
  void add_all(const AssertionSet& other);
  bool contains(const Assertion& a) const;

  const std::vector<Assertion>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  // term(Γ): every term occurring at the top of an assertion, first-occurrence order.
  std::vector<Term> terms() const;
  // obj(Γ), sorted by name.
  std::vector<std::string> objects() const;

  std::vector<Inclusion> inclusions() const;
  std::vector<Membership> memberships() const;
  std::vector<RoleAssertion> role_assertions() const;

  AssertionSet term_assertions() const;
  AssertionSet object_assertions() const;
  bool has_term_assertions() const;

  // Set equality, ignoring insertion order.
  friend bool operator==(const AssertionSet& a, const AssertionSet& b);

 private:
  static std::string key(const Assertion& a);
  std::vector<Assertion> items_;
  std::unordered_set<std::string> keys_;
};

// Splits Γ into groups of objects connected through role assertions. Term
// assertions are not included in any group. Groups come in order of their
// smallest object name; objects inside a group are sorted.
std::vector<std::vector<std::string>> connected_objects(const AssertionSet& gamma);

// Restricts the object assertions of Γ to the given objects.
AssertionSet restrict_to_objects(const AssertionSet& gamma, const std::set<std::string>& objects);

}  // namespace adsfuse
