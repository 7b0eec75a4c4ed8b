#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adsfuse/assertion.hpp"
#include "adsfuse/term.hpp"

namespace adsfuse {

// Declared vocabulary: set variables, object variables, relations and
// function symbols. The four name pools are kept disjoint.
class Signature {
 public:
  void add_set_var(const std::string& name);
  void add_object(const std::string& name);
  void add_relation(const std::string& name, Component c);
  void add_function(Symbol f);

  bool has_set_var(const std::string& name) const;
  bool has_object(const std::string& name) const;
  bool has_relation(const std::string& name) const;
  bool has_function(Symbol f) const;
  std::optional<Component> relation_component(const std::string& name) const;

  const std::vector<std::string>& set_vars() const { return set_vars_; }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::pair<std::string, Component>>& relations() const { return relations_; }
  const std::vector<Symbol>& functions() const { return functions_; }

  // Declaration index of f, or -1 when undeclared.
  long rank(Symbol f) const;
  TermOrder order() const;

  // Checked constructors (mk_term with declaration checks).
  Term var(const std::string& name) const;
  Term app(const std::string& function_name, std::vector<Term> args) const;

  // Throws UndeclaredSymbol on the first unknown name. Surrogate variables are
  // accepted without declaration.
  void check(Term t) const;
  void check(const Assertion& a) const;
  void check(const AssertionSet& gamma) const;

 private:
  void claim(const std::string& name, char pool);

  std::map<std::string, char> pool_of_;
  std::vector<std::string> set_vars_;
  std::vector<std::string> objects_;
  std::vector<std::pair<std::string, Component>> relations_;
  std::vector<Symbol> functions_;
  std::map<Symbol, long> function_rank_;
  std::map<std::string, Symbol> function_by_name_;
};

}  // namespace adsfuse
