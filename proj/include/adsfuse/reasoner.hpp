#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adsfuse/assertion.hpp"
#include "adsfuse/model.hpp"
#include "adsfuse/oracle.hpp"
#include "adsfuse/term.hpp"

namespace adsfuse {

struct Verdict {
  enum class Kind { Sat, Unsat, Resource };

  Kind kind = Kind::Unsat;
  std::optional<FiniteInterpretation> witness;
  std::string detail;  // resource tag

  static Verdict sat(std::optional<FiniteInterpretation> w = std::nullopt) {
    return {Kind::Sat, std::move(w), {}};
  }
  static Verdict unsat() { return {Kind::Unsat, std::nullopt, {}}; }
  static Verdict resource(std::string detail) { return {Kind::Resource, std::nullopt, std::move(detail)}; }

  bool is_sat() const { return kind == Kind::Sat; }
  bool is_unsat() const { return kind == Kind::Unsat; }
  bool is_resource() const { return kind == Kind::Resource; }
};

std::string_view to_string(Verdict::Kind k);

enum class Logic { ALC, ALCN, ALC_Rplus, ALC_f };

std::string_view logic_name(Logic l);
std::optional<Logic> parse_logic(std::string_view name);

struct ComponentCapabilities {
  bool object_sat = true;
  bool relativized_sat = true;
  bool covering_terms = true;
  bool local = true;
  std::string logic_name;
};

// One component of a fusion: its logic, roles and role flags.
struct ComponentSpec {
  Component index = Component::First;
  Logic logic = Logic::ALC;
  std::vector<std::string> roles;
  std::set<std::string> transitive;  // ALC_R+ only
  std::set<std::string> functional;  // ALC_f only
  // Non-local features. A component carrying any of them cannot be fused.
  bool universal_role = false;
  bool nominals = false;
  bool role_complement = false;

  bool has_role(const std::string& r) const;
  bool is_local() const { return !universal_role && !nominals && !role_complement; }
  // Whether f is one of the component's constructor symbols.
  bool admits(Symbol f) const;
  ComponentCapabilities capabilities() const;
  ModelClass model_class() const;
};

struct ReasonerOptions {
  std::uint64_t max_expansions = 5'000'000;
  // Sat witnesses with more points than this are dropped.
  unsigned max_witness_points = 64;
  // Test hook: ignores x/¬x clashes so the mutation check can observe failures.
  bool fault_ignore_atom_clash = false;
};

struct ReasonerStats {
  std::uint64_t calls = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t expansions = 0;
};

// Decision procedure for one component.
class ComponentReasoner {
 public:
  virtual ~ComponentReasoner() = default;

  virtual const ComponentSpec& spec() const = 0;
  ComponentCapabilities capabilities() const { return spec().capabilities(); }

  // Γ without term assertions.
  virtual Verdict decide_object_sat(const AssertionSet& gamma, bool want_witness = true) = 0;
  virtual Verdict decide_relativized_sat(const AssertionSet& gamma, bool want_witness = true) = 0;
  Verdict decide_term_sat(Term t, bool want_witness = true);
  Verdict decide_relativized_term_sat(Term t, std::span<const Inclusion> tbox,
                                      bool want_witness = true);

  // t_f(x) over the variable "x".
  virtual Term covering_term(Symbol f) const = 0;
  // Conjunction of covering terms, duplicates and redundant ⊤ conjuncts removed.
  Term combined_covering_term(std::span<const Symbol> e) const;

  virtual ReasonerStats stats() const = 0;
};

inline constexpr std::string_view kCoverVar = "x";

// Shared tableau engine configured per logic.
std::shared_ptr<ComponentReasoner> make_reasoner(ComponentSpec spec, ReasonerOptions opts = {});

// Satisfiability of object assertions without function symbols: each object's
// memberships must be jointly satisfiable.
Verdict decide_propositional(const AssertionSet& gamma);
bool propositionally_satisfiable(Term t);

}  // namespace adsfuse
