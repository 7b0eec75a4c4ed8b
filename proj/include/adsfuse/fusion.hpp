#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adsfuse/assertion.hpp"
#include "adsfuse/reasoner.hpp"
#include "adsfuse/signature.hpp"
#include "adsfuse/surrogation.hpp"

namespace adsfuse {

// Two local components over disjoint roles, plus the declared vocabulary whose
// declaration order fixes the canonical atom order.
struct FusionSignature {
  ComponentSpec first;
  ComponentSpec second;
  Signature vocabulary;

  const ComponentSpec& component(Component c) const { return c == Component::Second ? second : first; }
  std::optional<Component> role_owner(const std::string& role) const;
  // Component owning f, or nullopt when neither admits it.
  std::optional<Component> owner(Symbol f) const;
};

// Throws SymbolCollision when a role is in both components and
// NonLocalComponent when either component is not local.
FusionSignature fuse(ComponentSpec first, ComponentSpec second, Signature vocabulary = {});

enum class FusionEngineKind { Typed, Covering, Auto };
enum class DSearch { Maximal, Exhaustive };
enum class SigmaIndex { Auto, First, Second };

struct FusionCaps {
  std::size_t types = kDefaultTypeCap;  // atoms per consistency set
  std::size_t subsets = 16;             // viable types under exhaustive D search
  std::size_t sigma = 16;               // U-terms under lift_universal
};

struct FusionOptions {
  FusionCaps caps;
  DSearch d_search = DSearch::Maximal;
  SigmaIndex sigma_index = SigmaIndex::Auto;
  // Adds the surrogated term and membership assertions to Γ₂ as well.
  bool symmetric_typed = false;
  bool record_subproblems = false;
  ReasonerOptions reasoner;
  std::function<void(const std::string&)> trace;
};

// One component query of the final stage, kept for inspection.
struct Subproblem {
  std::size_t choice = 0;
  Component component = Component::First;
  AssertionSet gamma;
  Verdict::Kind verdict = Verdict::Kind::Unsat;
};

struct TypedSearchState {
  std::shared_ptr<const TypeAtomSet> atoms;
  std::vector<TypeDescriptor> types;          // D
  std::vector<std::string> fresh_objects;     // a_t, parallel to `types`
  std::map<std::string, std::size_t> typing;  // a -> index into `types`
  AssertionSet gamma1;
  AssertionSet gamma2;
};

struct CoveringPlan {
  unsigned first_depth = 0;   // m
  unsigned second_depth = 0;  // r
  Term first_cover;           // c(x)
  Term second_cover;          // d(x)
  Component index = Component::First;
  std::shared_ptr<const TypeAtomSet> atoms;
  std::vector<TypeDescriptor> sigma;
  std::vector<std::string> fresh_objects;
  std::map<std::string, std::size_t> typing;
  AssertionSet gamma1;
  AssertionSet gamma2;
};

struct FusionStats {
  std::uint64_t component_calls[3] = {0, 0, 0};  // indexed by Component
  std::uint64_t sigma_queries = 0;
  std::uint64_t sigma_cache_hits = 0;
  unsigned max_recursion = 0;
};

struct FusionResult {
  Verdict verdict;
  std::optional<TypedSearchState> typed;
  std::optional<CoveringPlan> covering;
  std::vector<Subproblem> subproblems;
};

// Pluggable relativized satisfiability test used under lift_universal.
using RelativizedProcedure = std::function<Verdict(const AssertionSet&)>;

class FusionEngine {
 public:
  explicit FusionEngine(FusionSignature sig, FusionOptions opts = {});

  const FusionSignature& signature() const { return sig_; }
  ComponentReasoner& reasoner(Component c) { return *reasoners_[c == Component::Second ? 1 : 0]; }

  // Γ may hold term assertions; guesses a set of realized types.
  FusionResult decide_relativized_sat(const AssertionSet& gamma);
  // {a : t} ∪ Γ_term with component queries split per object.
  FusionResult decide_relativized_term_sat(Term t, std::span<const Inclusion> tbox);
  // Object assertions only; covering-term search.
  FusionResult decide_sat(const AssertionSet& gamma);
  FusionResult decide_term_sat(Term t);
  // Dispatches on `kind`; Auto picks the type search when term assertions are present.
  FusionResult decide(const AssertionSet& gamma, FusionEngineKind kind);

  // Σ_i: the members of C^i(Γ) satisfiable in the fusion.
  std::vector<TypeDescriptor> compute_sigma(Component i, const AssertionSet& gamma);
  // Index whose consistency set lowers the alternation depth, honouring the
  // configured preference. Throws Internal if neither does.
  Component sigma_index_for(const AssertionSet& gamma) const;

  // Relativized satisfiability of a set that may use the universal-role
  // symbols, reduced to the typed search per σ guess.
  Verdict decide_with_universal(const AssertionSet& gamma);

  const FusionStats& stats() const { return stats_; }
  SurrogateTable& surrogates() { return table_; }

 private:
  void check_vocabulary(const AssertionSet& gamma) const;
  Component pick_index(const AssertionSet& gamma, SigmaIndex preference) const;
  Verdict component_query(Component c, const AssertionSet& gamma, bool split);
  FusionResult typed_search(const AssertionSet& gamma, bool split);
  FusionResult covering_search(const AssertionSet& gamma, bool split, unsigned depth, unsigned limit);
  bool fusion_term_sat(Term t, unsigned depth, unsigned limit);
  std::vector<TypeDescriptor> sigma_for(Component i, const AssertionSet& gamma, unsigned depth,
                                        unsigned limit);
  void trace(const std::string& line) const;

  FusionSignature sig_;
  FusionOptions opts_;
  std::shared_ptr<ComponentReasoner> reasoners_[2];
  SurrogateTable table_;
  TermOrder order_;
  std::map<std::uint64_t, bool> term_sat_memo_;
  FusionStats stats_;
};

// Σ^U-style reduction: rewrites ∃U into ¬∀U¬, guesses σ over the ∀U subterms
// and asks `base` about each Σ^σ. Γ holds term assertions and memberships only.
// Throws ResourceError("sigma-cap") past `cap` U-terms.
Verdict lift_universal(const AssertionSet& gamma, const RelativizedProcedure& base,
                       std::size_t cap = 16);

// t ∧ ∀U((¬lhs₁ ∨ rhs₁) ∧ …): one term equisatisfiable with t relative to tbox.
Term internalize(Term t, std::span<const Inclusion> tbox);

// Replaces every ∃U(t) by ¬∀U(¬t).
Term eliminate_universal_exists(Term t);

}  // namespace adsfuse
