#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "adsfuse/assertion.hpp"
#include "adsfuse/reasoner.hpp"

namespace adsfuse {

struct TableauConfig {
  std::vector<Inclusion> gcis;
  std::set<std::string> roles;
  std::set<std::string> transitive_roles;
  std::set<std::string> functional_roles;
  bool number_restrictions = false;
  bool blocking = true;
  std::uint64_t max_expansions = 5'000'000;
  unsigned max_witness_points = 64;
  bool fault_ignore_atom_clash = false;
};

// ABox tableau for ALC with GCIs, unqualified number restrictions, transitive
// and functional roles. GCIs become one concept added to every node;
// anonymous nodes are expanded depth first with subset blocking against their
// ancestors, and complete labels are cached between queries.
//
// Not thread safe; one instance per thread or external locking.
class Tableau {
 public:
  explicit Tableau(TableauConfig cfg);
  ~Tableau();
  Tableau(const Tableau&) = delete;
  Tableau& operator=(const Tableau&) = delete;

  // Γ must contain object assertions only; the TBox comes from the config.
  // Throws ResourceError("tableau-steps") when the expansion budget is spent.
  Verdict decide(const AssertionSet& gamma, bool want_witness);

  std::uint64_t expansions() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace adsfuse
