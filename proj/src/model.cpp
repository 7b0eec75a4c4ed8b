#include "adsfuse/model.hpp"

#include <set>

#include "adsfuse/error.hpp"

namespace adsfuse {

FiniteInterpretation::FiniteInterpretation(unsigned domain_size) : size_(domain_size) {
  if (domain_size == 0 || domain_size > kMaxDomain)
    throw Error(ErrorCode::Precondition,
                "domain size must be in 1.." + std::to_string(kMaxDomain));
}

void FiniteInterpretation::declare_role(const std::string& role, RoleFlags flags) {
  roles_.try_emplace(role, std::vector<PointSet>(size_, 0));
  flags_[role] = flags;
}

RoleFlags FiniteInterpretation::flags(const std::string& role) const {
  auto it = flags_.find(role);
  return it == flags_.end() ? RoleFlags{} : it->second;
}

void FiniteInterpretation::add_edge(const std::string& role, unsigned from, unsigned to) {
  if (from >= size_ || to >= size_) throw Error(ErrorCode::Precondition, "edge outside domain");
  if (!has_role(role)) declare_role(role);
  roles_[role][from] |= point_bit(to);
}

bool FiniteInterpretation::has_edge(const std::string& role, unsigned from, unsigned to) const {
  return (successors(role, from) >> to) & 1U;
}

PointSet FiniteInterpretation::successors(const std::string& role, unsigned from) const {
  auto it = roles_.find(role);
  if (it == roles_.end()) return 0;
  return it->second[from];
}

void FiniteInterpretation::close_transitive() {
  for (auto& [role, succ] : roles_) {
    if (!flags(role).transitive) continue;
    for (unsigned k = 0; k < size_; ++k)
      for (unsigned i = 0; i < size_; ++i)
        if ((succ[i] >> k) & 1U) succ[i] |= succ[k];
  }
}

void FiniteInterpretation::set_var(const std::string& name, PointSet points) {
  vars_[name] = points & full();
}

PointSet FiniteInterpretation::var(const std::string& name) const {
  auto it = vars_.find(name);
  return it == vars_.end() ? 0 : it->second;
}

void FiniteInterpretation::set_object(const std::string& name, unsigned point) {
  if (point >= size_) throw Error(ErrorCode::Precondition, "object outside domain");
  objects_[name] = point;
}

std::optional<unsigned> FiniteInterpretation::object(const std::string& name) const {
  auto it = objects_.find(name);
  if (it == objects_.end()) return std::nullopt;
  return it->second;
}

void FiniteInterpretation::set_nominal(const std::string& name, unsigned point) {
  if (point >= size_) throw Error(ErrorCode::Precondition, "nominal outside domain");
  nominals_[name] = point;
}

std::optional<unsigned> FiniteInterpretation::nominal(const std::string& name) const {
  auto it = nominals_.find(name);
  if (it == nominals_.end()) return std::nullopt;
  return it->second;
}

bool FiniteInterpretation::well_formed(std::string* why) const {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  for (const auto& [role, succ] : roles_) {
    RoleFlags f = flags(role);
    for (unsigned p = 0; p < size_; ++p) {
      if (f.functional && cardinality(succ[p]) > 1)
        return fail("role " + role + " is not functional at point " + std::to_string(p));
      if (f.transitive)
        for (unsigned q = 0; q < size_; ++q)
          if (((succ[p] >> q) & 1U) && (succ[q] & ~succ[p]))
            return fail("role " + role + " is not transitively closed");
    }
  }
  std::set<unsigned> used;
  for (const auto& [name, p] : objects_)
    if (!used.insert(p).second) return fail("object assignment is not injective");
  return true;
}

}  // namespace adsfuse
