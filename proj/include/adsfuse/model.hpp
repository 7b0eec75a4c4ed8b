#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace adsfuse {

// Subset of a domain with at most 64 points.
using PointSet = std::uint64_t;
inline constexpr unsigned kMaxDomain = 64;

inline PointSet point_bit(unsigned p) { return PointSet{1} << p; }
inline PointSet full_set(unsigned n) { return n >= 64 ? ~PointSet{0} : (PointSet{1} << n) - 1; }
inline unsigned cardinality(PointSet s) { return static_cast<unsigned>(std::popcount(s)); }

struct RoleFlags {
  bool transitive = false;
  bool functional = false;
  friend bool operator==(const RoleFlags&, const RoleFlags&) = default;
};

// An explicit finite model together with an assignment: points 0..n-1, role
// edges, set-variable valuation and an injective object assignment.
class FiniteInterpretation {
 public:
  FiniteInterpretation() = default;
  explicit FiniteInterpretation(unsigned domain_size);

  unsigned size() const { return size_; }
  PointSet full() const { return full_set(size_); }

  void declare_role(const std::string& role, RoleFlags flags = {});
  bool has_role(const std::string& role) const { return roles_.count(role) > 0; }
  RoleFlags flags(const std::string& role) const;
  void add_edge(const std::string& role, unsigned from, unsigned to);
  bool has_edge(const std::string& role, unsigned from, unsigned to) const;
  // Undeclared roles have no edges.
  PointSet successors(const std::string& role, unsigned from) const;
  const std::map<std::string, std::vector<PointSet>>& roles() const { return roles_; }
  const std::map<std::string, RoleFlags>& role_flags() const { return flags_; }
  // Adds the edges needed to make every transitive-flagged role closed.
  void close_transitive();

  void set_var(const std::string& name, PointSet points);
  PointSet var(const std::string& name) const;
  const std::map<std::string, PointSet>& vars() const { return vars_; }

  void set_object(const std::string& name, unsigned point);
  std::optional<unsigned> object(const std::string& name) const;
  const std::map<std::string, unsigned>& objects() const { return objects_; }

  void set_nominal(const std::string& name, unsigned point);
  std::optional<unsigned> nominal(const std::string& name) const;
  const std::map<std::string, unsigned>& nominals() const { return nominals_; }

  // Transitive roles closed, functional roles functional, objects injective.
  bool well_formed(std::string* why = nullptr) const;

  friend bool operator==(const FiniteInterpretation&, const FiniteInterpretation&) = default;

 private:
  unsigned size_ = 0;
  std::map<std::string, std::vector<PointSet>> roles_;
  std::map<std::string, RoleFlags> flags_;
  std::map<std::string, PointSet> vars_;
  std::map<std::string, unsigned> objects_;
  std::map<std::string, unsigned> nominals_;
};

}  // namespace adsfuse
