#include "adsfuse/assertion.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace adsfuse {

std::string to_prefix(const Assertion& a) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Inclusion>)
          return "(sub " + to_prefix(x.lhs) + " " + to_prefix(x.rhs) + ")";
        else if constexpr (std::is_same_v<T, RoleAssertion>)
          return "(rel " + x.role + " " + x.from + " " + x.to + ")";
        else
          return "(member " + x.object + " " + to_prefix(x.term) + ")";
      },
      a);
}

AssertionSet::AssertionSet(std::initializer_list<Assertion> items) {
  for (const auto& a : items) add(a);
}

std::string AssertionSet::key(const Assertion& a) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Inclusion>)
          return "I" + std::to_string(x.lhs.id()) + ":" + std::to_string(x.rhs.id());
        else if constexpr (std::is_same_v<T, RoleAssertion>)
          return "R" + x.role + '\x1f' + x.from + '\x1f' + x.to;
        else
          return "M" + x.object + '\x1f' + std::to_string(x.term.id());
      },
      a);
}

bool AssertionSet::add(const Assertion& a) {
  if (!keys_.insert(key(a)).second) return false;
  items_.push_back(a);
  return true;
}

void AssertionSet::add_all(const AssertionSet& other) {
  for (const auto& a : other) add(a);
}

bool AssertionSet::contains(const Assertion& a) const { return keys_.count(key(a)) > 0; }

std::vector<Term> AssertionSet::terms() const {
  std::vector<Term> out;
  std::unordered_set<Term> seen;
  auto push = [&](Term t) {
    if (seen.insert(t).second) out.push_back(t);
  };
  for (const auto& a : items_) {
    if (auto* inc = std::get_if<Inclusion>(&a)) {
      push(inc->lhs);
      push(inc->rhs);
    } else if (auto* m = std::get_if<Membership>(&a)) {
      push(m->term);
    }
  }
  return out;
}

std::vector<std::string> AssertionSet::objects() const {
  std::set<std::string> s;
  for (const auto& a : items_) {
    if (auto* r = std::get_if<RoleAssertion>(&a)) {
      s.insert(r->from);
      s.insert(r->to);
    } else if (auto* m = std::get_if<Membership>(&a)) {
      s.insert(m->object);
    }
  }
  return {s.begin(), s.end()};
}

std::vector<Inclusion> AssertionSet::inclusions() const {
  std::vector<Inclusion> out;
  for (const auto& a : items_)
    if (auto* x = std::get_if<Inclusion>(&a)) out.push_back(*x);
  return out;
}

std::vector<Membership> AssertionSet::memberships() const {
  std::vector<Membership> out;
  for (const auto& a : items_)
    if (auto* x = std::get_if<Membership>(&a)) out.push_back(*x);
  return out;
}

std::vector<RoleAssertion> AssertionSet::role_assertions() const {
  std::vector<RoleAssertion> out;
  for (const auto& a : items_)
    if (auto* x = std::get_if<RoleAssertion>(&a)) out.push_back(*x);
  return out;
}

AssertionSet AssertionSet::term_assertions() const {
  AssertionSet out;
  for (const auto& a : items_)
    if (is_term_assertion(a)) out.add(a);
  return out;
}

AssertionSet AssertionSet::object_assertions() const {
  AssertionSet out;
  for (const auto& a : items_)
    if (!is_term_assertion(a)) out.add(a);
  return out;
}

bool AssertionSet::has_term_assertions() const {
  return std::any_of(items_.begin(), items_.end(), is_term_assertion);
}

bool operator==(const AssertionSet& a, const AssertionSet& b) { return a.keys_ == b.keys_; }

std::vector<std::vector<std::string>> connected_objects(const AssertionSet& gamma) {
  auto objs = gamma.objects();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < objs.size(); ++i) index[objs[i]] = i;
  std::vector<std::size_t> parent(objs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& r : gamma.role_assertions()) {
    auto x = find(index[r.from]), y = find(index[r.to]);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < objs.size(); ++i) groups[find(i)].push_back(objs[i]);
  std::vector<std::vector<std::string>> out;
  for (auto& [_, g] : groups) out.push_back(std::move(g));
  return out;
}

AssertionSet restrict_to_objects(const AssertionSet& gamma, const std::set<std::string>& objects) {
  AssertionSet out;
  for (const auto& a : gamma) {
    if (auto* r = std::get_if<RoleAssertion>(&a)) {
      if (objects.count(r->from) && objects.count(r->to)) out.add(a);
    } else if (auto* m = std::get_if<Membership>(&a)) {
      if (objects.count(m->object)) out.add(a);
    }
  }
  return out;
}

}  // namespace adsfuse
