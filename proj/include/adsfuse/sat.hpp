#pragma once

#include <cstdint>
#include <vector>

namespace adsfuse {

// Small CDCL solver (two watched literals, 1UIP learning, VSIDS, Luby
// restarts). Literals use the DIMACS convention: +v / -v for v >= 1.
class SatSolver {
 public:
  enum class Result { Sat, Unsat, Unknown };

  int new_var();
  int num_vars() const { return static_cast<int>(assign_.size()); }
  void add_clause(std::vector<int> lits);
  // conflict_budget = 0 means unbounded.
  Result solve(std::uint64_t conflict_budget = 0);
  bool value(int var) const;
  std::uint64_t conflicts() const { return conflicts_; }

 private:
  using Lit = int;  // 2*var + (negated ? 1 : 0), var 0-based
  static Lit encode(int dimacs);
  static int var_of(Lit l) { return l >> 1; }
  static Lit neg(Lit l) { return l ^ 1; }

  int lit_value(Lit l) const;  // 1 true, 0 false, -1 unassigned
  void enqueue(Lit l, int reason);
  int propagate();  // conflicting clause index or -1
  void analyze(int conflict, std::vector<Lit>& learnt, int& backjump);
  void backtrack(int level);
  int pick_branch();
  void bump(int var);
  void heap_insert(int var);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  int heap_pop();
  int attach(std::vector<Lit> lits);

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<signed char> assign_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<signed char> phase_;
  std::vector<double> activity_;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::vector<char> seen_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  bool unsat_ = false;
  std::uint64_t conflicts_ = 0;
};

}  // namespace adsfuse
