#include "adsfuse/sat.hpp"

#include <algorithm>
#include <cstdlib>

namespace adsfuse {

namespace {
double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}
}  // namespace

SatSolver::Lit SatSolver::encode(int dimacs) {
  int v = std::abs(dimacs) - 1;
  return 2 * v + (dimacs < 0 ? 1 : 0);
}

int SatSolver::new_var() {
  int v = static_cast<int>(assign_.size());
  assign_.push_back(-1);
  level_.push_back(0);
  reason_.push_back(-1);
  phase_.push_back(0);
  activity_.push_back(0.0);
  heap_pos_.push_back(-1);
  seen_.push_back(0);
  watches_.resize(2 * static_cast<std::size_t>(v + 1));
  heap_insert(v);
  return v + 1;
}

int SatSolver::lit_value(Lit l) const {
  signed char a = assign_[var_of(l)];
  if (a < 0) return -1;
  return a ^ (l & 1);
}

bool SatSolver::value(int var) const { return assign_[var - 1] == 1; }

void SatSolver::enqueue(Lit l, int reason) {
  int v = var_of(l);
  assign_[v] = static_cast<signed char>((l & 1) ? 0 : 1);
  level_[v] = static_cast<int>(trail_lim_.size());
  reason_[v] = reason;
  trail_.push_back(l);
}

int SatSolver::attach(std::vector<Lit> lits) {
  int idx = static_cast<int>(clauses_.size());
  watches_[lits[0]].push_back(idx);
  watches_[lits[1]].push_back(idx);
  clauses_.push_back(std::move(lits));
  return idx;
}

void SatSolver::add_clause(std::vector<int> dimacs) {
  if (unsat_) return;
  backtrack(0);
  std::vector<Lit> lits;
  lits.reserve(dimacs.size());
  for (int d : dimacs) lits.push_back(encode(d));
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == neg(lits[i])) return;  // tautology
    int val = lit_value(lits[i]);
    if (val == 1) return;
    if (val == 0) continue;
    kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    unsat_ = true;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() != -1) unsat_ = true;
    return;
  }
  attach(std::move(kept));
}

int SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit false_lit = neg(trail_[qhead_++]);
    auto& ws = watches_[false_lit];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      int ci = ws[i++];
      auto& c = clauses_[ci];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == 1) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (lit_value(c[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void SatSolver::analyze(int conflict, std::vector<Lit>& learnt, int& backjump) {
  const int cur = static_cast<int>(trail_lim_.size());
  learnt.assign(1, 0);
  int path = 0;
  Lit p = -1;
  std::size_t idx = trail_.size();
  int ci = conflict;
  do {
    const auto& c = clauses_[ci];
    for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      int v = var_of(c[k]);
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      bump(v);
      if (level_[v] >= cur)
        ++path;
      else
        learnt.push_back(c[k]);
    }
    while (!seen_[var_of(trail_[--idx])]) {
    }
    p = trail_[idx];
    ci = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = neg(p);

  backjump = 0;
  std::size_t max_i = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    if (level_[var_of(learnt[i])] > backjump) {
      backjump = level_[var_of(learnt[i])];
      max_i = i;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (Lit l : learnt) seen_[var_of(l)] = 0;
}

void SatSolver::backtrack(int level) {
  if (static_cast<int>(trail_lim_.size()) <= level) return;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[level];) {
    int v = var_of(trail_[i]);
    phase_[v] = assign_[v];
    assign_[v] = -1;
    reason_[v] = -1;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

void SatSolver::bump(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void SatSolver::heap_insert(int v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void SatSolver::heap_up(std::size_t i) {
  int v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (activity_[heap_[parent]] >= activity_[v]) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void SatSolver::heap_down(std::size_t i) {
  int v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && activity_[heap_[child + 1]] > activity_[heap_[child]]) ++child;
    if (activity_[heap_[child]] <= activity_[v]) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

int SatSolver::heap_pop() {
  int top = heap_.front();
  heap_pos_[top] = -1;
  int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

int SatSolver::pick_branch() {
  while (!heap_.empty()) {
    int v = heap_pop();
    if (assign_[v] < 0) return v;
  }
  return -1;
}

SatSolver::Result SatSolver::solve(std::uint64_t conflict_budget) {
  if (unsat_) return Result::Unsat;
  backtrack(0);
  if (propagate() != -1) {
    unsat_ = true;
    return Result::Unsat;
  }
  const std::uint64_t start = conflicts_;
  int restart = 0;
  std::uint64_t restart_limit = static_cast<std::uint64_t>(luby(2, restart) * 100);
  std::uint64_t in_restart = 0;
  std::vector<Lit> learnt;
  for (;;) {
    int conflict = propagate();
    if (conflict != -1) {
      ++conflicts_;
      ++in_restart;
      if (trail_lim_.empty()) {
        unsat_ = true;
        return Result::Unsat;
      }
      int backjump = 0;
      analyze(conflict, learnt, backjump);
      backtrack(backjump);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        int ci = attach(learnt);
        enqueue(learnt[0], ci);
      }
      var_inc_ /= 0.95;
      if (conflict_budget && conflicts_ - start >= conflict_budget) {
        backtrack(0);
        return Result::Unknown;
      }
      continue;
    }
    if (in_restart >= restart_limit) {
      backtrack(0);
      in_restart = 0;
      restart_limit = static_cast<std::uint64_t>(luby(2, ++restart) * 100);
      continue;
    }
    int v = pick_branch();
    if (v < 0) return Result::Sat;
    trail_lim_.push_back(trail_.size());
    enqueue(2 * v + (phase_[v] == 1 ? 0 : 1), -1);
  }
}

}  // namespace adsfuse
