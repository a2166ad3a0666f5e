#pragma once

#include <map>
#include <set>
#include <vector>

#include "pbm/term.hpp"

namespace pbm {

// Finite probability distribution over closed terms; masses in (0,1] and sum
// exactly to 1. Structurally equal keys are merged at insertion.
struct Dist {
  std::map<TermPtr, Rat, TermLess> m;

  static Dist dirac(TermPtr t);
  void add(const TermPtr& t, const Rat& mass);
  Rat total() const;
  size_t support() const { return m.size(); }
};

int compareDist(const Dist& l, const Dist& r);

// p*l + (1-p)*r
Dist convexSum(const Rat& p, const Dist& l, const Dist& r);

// Product distribution under a binary combinator.
template <typename F>
Dist productDist(const Dist& l, const Dist& r, F&& combine) {
  Dist out;
  for (const auto& [u, pu] : l.m)
    for (const auto& [v, pv] : r.m) out.add(combine(u, v), pu * pv);
  return out;
}

// Image of a distribution under a unary combinator.
template <typename F>
Dist mapDist(const Dist& d, F&& f) {
  Dist out;
  for (const auto& [u, p] : d.m) out.add(f(u), p);
  return out;
}

// All transitions of a term: per action, the (deduplicated, canonically
// ordered) derivative distributions der(t, a).
struct TransitionSet {
  std::map<Action, std::vector<Dist>> byAction;

  void add(const Action& a, Dist d);
  bool enables(const Action& a) const;
  const std::vector<Dist>* derivatives(const Action& a) const;
};

// Per-session memo for derive(); not synchronized — confine one cache to one
// analysis session (concurrent sessions use separate caches).
class DeriveCache {
 public:
  const TransitionSet& derive(const TermPtr& t);
  size_t size() const { return memo_.size(); }

 private:
  std::map<TermPtr, TransitionSet, TermLess> memo_;
};

// One-shot variants.
TransitionSet derive(const TermPtr& t);
std::set<Action> enabledActions(const TermPtr& t);

struct ReachResult {
  std::vector<TermPtr> terms;  // in TermOrder
  bool truncated = false;
};

// Terms reachable through derivative supports within `depth` steps; stops
// (with truncated=true) once more than `budget` distinct terms appear.
ReachResult reachable(const TermPtr& t, unsigned depth, size_t budget);
ReachResult reachable(const TermPtr& t, unsigned depth, size_t budget, DeriveCache& cache);

}  // namespace pbm
