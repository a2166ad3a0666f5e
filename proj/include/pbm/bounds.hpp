#pragma once

#include <optional>
#include <vector>

#include "pbm/metric.hpp"

namespace pbm {

enum class CombKind {
  Prefix,
  Alt,
  PAlt,
  Seq,
  SyncPar,
  AsyncPar,
  CspPar,
  PPar,
  FinIter,
  FinRepl,
  InfIter,
  Bang,
  Kleene,
  PKleene,
  PBang,
  Copy,  // lipschitzFactor only (no closed-form bound)
};

struct CombinatorId {
  CombKind kind;
  unsigned n = 0;                // FinIter/FinRepl
  Rat p = Rat(1, 2);             // PAlt/PPar/PKleene/PBang
  std::vector<Action> syncSet;   // CspPar
  std::vector<Rat> weights;      // Prefix

  static CombinatorId prefix(std::vector<Rat> weights);
  static CombinatorId simple(CombKind k);
  static CombinatorId withP(CombKind k, Rat p);
  static CombinatorId iter(CombKind k, unsigned n);
  static CombinatorId cspPar(std::vector<Action> syncSet);
};

unsigned arity(const CombinatorId& id);
bool isCyclic(CombKind k);  // unbounded recursion: value iteration cannot close

// e1 + lambda^n * (1 - e1/lambda) * e2, clamped to [0,1].
Rat dHelper(unsigned n, const Rat& lambda, const Rat& e1, const Rat& e2);

// Closed-form upper bound on the distance between op-composed processes in
// terms of the component distances.
Rat bound(const CombinatorId& id, const Rat& lambda, const std::vector<Rat>& eps);

std::optional<Rat> lipschitzFactor(const CombinatorId& id, const Rat& lambda);

struct Witnesses {
  std::vector<TermPtr> left;
  std::vector<TermPtr> right;
};

// Component pairs at the requested distances that turn the bound into an
// equality once composed under the combinator.
Witnesses witness(const CombinatorId& id, const Rat& lambda, const std::vector<Rat>& eps);

TermPtr compose(const CombinatorId& id, const std::vector<TermPtr>& args);

struct BoundReport {
  Rat formulaValue;
  Rat engineLower;
  Rat engineUpper;
  bool tight = false;
  unsigned depthUsed = 0;
  bool sound() const { return engineLower <= formulaValue; }
};

// Builds witnesses, composes them, runs the metric engine. Acyclic
// combinators are checked for exact equality; cyclic ones for bracket
// containment at `depth`.
BoundReport verifyTightness(const CombinatorId& id, const Rat& lambda,
                            const std::vector<Rat>& eps, unsigned depth = 30,
                            const MetricOptions& opts = {});

}  // namespace pbm
