#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pbm/rational.hpp"

namespace pbm {

using Action = std::string;

// Reserved action names. `tick` is successful termination; l/r/s drive the
// copy (fork) operator.
inline const Action kActTick = "tick";
inline const Action kActForkLeft = "l";
inline const Action kActForkRight = "r";
inline const Action kActSplit = "s";

enum class Op : uint8_t {
  Stop,        // 0
  Skip,        // eps
  Prefix,      // a.([p1]t1 (+) ... (+) [pn]tn)
  Seq,         // t ; u
  Alt,         // t + u
  PAlt,        // t +[p] u
  SyncPar,     // t | u
  Interleave,  // t ||| u
  PPar,        // t |||[p] u
  CspPar,      // t ||{B} u
  FinIter,     // t^n
  InfIter,     // t^w
  KleeneStar,  // star(t, u)
  PKleeneStar, // pstar(p, t, u)
  FinRepl,     // repl(n, t)
  Bang,        // bang(t)
  PBang,       // pbang(p, t)
  Copy,        // cp(t)
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct PrefixBranch {
  Rat weight;
  TermPtr target;
};

// Immutable closed process term. Construct only through the mk* builders,
// which validate the operator invariants.
struct Term {
  Op op;
  Action act;                          // Prefix
  Rat prob;                            // PAlt/PPar/PKleeneStar/PBang
  unsigned count = 0;                  // FinIter/FinRepl
  std::vector<PrefixBranch> branches;  // Prefix, weights in (0,1], sum 1
  std::vector<Action> syncSet;         // CspPar, sorted + unique
  TermPtr a;                           // first child / body
  TermPtr b;                           // second child / exit
  size_t hashv = 0;
  unsigned size = 1;  // node count
};

TermPtr mkStop();
TermPtr mkSkip();
TermPtr mkPrefix(Action act, std::vector<PrefixBranch> branches);
TermPtr mkPrefix(Action act, TermPtr target);  // Dirac sugar
TermPtr mkSeq(TermPtr l, TermPtr r);
TermPtr mkAlt(TermPtr l, TermPtr r);
TermPtr mkPAlt(Rat p, TermPtr l, TermPtr r);
TermPtr mkSyncPar(TermPtr l, TermPtr r);
TermPtr mkInterleave(TermPtr l, TermPtr r);
TermPtr mkPPar(Rat p, TermPtr l, TermPtr r);
TermPtr mkCspPar(std::vector<Action> syncSet, TermPtr l, TermPtr r);
TermPtr mkFinIter(TermPtr body, unsigned n);
TermPtr mkInfIter(TermPtr body);
TermPtr mkKleeneStar(TermPtr body, TermPtr exit);
TermPtr mkPKleeneStar(Rat p, TermPtr body, TermPtr exit);
TermPtr mkFinRepl(unsigned n, TermPtr body);
TermPtr mkBang(TermPtr body);
TermPtr mkPBang(Rat p, TermPtr body);
TermPtr mkCopy(TermPtr body);

// Total structural order: variant index first, then fields left to right.
// Stable across runs; equal iff structurally identical.
int compareTerms(const TermPtr& l, const TermPtr& r);
bool sameTerm(const TermPtr& l, const TermPtr& r);

struct TermLess {
  bool operator()(const TermPtr& l, const TermPtr& r) const { return compareTerms(l, r) < 0; }
};

}  // namespace pbm
