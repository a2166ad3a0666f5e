#include "pbm/bounds.hpp"

#include <cassert>

#include "pbm/errors.hpp"

namespace pbm {

CombinatorId CombinatorId::prefix(std::vector<Rat> weights) {
  CombinatorId id{CombKind::Prefix};
  id.weights = std::move(weights);
  return id;
}

CombinatorId CombinatorId::simple(CombKind k) { return CombinatorId{k}; }

CombinatorId CombinatorId::withP(CombKind k, Rat p) {
  CombinatorId id{k};
  id.p = std::move(p);
  return id;
}

CombinatorId CombinatorId::iter(CombKind k, unsigned n) {
  CombinatorId id{k};
  id.n = n;
  return id;
}

CombinatorId CombinatorId::cspPar(std::vector<Action> syncSet) {
  CombinatorId id{CombKind::CspPar};
  id.syncSet = std::move(syncSet);
  return id;
}

unsigned arity(const CombinatorId& id) {
  switch (id.kind) {
    case CombKind::Prefix:
      return static_cast<unsigned>(id.weights.size());
    case CombKind::FinIter:
    case CombKind::FinRepl:
    case CombKind::InfIter:
    case CombKind::Bang:
    case CombKind::PBang:
    case CombKind::Copy:
      return 1;
    default:
      return 2;
  }
}

bool isCyclic(CombKind k) {
  return k == CombKind::InfIter || k == CombKind::Bang || k == CombKind::Kleene ||
         k == CombKind::PKleene || k == CombKind::PBang;
}

Rat dHelper(unsigned n, const Rat& lambda, const Rat& e1, const Rat& e2) {
  if (e1 > lambda && e1 != 1)
    throw DomainError("dHelper: first distance " + ratToString(e1) + " exceeds lambda " +
                      ratToString(lambda));
  Rat v = e1 + ratPow(lambda, n) * (1 - e1 / lambda) * e2;
  assert(v >= 0 && v <= 1 && "dHelper result required clamping");
  if (v < 0) v = 0;
  if (v > 1) v = 1;
  return v;
}

namespace {

void checkEps(const Rat& e) {
  if (!(e >= 0 && e <= 1)) throw DomainError("distance argument outside [0,1]: " + ratToString(e));
}

// ε(1 - x^n)/(1 - x) evaluated exactly; callers ensure x in [0,1).
Rat geomSum(const Rat& e, const Rat& x, unsigned n) { return e * (1 - ratPow(x, n)) / (1 - x); }

Rat infIterBound(const Rat& lambda, const Rat& e) {
  if (e == 0 || e == 1) return e;
  if (e > lambda) throw DomainError("distance argument exceeds lambda");
  return e / (1 - (lambda - e));
}

Rat bangBound(const Rat& lambda, const Rat& e) {
  if (e == 0 || e == 1) return e;
  if (e > lambda) throw DomainError("distance argument exceeds lambda");
  return e / (1 - (lambda * lambda - lambda * e));
}

}  // namespace

Rat bound(const CombinatorId& id, const Rat& lambda, const std::vector<Rat>& eps) {
  if (!(lambda > 0 && lambda <= 1)) throw DomainError("lambda must be in (0,1]");
  if (eps.size() != arity(id))
    throw ArityError("expected " + std::to_string(arity(id)) + " distance argument(s), got " +
                     std::to_string(eps.size()));
  for (const auto& e : eps) checkEps(e);

  switch (id.kind) {
    case CombKind::Prefix: {
      Rat acc = 0;
      for (size_t i = 0; i < eps.size(); ++i) acc += id.weights[i] * eps[i];
      return lambda * acc;
    }
    case CombKind::Alt:
    case CombKind::PAlt:
      return std::max(eps[0], eps[1]);
    case CombKind::Seq:
      if (eps[0] == 1) return 1;
      return std::max(dHelper(1, lambda, eps[0], eps[1]), eps[1]);
    case CombKind::SyncPar:
      if (eps[0] == 1 || eps[1] == 1) return 1;
      return dHelper(0, lambda, eps[0], eps[1]);
    case CombKind::AsyncPar:
    case CombKind::PPar:
      if (eps[0] == 1 || eps[1] == 1) return 1;
      return std::max(dHelper(2, lambda, eps[0], eps[1]), dHelper(2, lambda, eps[1], eps[0]));
    case CombKind::CspPar: {
      bool sync = false;
      for (const auto& a : id.syncSet)
        if (a != kActTick) sync = true;
      if (eps[0] == 1 || eps[1] == 1) return 1;
      if (sync) return dHelper(0, lambda, eps[0], eps[1]);
      return std::max(dHelper(2, lambda, eps[0], eps[1]), dHelper(2, lambda, eps[1], eps[0]));
    }
    case CombKind::FinIter: {
      const Rat& e = eps[0];
      if (e == 0 || e == 1) return e;
      if (e > lambda) throw DomainError("distance argument exceeds lambda");
      return geomSum(e, lambda - e, id.n);
    }
    case CombKind::FinRepl: {
      const Rat& e = eps[0];
      if (e == 0 || e == 1) return e;
      if (e > lambda) throw DomainError("distance argument exceeds lambda");
      return geomSum(e, lambda * lambda - lambda * e, id.n);
    }
    case CombKind::InfIter:
      return infIterBound(lambda, eps[0]);
    case CombKind::Bang:
      return bangBound(lambda, eps[0]);
    case CombKind::Kleene:
    case CombKind::PKleene:
      return std::max(infIterBound(lambda, eps[0]), eps[1]);
    case CombKind::PBang: {
      const Rat& e = eps[0];
      if (e == 0 || e == 1) return e;
      if (e > lambda) throw DomainError("distance argument exceeds lambda");
      return e / (1 - (1 - id.p) * (lambda * lambda - lambda * e));
    }
    case CombKind::Copy:
      throw DomainError("no closed-form distance bound for the copy operator");
  }
  throw DomainError("unknown combinator");
}

std::optional<Rat> lipschitzFactor(const CombinatorId& id, const Rat& lambda) {
  switch (id.kind) {
    case CombKind::FinIter:
    case CombKind::FinRepl:
      return Rat(id.n);
    case CombKind::PBang:
      return Rat(1) / (1 - (1 - id.p) * lambda * lambda);
    case CombKind::InfIter:
    case CombKind::Kleene:
    case CombKind::PKleene:
      if (lambda == 1) return std::nullopt;
      return Rat(1) / (1 - lambda);
    case CombKind::Bang:
      if (lambda == 1) return std::nullopt;
      return Rat(1) / (1 - lambda * lambda);
    case CombKind::Copy:
      return std::nullopt;
    default:
      return Rat(1);
  }
}

namespace {

// One-step witness pair over `a`: distance eps realized in the branch
// weights; continuation is eps/0.
std::pair<TermPtr, TermPtr> witnessOneStep(const Action& a, const Rat& lambda, const Rat& eps) {
  TermPtr t = mkPrefix(a, mkSkip());
  if (eps == 0) return {t, t};
  if (eps == 1) return {mkStop(), t};
  if (eps == lambda) {
    if (lambda == 1) throw DomainError("eps = lambda witness requires lambda < 1");
    return {mkPrefix(a, mkStop()), t};
  }
  if (eps < lambda) {
    std::vector<PrefixBranch> branches{{1 - eps / lambda, mkSkip()}, {eps / lambda, mkStop()}};
    return {mkPrefix(a, std::move(branches)), t};
  }
  throw DomainError("no witness for eps = " + ratToString(eps) + " at lambda = " +
                    ratToString(lambda));
}

// Two-step witness pair over `a` with shared inner action: used for the
// asynchronous family, where the component difference must survive one
// interleaved step.
std::pair<TermPtr, TermPtr> witnessTwoStep(const Action& a, const Action& inner,
                                           const Rat& lambda, const Rat& eps) {
  TermPtr innerStep = mkPrefix(inner, mkStop());
  TermPtr t = mkPrefix(a, innerStep);
  if (eps == 0) return {t, t};
  if (eps == 1) return {mkStop(), mkPrefix(a, mkSkip())};
  if (eps == lambda) {
    if (lambda == 1) throw DomainError("eps = lambda witness requires lambda < 1");
    return {mkPrefix(a, mkStop()), t};
  }
  if (eps < lambda) {
    std::vector<PrefixBranch> branches{{1 - eps / lambda, innerStep}, {eps / lambda, mkStop()}};
    return {mkPrefix(a, std::move(branches)), t};
  }
  throw DomainError("no witness for eps = " + ratToString(eps) + " at lambda = " +
                    ratToString(lambda));
}

Action sharedSyncAction(const CombinatorId& id) {
  for (const auto& a : id.syncSet)
    if (a != kActTick) return a;
  return "a";
}

}  // namespace

Witnesses witness(const CombinatorId& id, const Rat& lambda, const std::vector<Rat>& eps) {
  if (eps.size() != arity(id))
    throw ArityError("expected " + std::to_string(arity(id)) + " distance argument(s), got " +
                     std::to_string(eps.size()));
  for (const auto& e : eps) checkEps(e);
  Witnesses w;
  auto push = [&](std::pair<TermPtr, TermPtr> st) {
    w.left.push_back(std::move(st.first));
    w.right.push_back(std::move(st.second));
  };
  switch (id.kind) {
    case CombKind::Prefix:
    case CombKind::Alt:
    case CombKind::PAlt:
      // Distinct prefix actions force the diagonal matching.
      for (size_t i = 0; i < eps.size(); ++i)
        push(witnessOneStep("a" + std::to_string(i + 1), lambda, eps[i]));
      return w;
    case CombKind::Seq:
    case CombKind::SyncPar:
    case CombKind::FinIter:
    case CombKind::InfIter:
      for (const auto& e : eps) push(witnessOneStep("a", lambda, e));
      return w;
    case CombKind::Kleene:
    case CombKind::PKleene:
      // Loop and exit components on disjoint actions (the probabilistic
      // Kleene star is tight only in the disjoint-action regime).
      push(witnessOneStep("a1", lambda, eps[0]));
      push(witnessOneStep("a2", lambda, eps[1]));
      return w;
    case CombKind::CspPar: {
      bool sync = false;
      for (const auto& a : id.syncSet)
        if (a != kActTick) sync = true;
      if (sync) {
        Action a = sharedSyncAction(id);
        for (const auto& e : eps) push(witnessOneStep(a, lambda, e));
      } else {
        push(witnessTwoStep("a1", "a", lambda, eps[0]));
        push(witnessTwoStep("a2", "a", lambda, eps[1]));
      }
      return w;
    }
    case CombKind::AsyncPar:
    case CombKind::PPar:
      push(witnessTwoStep("a1", "a", lambda, eps[0]));
      push(witnessTwoStep("a2", "a", lambda, eps[1]));
      return w;
    case CombKind::FinRepl:
    case CombKind::Bang:
    case CombKind::PBang:
      push(witnessTwoStep("a1", "a", lambda, eps[0]));
      return w;
    case CombKind::Copy:
      throw DomainError("no bound witnesses for the copy operator");
  }
  throw DomainError("unknown combinator");
}

TermPtr compose(const CombinatorId& id, const std::vector<TermPtr>& args) {
  if (args.size() != arity(id))
    throw ArityError("expected " + std::to_string(arity(id)) + " argument(s), got " +
                     std::to_string(args.size()));
  switch (id.kind) {
    case CombKind::Prefix: {
      std::vector<PrefixBranch> branches;
      for (size_t i = 0; i < args.size(); ++i) branches.push_back({id.weights[i], args[i]});
      return mkPrefix("b", std::move(branches));
    }
    case CombKind::Alt:
      return mkAlt(args[0], args[1]);
    case CombKind::PAlt:
      return mkPAlt(id.p, args[0], args[1]);
    case CombKind::Seq:
      return mkSeq(args[0], args[1]);
    case CombKind::SyncPar:
      return mkSyncPar(args[0], args[1]);
    case CombKind::AsyncPar:
      return mkInterleave(args[0], args[1]);
    case CombKind::CspPar:
      return mkCspPar(id.syncSet, args[0], args[1]);
    case CombKind::PPar:
      return mkPPar(id.p, args[0], args[1]);
    case CombKind::FinIter:
      return mkFinIter(args[0], id.n);
    case CombKind::FinRepl:
      return mkFinRepl(id.n, args[0]);
    case CombKind::InfIter:
      return mkInfIter(args[0]);
    case CombKind::Bang:
      return mkBang(args[0]);
    case CombKind::Kleene:
      return mkKleeneStar(args[0], args[1]);
    case CombKind::PKleene:
      return mkPKleeneStar(id.p, args[0], args[1]);
    case CombKind::PBang:
      return mkPBang(id.p, args[0]);
    case CombKind::Copy:
      return mkCopy(args[0]);
  }
  throw DomainError("unknown combinator");
}

BoundReport verifyTightness(const CombinatorId& id, const Rat& lambda,
                            const std::vector<Rat>& eps, unsigned depth,
                            const MetricOptions& opts) {
  Witnesses w = witness(id, lambda, eps);
  TermPtr l = compose(id, w.left);
  TermPtr r = compose(id, w.right);
  BoundReport rep;
  rep.formulaValue = bound(id, lambda, eps);
  if (sameTerm(l, r)) {
    rep.engineLower = rep.engineUpper = 0;
    rep.tight = rep.formulaValue == 0;
    rep.depthUsed = 0;
    return rep;
  }
  if (isCyclic(id.kind)) {
    Rat lo = uptoK(l, r, depth, lambda, opts);
    Rat hi = lo + ratPow(lambda, depth);
    if (hi > 1) hi = 1;
    rep.engineLower = lo;
    rep.engineUpper = hi;
    rep.depthUsed = depth;
    rep.tight = lo <= rep.formulaValue && rep.formulaValue <= hi;
    return rep;
  }
  DistanceResult res = exactDistance(l, r, lambda, opts);
  rep.engineLower = res.lower;
  rep.engineUpper = res.upper;
  rep.depthUsed = res.depthUsed;
  rep.tight = res.exact && res.lower == rep.formulaValue;
  return rep;
}

}  // namespace pbm
