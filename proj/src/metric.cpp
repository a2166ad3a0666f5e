#include "pbm/metric.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <set>

#include "pbm/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pbm {

namespace {

constexpr int64_t kDiag = -1;  // identical support terms, cost 0

// One Kantorovich instance: a (left derivative, right derivative) pair.
struct Task {
  std::vector<Rat> lmass, rmass;
  std::vector<int64_t> cost;  // row-major pair indices into the value table
};

// All instances for one action with both derivative sets nonempty.
struct Block {
  uint32_t nl = 0, nr = 0;
  std::vector<Task> tasks;  // nl * nr, row-major
};

struct Node {
  std::vector<Block> blocks;
  bool mismatch = false;  // some action enabled on exactly one side
};

struct PairKey {
  TermPtr a, b;  // canonical: a <= b in TermOrder
};

struct PairKeyLess {
  bool operator()(const PairKey& l, const PairKey& r) const {
    int c = compareTerms(l.a, r.a);
    if (c) return c < 0;
    return compareTerms(l.b, r.b) < 0;
  }
};

struct Space {
  std::vector<Node> nodes;  // [0] is the root pair
  bool complete = false;    // closed under successors
  unsigned fullLayers = 0;  // BFS layers fully expanded
  bool budgetHit = false;
};

constexpr unsigned kUnbounded = std::numeric_limits<unsigned>::max();

// Builds the joint pair space reachable from (s, t), expanding at most
// `maxLayers` BFS layers and at most `budget` distinct pairs. Pairs left
// unexpanded evaluate to 0 forever, which keeps every sweep a lower bound and
// the root value exact up to depth `fullLayers`.
Space buildSpace(const TermPtr& s, const TermPtr& t, unsigned maxLayers, size_t budget,
                 DeriveCache& cache) {
  Space sp;
  std::map<PairKey, size_t, PairKeyLess> ids;

  auto canonical = [](TermPtr u, TermPtr v) {
    if (compareTerms(u, v) > 0) std::swap(u, v);
    return PairKey{std::move(u), std::move(v)};
  };

  std::vector<PairKey> keys;
  std::vector<size_t> frontier;

  auto getId = [&](const TermPtr& u, const TermPtr& v, std::vector<size_t>& next) -> int64_t {
    PairKey k = canonical(u, v);
    auto it = ids.find(k);
    if (it != ids.end()) return static_cast<int64_t>(it->second);
    if (sp.nodes.size() >= budget) {
      sp.budgetHit = true;
      return -2;
    }
    size_t id = sp.nodes.size();
    ids.emplace(k, id);
    sp.nodes.emplace_back();
    keys.push_back(k);
    next.push_back(id);
    return static_cast<int64_t>(id);
  };

  {
    std::vector<size_t> first;
    getId(s, t, first);
    frontier = std::move(first);
  }

  unsigned layer = 0;
  while (!frontier.empty() && layer < maxLayers && !sp.budgetHit) {
    std::vector<size_t> next;
    for (size_t id : frontier) {
      const TermPtr& u = keys[id].a;
      const TermPtr& v = keys[id].b;
      const TransitionSet& tu = cache.derive(u);
      const TransitionSet& tv = cache.derive(v);
      std::set<Action> acts;
      for (const auto& [a, d] : tu.byAction) acts.insert(a);
      for (const auto& [a, d] : tv.byAction) acts.insert(a);
      Node& nd = sp.nodes[id];
      for (const auto& a : acts) {
        if (!tu.enables(a) || !tv.enables(a)) {
          nd.mismatch = true;
          nd.blocks.clear();
          break;
        }
      }
      if (nd.mismatch) continue;
      for (const auto& a : acts) {
        const auto& L = *tu.derivatives(a);
        const auto& R = *tv.derivatives(a);
        Block blk;
        blk.nl = static_cast<uint32_t>(L.size());
        blk.nr = static_cast<uint32_t>(R.size());
        blk.tasks.reserve(L.size() * R.size());
        for (const auto& mu : L) {
          for (const auto& nu : R) {
            Task task;
            task.lmass.reserve(mu.m.size());
            task.rmass.reserve(nu.m.size());
            for (const auto& [x, p] : mu.m) task.lmass.push_back(p);
            for (const auto& [y, q] : nu.m) task.rmass.push_back(q);
            task.cost.reserve(mu.m.size() * nu.m.size());
            for (const auto& [x, p] : mu.m) {
              for (const auto& [y, q] : nu.m) {
                if (sameTerm(x, y)) {
                  task.cost.push_back(kDiag);
                } else {
                  int64_t cid = getId(x, y, next);
                  if (cid == -2) return sp;  // budget hit; space stays usable
                  task.cost.push_back(cid);
                }
              }
            }
            blk.tasks.push_back(std::move(task));
          }
        }
        nd.blocks.push_back(std::move(blk));
      }
    }
    ++layer;
    sp.fullLayers = layer;
    frontier = std::move(next);
  }
  sp.complete = frontier.empty() && !sp.budgetHit;
  return sp;
}

Rat taskValue(const Task& task, const std::vector<Rat>& V) {
  const size_t nl = task.lmass.size(), nr = task.rmass.size();
  auto costAt = [&](size_t i, size_t j) -> Rat {
    int64_t id = task.cost[i * nr + j];
    return id == kDiag ? Rat(0) : V[static_cast<size_t>(id)];
  };
  if (nl == 1) {
    Rat v = 0;
    for (size_t j = 0; j < nr; ++j) v += task.rmass[j] * costAt(0, j);
    return v;
  }
  if (nr == 1) {
    Rat v = 0;
    for (size_t i = 0; i < nl; ++i) v += task.lmass[i] * costAt(i, 0);
    return v;
  }
  std::vector<Rat> costs(nl * nr);
  for (size_t i = 0; i < nl; ++i)
    for (size_t j = 0; j < nr; ++j) costs[i * nr + j] = costAt(i, j);
  return kantorovichValue(task.lmass, task.rmass, costs);
}

Rat evalNode(const Node& nd, const Rat& lambda, const std::vector<Rat>& V) {
  if (nd.mismatch) return Rat(1);
  Rat best = 0;
  std::vector<Rat> kvals;
  for (const auto& blk : nd.blocks) {
    kvals.resize(blk.tasks.size());
    for (size_t i = 0; i < blk.tasks.size(); ++i) kvals[i] = lambda * taskValue(blk.tasks[i], V);
    Rat h = hausdorffMatrix(blk.nl, blk.nr, kvals);
    if (h > best) best = h;
  }
  return best;
}

// One Jacobi sweep: out[i] = B(V)(pair i). Entries are independent, so the
// parallel schedule cannot change the result.
void sweep(const Space& sp, const Rat& lambda, const std::vector<Rat>& V, std::vector<Rat>& out,
           bool parallel) {
  const int64_t n = static_cast<int64_t>(sp.nodes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel && n > 63)
#endif
  for (int64_t i = 0; i < n; ++i) out[static_cast<size_t>(i)] = evalNode(sp.nodes[i], lambda, V);
#ifndef _OPENMP
  (void)parallel;
#endif
}

void checkLambda(const Rat& lambda, bool strict) {
  if (!(lambda > 0 && lambda <= 1))
    throw DomainError("lambda must be in (0,1], got " + ratToString(lambda));
  if (strict && lambda == 1) throw DomainError("lambda must be < 1 for this operation");
}

struct IterationOutcome {
  Rat rootValue;
  unsigned sweepsDone = 0;
  bool stabilized = false;
  unsigned stableAt = 0;  // d_{stableAt} is the fixed point when stabilized
};

IterationOutcome iterate(const Space& sp, const Rat& lambda, unsigned maxSweeps,
                         bool detectStabilization, bool parallel) {
  std::vector<Rat> V(sp.nodes.size(), Rat(0));
  std::vector<Rat> next(sp.nodes.size());
  IterationOutcome out;
  for (unsigned j = 1; j <= maxSweeps; ++j) {
    sweep(sp, lambda, V, next, parallel);
    out.sweepsDone = j;
    if (detectStabilization && next == V) {
      out.stabilized = true;
      out.stableAt = j - 1;
      break;
    }
    V.swap(next);
  }
  out.rootValue = out.stabilized ? next[0] : V[0];
  return out;
}

PartialInterval partialFromSpace(const Space& sp, const Rat& lambda, bool parallel) {
  PartialInterval part{Rat(0), Rat(1), 0};
  if (sp.fullLayers == 0 || sp.nodes.empty()) return part;
  unsigned k = sp.fullLayers;
  auto res = iterate(sp, lambda, k, false, parallel);
  part.lower = res.rootValue;
  Rat up = res.rootValue + ratPow(lambda, k);
  part.upper = up > 1 ? Rat(1) : up;
  part.depthUsed = k;
  return part;
}

}  // namespace

Rat uptoK(const TermPtr& s, const TermPtr& t, unsigned k, const Rat& lambda,
          const MetricOptions& opts) {
  checkLambda(lambda, false);
  if (k == 0 || sameTerm(s, t)) return 0;
  DeriveCache cache;
  Space sp = buildSpace(s, t, k, opts.pairBudget, cache);
  if (sp.budgetHit && sp.fullLayers < k) {
    throw BudgetExceededError(
        "pair budget (" + std::to_string(opts.pairBudget) + ") exceeded at depth " +
            std::to_string(sp.fullLayers) + " of " + std::to_string(k),
        partialFromSpace(sp, lambda, opts.parallel));
  }
  auto res = iterate(sp, lambda, k, sp.complete, opts.parallel);
  return res.rootValue;
}

DistanceResult approx(const TermPtr& s, const TermPtr& t, const Rat& lambda, const Rat& tol,
                      const MetricOptions& opts) {
  checkLambda(lambda, true);
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  unsigned k = 0;
  Rat pw = 1;
  while (pw > tol) {
    pw *= lambda;
    ++k;
  }
  if (sameTerm(s, t)) return {Rat(0), Rat(0), k, true};
  DeriveCache cache;
  Space sp = buildSpace(s, t, k, opts.pairBudget, cache);
  if (sp.budgetHit && sp.fullLayers < k) {
    throw BudgetExceededError("pair budget exceeded at depth " + std::to_string(sp.fullLayers) +
                                  " of " + std::to_string(k),
                              partialFromSpace(sp, lambda, opts.parallel));
  }
  auto res = iterate(sp, lambda, k, sp.complete, opts.parallel);
  if (res.stabilized) return {res.rootValue, res.rootValue, res.stableAt, true};
  Rat upper = res.rootValue + ratPow(lambda, k);
  if (upper > 1) upper = 1;
  return {res.rootValue, upper, k, false};
}

DistanceResult exactDistance(const TermPtr& s, const TermPtr& t, const Rat& lambda,
                             const MetricOptions& opts) {
  checkLambda(lambda, false);
  if (sameTerm(s, t)) return {Rat(0), Rat(0), 0, true};
  DeriveCache cache;
  Space sp = buildSpace(s, t, kUnbounded, opts.pairBudget, cache);
  if (!sp.complete) {
    throw BudgetExceededError(
        "joint pair space exceeds the pair budget (" + std::to_string(opts.pairBudget) + ")",
        partialFromSpace(sp, lambda, opts.parallel));
  }
  auto res = iterate(sp, lambda, opts.iterBudget, true, opts.parallel);
  if (res.stabilized) return {res.rootValue, res.rootValue, res.stableAt, true};
  Rat upper = res.rootValue + ratPow(lambda, res.sweepsDone);
  if (upper > 1) upper = 1;
  return {res.rootValue, upper, res.sweepsDone, false};
}

}  // namespace pbm
