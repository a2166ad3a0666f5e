#include "pbm/semantics.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace pbm {

Dist Dist::dirac(TermPtr t) {
  Dist d;
  d.m.emplace(std::move(t), Rat(1));
  return d;
}

void Dist::add(const TermPtr& t, const Rat& mass) {
  if (mass == 0) return;
  auto [it, fresh] = m.emplace(t, mass);
  if (!fresh) it->second += mass;
}

Rat Dist::total() const {
  Rat s = 0;
  for (const auto& [t, p] : m) s += p;
  return s;
}

int compareDist(const Dist& l, const Dist& r) {
  auto li = l.m.begin(), ri = r.m.begin();
  for (; li != l.m.end() && ri != r.m.end(); ++li, ++ri) {
    if (int c = compareTerms(li->first, ri->first)) return c;
    if (li->second != ri->second) return li->second < ri->second ? -1 : 1;
  }
  if (li != l.m.end()) return 1;
  if (ri != r.m.end()) return -1;
  return 0;
}

Dist convexSum(const Rat& p, const Dist& l, const Dist& r) {
  Dist out;
  for (const auto& [t, q] : l.m) out.add(t, p * q);
  Rat ip = 1 - p;
  for (const auto& [t, q] : r.m) out.add(t, ip * q);
  return out;
}

void TransitionSet::add(const Action& a, Dist d) {
  auto& v = byAction[a];
  for (const auto& existing : v)
    if (compareDist(existing, d) == 0) return;
  v.push_back(std::move(d));
  std::sort(v.begin(), v.end(), [](const Dist& x, const Dist& y) { return compareDist(x, y) < 0; });
}

bool TransitionSet::enables(const Action& a) const {
  auto it = byAction.find(a);
  return it != byAction.end() && !it->second.empty();
}

const std::vector<Dist>* TransitionSet::derivatives(const Action& a) const {
  auto it = byAction.find(a);
  return it == byAction.end() ? nullptr : &it->second;
}

namespace {

// Hard-coded PGSOS rules of the process algebra plus the copy operator.
TransitionSet deriveImpl(const TermPtr& t, DeriveCache& cache) {
  TransitionSet out;
  switch (t->op) {
    case Op::Stop:
      break;
    case Op::Skip:
      out.add(kActTick, Dist::dirac(mkStop()));
      break;
    case Op::Prefix: {
      Dist d;
      for (const auto& br : t->branches) d.add(br.target, br.weight);
      out.add(t->act, std::move(d));
      break;
    }
    case Op::Seq: {
      const TransitionSet& lt = cache.derive(t->a);
      for (const auto& [a, dists] : lt.byAction) {
        if (a == kActTick) continue;
        for (const auto& mu : dists)
          out.add(a, mapDist(mu, [&](const TermPtr& u) { return mkSeq(u, t->b); }));
      }
      if (lt.enables(kActTick)) {
        const TransitionSet& rt = cache.derive(t->b);
        for (const auto& [a, dists] : rt.byAction)
          for (const auto& nu : dists) out.add(a, nu);
      }
      break;
    }
    case Op::Alt: {
      for (const auto& [a, dists] : cache.derive(t->a).byAction)
        for (const auto& mu : dists) out.add(a, mu);
      for (const auto& [a, dists] : cache.derive(t->b).byAction)
        for (const auto& nu : dists) out.add(a, nu);
      break;
    }
    case Op::PAlt: {
      const TransitionSet& lt = cache.derive(t->a);
      const TransitionSet& rt = cache.derive(t->b);
      std::set<Action> acts;
      for (const auto& [a, v] : lt.byAction) acts.insert(a);
      for (const auto& [a, v] : rt.byAction) acts.insert(a);
      for (const auto& a : acts) {
        const auto* L = lt.derivatives(a);
        const auto* R = rt.derivatives(a);
        if (L && !R)
          for (const auto& mu : *L) out.add(a, mu);
        else if (!L && R)
          for (const auto& nu : *R) out.add(a, nu);
        else if (L && R)
          for (const auto& mu : *L)
            for (const auto& nu : *R) out.add(a, convexSum(t->prob, mu, nu));
      }
      break;
    }
    case Op::SyncPar: {
      const TransitionSet& lt = cache.derive(t->a);
      const TransitionSet& rt = cache.derive(t->b);
      for (const auto& [a, lds] : lt.byAction) {
        if (a == kActTick) continue;
        const auto* rds = rt.derivatives(a);
        if (!rds) continue;
        for (const auto& mu : lds)
          for (const auto& nu : *rds)
            out.add(a, productDist(mu, nu, [](const TermPtr& u, const TermPtr& v) {
                      return mkSyncPar(u, v);
                    }));
      }
      if (lt.enables(kActTick) && rt.enables(kActTick))
        out.add(kActTick, Dist::dirac(mkStop()));
      break;
    }
    case Op::Interleave: {
      const TransitionSet& lt = cache.derive(t->a);
      const TransitionSet& rt = cache.derive(t->b);
      for (const auto& [a, lds] : lt.byAction) {
        if (a == kActTick) continue;
        for (const auto& mu : lds)
          out.add(a, mapDist(mu, [&](const TermPtr& u) { return mkInterleave(u, t->b); }));
      }
      for (const auto& [a, rds] : rt.byAction) {
        if (a == kActTick) continue;
        for (const auto& nu : rds)
          out.add(a, mapDist(nu, [&](const TermPtr& v) { return mkInterleave(t->a, v); }));
      }
      if (lt.enables(kActTick) && rt.enables(kActTick))
        out.add(kActTick, Dist::dirac(mkStop()));
      break;
    }
    case Op::PPar: {
      const TransitionSet& lt = cache.derive(t->a);
      const TransitionSet& rt = cache.derive(t->b);
      const Rat& p = t->prob;
      std::set<Action> acts;
      for (const auto& [a, v] : lt.byAction) acts.insert(a);
      for (const auto& [a, v] : rt.byAction) acts.insert(a);
      for (const auto& a : acts) {
        if (a == kActTick) continue;
        const auto* L = lt.derivatives(a);
        const auto* R = rt.derivatives(a);
        auto leftMove = [&](const Dist& mu) {
          return mapDist(mu, [&](const TermPtr& u) { return mkPPar(p, u, t->b); });
        };
        auto rightMove = [&](const Dist& nu) {
          return mapDist(nu, [&](const TermPtr& v) { return mkPPar(p, t->a, v); });
        };
        if (L && !R)
          for (const auto& mu : *L) out.add(a, leftMove(mu));
        else if (!L && R)
          for (const auto& nu : *R) out.add(a, rightMove(nu));
        else if (L && R)
          for (const auto& mu : *L)
            for (const auto& nu : *R)
              out.add(a, convexSum(p, leftMove(mu), rightMove(nu)));
      }
      if (lt.enables(kActTick) && rt.enables(kActTick))
        out.add(kActTick, Dist::dirac(mkStop()));
      break;
    }
    case Op::CspPar: {
      const TransitionSet& lt = cache.derive(t->a);
      const TransitionSet& rt = cache.derive(t->b);
      auto inB = [&](const Action& a) {
        return std::binary_search(t->syncSet.begin(), t->syncSet.end(), a);
      };
      for (const auto& [a, lds] : lt.byAction) {
        if (a == kActTick) continue;
        if (inB(a)) {
          const auto* rds = rt.derivatives(a);
          if (!rds) continue;
          for (const auto& mu : lds)
            for (const auto& nu : *rds)
              out.add(a, productDist(mu, nu, [&](const TermPtr& u, const TermPtr& v) {
                        return mkCspPar(t->syncSet, u, v);
                      }));
        } else {
          for (const auto& mu : lds)
            out.add(a, mapDist(mu, [&](const TermPtr& u) {
                      return mkCspPar(t->syncSet, u, t->b);
                    }));
        }
      }
      for (const auto& [a, rds] : rt.byAction) {
        if (a == kActTick || inB(a)) continue;
        for (const auto& nu : rds)
          out.add(a, mapDist(nu, [&](const TermPtr& v) {
                    return mkCspPar(t->syncSet, t->a, v);
                  }));
      }
      if (lt.enables(kActTick) && rt.enables(kActTick))
        out.add(kActTick, Dist::dirac(mkStop()));
      break;
    }
    case Op::FinIter: {
      if (t->count == 0) {
        out.add(kActTick, Dist::dirac(mkStop()));
        break;
      }
      const TransitionSet& bt = cache.derive(t->a);
      TermPtr next = mkFinIter(t->a, t->count - 1);
      for (const auto& [a, dists] : bt.byAction) {
        if (a == kActTick) continue;
        for (const auto& mu : dists)
          out.add(a, mapDist(mu, [&](const TermPtr& u) { return mkSeq(u, next); }));
      }
      if (bt.enables(kActTick)) {
        for (const auto& mu : *bt.derivatives(kActTick)) out.add(kActTick, mu);
        // x ticks and acts: one instance per m < n.
        for (unsigned m = 0; m < t->count; ++m) {
          TermPtr rest = mkFinIter(t->a, m);
          for (const auto& [a, dists] : bt.byAction) {
            if (a == kActTick) continue;
            for (const auto& nu : dists)
              out.add(a, mapDist(nu, [&](const TermPtr& u) { return mkSeq(u, rest); }));
          }
        }
      }
      break;
    }
    case Op::InfIter: {
      const TransitionSet& bt = cache.derive(t->a);
      for (const auto& [a, dists] : bt.byAction) {
        if (a == kActTick) continue;
        for (const auto& mu : dists)
          out.add(a, mapDist(mu, [&](const TermPtr& u) { return mkSeq(u, t); }));
      }
      break;
    }
    case Op::KleeneStar: {
      const TransitionSet& bt = cache.derive(t->a);
      for (const auto& [a, dists] : bt.byAction) {
        if (a == kActTick) continue;
        for (const auto& mu : dists)
          out.add(a, mapDist(mu, [&](const TermPtr& u) { return mkSeq(u, t); }));
      }
      for (const auto& [a, dists] : cache.derive(t->b).byAction)
        for (const auto& nu : dists) out.add(a, nu);
      break;
    }
    case Op::PKleeneStar: {
      const TransitionSet& bt = cache.derive(t->a);
      const TransitionSet& et = cache.derive(t->b);
      std::set<Action> acts;
      for (const auto& [a, v] : bt.byAction) acts.insert(a);
      for (const auto& [a, v] : et.byAction) acts.insert(a);
      for (const auto& a : acts) {
        const auto* L = (a == kActTick) ? nullptr : bt.derivatives(a);
        const auto* R = et.derivatives(a);
        auto loop = [&](const Dist& mu) {
          return mapDist(mu, [&](const TermPtr& u) { return mkSeq(u, t); });
        };
        if (a == kActTick) {
          if (R)
            for (const auto& nu : *R) out.add(a, nu);
          continue;
        }
        if (L && !R)
          for (const auto& mu : *L) out.add(a, loop(mu));
        else if (!L && R)
          for (const auto& nu : *R) out.add(a, nu);
        else if (L && R)
          for (const auto& mu : *L)
            for (const auto& nu : *R) out.add(a, convexSum(t->prob, nu, loop(mu)));
      }
      break;
    }
    case Op::FinRepl: {
      if (t->count == 0) {
        out.add(kActTick, Dist::dirac(mkStop()));
        break;
      }
      const TransitionSet& bt = cache.derive(t->a);
      TermPtr next = mkFinRepl(t->count - 1, t->a);
      for (const auto& [a, dists] : bt.byAction) {
        if (a == kActTick) continue;
        for (const auto& mu : dists)
          out.add(a, mapDist(mu, [&](const TermPtr& u) { return mkInterleave(u, next); }));
      }
      if (bt.enables(kActTick))
        for (const auto& mu : *bt.derivatives(kActTick)) out.add(kActTick, mu);
      break;
    }
    case Op::Bang: {
      const TransitionSet& bt = cache.derive(t->a);
      for (const auto& [a, dists] : bt.byAction) {
        if (a == kActTick) continue;
        for (const auto& mu : dists)
          out.add(a, mapDist(mu, [&](const TermPtr& u) { return mkInterleave(u, t); }));
      }
      break;
    }
    case Op::PBang: {
      const TransitionSet& bt = cache.derive(t->a);
      for (const auto& [a, dists] : bt.byAction) {
        if (a == kActTick) continue;
        for (const auto& mu : dists) {
          Dist spawned = mapDist(mu, [&](const TermPtr& u) { return mkInterleave(u, t); });
          out.add(a, convexSum(t->prob, mu, spawned));
        }
      }
      break;
    }
    case Op::Copy: {
      const TransitionSet& bt = cache.derive(t->a);
      for (const auto& [a, dists] : bt.byAction) {
        if (a == kActForkLeft || a == kActForkRight) continue;
        for (const auto& mu : dists) out.add(a, mu);
      }
      const auto* ls = bt.derivatives(kActForkLeft);
      const auto* rs = bt.derivatives(kActForkRight);
      if (ls && rs) {
        for (const auto& mu : *ls)
          for (const auto& nu : *rs) {
            Dist cl = mapDist(mu, [](const TermPtr& u) { return mkCopy(u); });
            Dist cr = mapDist(nu, [](const TermPtr& v) { return mkCopy(v); });
            out.add(kActSplit, productDist(cl, cr, [](const TermPtr& u, const TermPtr& v) {
                      return mkSyncPar(u, v);
                    }));
          }
      }
      break;
    }
  }
  return out;
}

}  // namespace

const TransitionSet& DeriveCache::derive(const TermPtr& t) {
  auto it = memo_.find(t);
  if (it != memo_.end()) return it->second;
  TransitionSet ts = deriveImpl(t, *this);
  return memo_.emplace(t, std::move(ts)).first->second;
}

TransitionSet derive(const TermPtr& t) {
  DeriveCache cache;
  return cache.derive(t);
}

std::set<Action> enabledActions(const TermPtr& t) {
  std::set<Action> acts;
  DeriveCache cache;
  for (const auto& [a, dists] : cache.derive(t).byAction)
    if (!dists.empty()) acts.insert(a);
  return acts;
}

ReachResult reachable(const TermPtr& t, unsigned depth, size_t budget, DeriveCache& cache) {
  ReachResult res;
  std::set<TermPtr, TermLess> seen;
  seen.insert(t);
  std::vector<TermPtr> frontier{t};
  for (unsigned d = 0; d < depth && !frontier.empty() && !res.truncated; ++d) {
    std::vector<TermPtr> next;
    for (const auto& u : frontier) {
      for (const auto& [a, dists] : cache.derive(u).byAction) {
        for (const auto& dist : dists) {
          for (const auto& [v, p] : dist.m) {
            if (seen.size() >= budget && !seen.count(v)) {
              res.truncated = true;
              goto done_frontier;
            }
            if (seen.insert(v).second) next.push_back(v);
          }
        }
      }
    }
  done_frontier:
    frontier = std::move(next);
  }
  res.terms.assign(seen.begin(), seen.end());
  return res;
}

ReachResult reachable(const TermPtr& t, unsigned depth, size_t budget) {
  DeriveCache cache;
  return reachable(t, depth, budget, cache);
}

}  // namespace pbm
