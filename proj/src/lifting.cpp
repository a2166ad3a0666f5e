#include "pbm/lifting.hpp"

#include <cassert>
#include <optional>

#include "pbm/errors.hpp"

namespace pbm {

namespace {

BigInt lcm(const BigInt& a, const BigInt& b) { return a / boost::multiprecision::gcd(a, b) * b; }

// Integer transportation problem, rational edge costs. Supplies and demands
// must balance. Returns the integer flow matrix.
std::vector<std::vector<BigInt>> solveTransport(const std::vector<BigInt>& supply,
                                                const std::vector<BigInt>& demand,
                                                const std::function<Rat(size_t, size_t)>& cost) {
  const size_t nl = supply.size(), nr = demand.size();
  std::vector<std::vector<BigInt>> flow(nl, std::vector<BigInt>(nr, BigInt(0)));
  std::vector<BigInt> remS = supply, remD = demand;
  BigInt remaining = 0;
  for (const auto& d : demand) remaining += d;

  const size_t V = nl + nr;
  std::vector<std::optional<Rat>> dist(V);
  std::vector<int> parent(V);

  while (remaining > 0) {
    std::fill(dist.begin(), dist.end(), std::nullopt);
    std::fill(parent.begin(), parent.end(), -1);
    for (size_t i = 0; i < nl; ++i)
      if (remS[i] > 0) dist[i] = Rat(0);

    // Bellman-Ford; edge order fixed for deterministic parents.
    for (size_t round = 0; round + 1 < V + 1; ++round) {
      bool changed = false;
      for (size_t i = 0; i < nl; ++i) {
        for (size_t j = 0; j < nr; ++j) {
          Rat c = cost(i, j);
          if (dist[i]) {
            Rat cand = *dist[i] + c;
            if (!dist[nl + j] || cand < *dist[nl + j]) {
              dist[nl + j] = cand;
              parent[nl + j] = static_cast<int>(i);
              changed = true;
            }
          }
          if (flow[i][j] > 0 && dist[nl + j]) {
            Rat cand = *dist[nl + j] - c;
            if (!dist[i] || cand < *dist[i]) {
              dist[i] = cand;
              parent[i] = static_cast<int>(nl + j);
              changed = true;
            }
          }
        }
      }
      if (!changed) break;
    }

    // Cheapest reachable column with remaining demand; ties to lowest index.
    int sink = -1;
    for (size_t j = 0; j < nr; ++j) {
      if (remD[j] == 0 || !dist[nl + j]) continue;
      if (sink < 0 || *dist[nl + j] < *dist[nl + sink]) sink = static_cast<int>(j);
    }
    assert(sink >= 0 && "transport instance infeasible");

    // Bottleneck along the augmenting path.
    BigInt bottleneck = remD[sink];
    int node = static_cast<int>(nl) + sink;
    while (parent[node] != -1) {
      int prev = parent[node];
      if (node >= static_cast<int>(nl)) {
        // forward arc prev(row) -> node(col): unconstrained
      } else {
        // backward arc prev(col) -> node(row): limited by flow
        const BigInt& f = flow[node][prev - nl];
        if (f < bottleneck) bottleneck = f;
      }
      node = prev;
    }
    if (remS[node] < bottleneck) bottleneck = remS[node];
    assert(bottleneck > 0);

    int src = node;
    node = static_cast<int>(nl) + sink;
    while (parent[node] != -1) {
      int prev = parent[node];
      if (node >= static_cast<int>(nl))
        flow[prev][node - nl] += bottleneck;
      else
        flow[node][prev - nl] -= bottleneck;
      node = prev;
    }
    remS[src] -= bottleneck;
    remD[sink] -= bottleneck;
    remaining -= bottleneck;
  }
  return flow;
}

}  // namespace

KantorovichResult kantorovich(const DistanceFn& d, const Dist& left, const Dist& right) {
  TransportPlan plan;
  std::vector<Rat> lmass, rmass;
  for (const auto& [t, p] : left.m) {
    plan.rows.push_back(t);
    lmass.push_back(p);
  }
  for (const auto& [t, p] : right.m) {
    plan.cols.push_back(t);
    rmass.push_back(p);
  }
  const size_t nl = plan.rows.size(), nr = plan.cols.size();

  BigInt scale = 1;
  for (const auto& p : lmass) scale = lcm(scale, denominator(p));
  for (const auto& p : rmass) scale = lcm(scale, denominator(p));
  std::vector<BigInt> supply(nl), demand(nr);
  for (size_t i = 0; i < nl; ++i) supply[i] = numerator(lmass[i]) * (scale / denominator(lmass[i]));
  for (size_t j = 0; j < nr; ++j) demand[j] = numerator(rmass[j]) * (scale / denominator(rmass[j]));

  std::vector<Rat> costs(nl * nr);
  for (size_t i = 0; i < nl; ++i)
    for (size_t j = 0; j < nr; ++j)
      costs[i * nr + j] =
          sameTerm(plan.rows[i], plan.cols[j]) ? Rat(0) : d(plan.rows[i], plan.cols[j]);

  auto flow = solveTransport(supply, demand,
                             [&](size_t i, size_t j) -> Rat { return costs[i * nr + j]; });

  KantorovichResult res;
  res.value = 0;
  plan.mass.assign(nl, std::vector<Rat>(nr, Rat(0)));
  for (size_t i = 0; i < nl; ++i)
    for (size_t j = 0; j < nr; ++j) {
      if (flow[i][j] == 0) continue;
      Rat m(flow[i][j], scale);
      plan.mass[i][j] = m;
      res.value += costs[i * nr + j] * m;
    }
  res.plan = std::move(plan);
  return res;
}

Rat kantorovichValue(const std::vector<Rat>& leftMass, const std::vector<Rat>& rightMass,
                     const std::vector<Rat>& costRowMajor) {
  const size_t nl = leftMass.size(), nr = rightMass.size();
  BigInt scale = 1;
  for (const auto& p : leftMass) scale = lcm(scale, denominator(p));
  for (const auto& p : rightMass) scale = lcm(scale, denominator(p));
  std::vector<BigInt> supply(nl), demand(nr);
  for (size_t i = 0; i < nl; ++i)
    supply[i] = numerator(leftMass[i]) * (scale / denominator(leftMass[i]));
  for (size_t j = 0; j < nr; ++j)
    demand[j] = numerator(rightMass[j]) * (scale / denominator(rightMass[j]));
  auto flow = solveTransport(supply, demand,
                             [&](size_t i, size_t j) -> Rat { return costRowMajor[i * nr + j]; });
  Rat value = 0;
  for (size_t i = 0; i < nl; ++i)
    for (size_t j = 0; j < nr; ++j)
      if (flow[i][j] != 0) value += costRowMajor[i * nr + j] * Rat(flow[i][j], scale);
  return value;
}

Rat hausdorff(const DistDistanceFn& dd, const std::vector<Dist>& left,
              const std::vector<Dist>& right) {
  if (left.empty() && right.empty()) return 0;   // sup over empty set
  if (left.empty() || right.empty()) return 1;   // inf over empty set
  std::vector<Rat> vals(left.size() * right.size());
  for (size_t i = 0; i < left.size(); ++i)
    for (size_t j = 0; j < right.size(); ++j) vals[i * right.size() + j] = dd(left[i], right[j]);
  return hausdorffMatrix(left.size(), right.size(), vals);
}

Rat hausdorffMatrix(size_t nl, size_t nr, const std::vector<Rat>& v) {
  Rat best = 0;
  for (size_t i = 0; i < nl; ++i) {
    Rat inf = v[i * nr];
    for (size_t j = 1; j < nr; ++j)
      if (v[i * nr + j] < inf) inf = v[i * nr + j];
    if (inf > best) best = inf;
  }
  for (size_t j = 0; j < nr; ++j) {
    Rat inf = v[j];
    for (size_t i = 1; i < nl; ++i)
      if (v[i * nr + j] < inf) inf = v[i * nr + j];
    if (inf > best) best = inf;
  }
  return best;
}

}  // namespace pbm
