#pragma once

#include "pbm/lifting.hpp"

namespace pbm {

struct MetricOptions {
  size_t pairBudget = 100000;  // distinct canonical term pairs
  unsigned iterBudget = 1000;  // value-iteration sweeps in exact mode
  bool parallel = true;        // OpenMP sweeps (results are bitwise equal)
};

struct DistanceResult {
  Rat lower;
  Rat upper;
  unsigned depthUsed = 0;
  bool exact = false;  // lower == upper == least fixed point
};

// Up-to-k bisimilarity distance d_k(s, t) = B^k(0)(s, t). Exact rational.
Rat uptoK(const TermPtr& s, const TermPtr& t, unsigned k, const Rat& lambda,
          const MetricOptions& opts = {});

// Two-sided approximation: picks the smallest k with lambda^k <= tol and
// returns [d_k, min(1, d_k + lambda^k)]; exact when iteration stabilizes.
DistanceResult approx(const TermPtr& s, const TermPtr& t, const Rat& lambda, const Rat& tol,
                      const MetricOptions& opts = {});

// Full value iteration over the joint reachable pair space; exact when two
// consecutive sweeps agree pointwise, otherwise the best d_k interval.
DistanceResult exactDistance(const TermPtr& s, const TermPtr& t, const Rat& lambda,
                             const MetricOptions& opts = {});

}  // namespace pbm
