#pragma once

#include <functional>
#include <vector>

#include "pbm/semantics.hpp"

namespace pbm {

using DistanceFn = std::function<Rat(const TermPtr&, const TermPtr&)>;

// Optimal matching between two distributions, row/column marginals equal the
// distribution masses.
struct TransportPlan {
  std::vector<TermPtr> rows;  // left support, in TermOrder
  std::vector<TermPtr> cols;  // right support, in TermOrder
  std::vector<std::vector<Rat>> mass;
};

struct KantorovichResult {
  Rat value;
  TransportPlan plan;
};

// Exact min-cost transportation: marginals scaled to integers by the common
// denominator, solved by successive shortest augmenting paths, rational costs
// throughout. Deterministic (ties broken by row/column order).
KantorovichResult kantorovich(const DistanceFn& d, const Dist& left, const Dist& right);

// Value-only core over an explicit cost matrix; masses are the distribution
// masses in support order. Used by the metric engine's sweeps.
Rat kantorovichValue(const std::vector<Rat>& leftMass, const std::vector<Rat>& rightMass,
                     const std::vector<Rat>& costRowMajor);

// max(sup-inf, sup-inf) with inf over an empty set = 1 and sup over an empty
// set = 0.
using DistDistanceFn = std::function<Rat(const Dist&, const Dist&)>;
Rat hausdorff(const DistDistanceFn& dd, const std::vector<Dist>& left,
              const std::vector<Dist>& right);

// Same lifting over a precomputed |left| x |right| value matrix (both sides
// nonempty).
Rat hausdorffMatrix(size_t nl, size_t nr, const std::vector<Rat>& valueRowMajor);

}  // namespace pbm
