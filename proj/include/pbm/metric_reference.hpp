#pragma once

#include "pbm/metric.hpp"

namespace pbm {

// Serial reference implementation of d_k, straight from the definition
// (memoized recursion over the functional). Kept for testing and as the
// baseline in the benchmark; the sweep engine must agree with it exactly.
Rat referenceUptoK(const TermPtr& s, const TermPtr& t, unsigned k, const Rat& lambda,
                   size_t pairBudget = 100000);

}  // namespace pbm
