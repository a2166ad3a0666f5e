#pragma once

#include <cstdint>
#include <vector>

#include "pbm/term.hpp"

namespace pbm {

// Deterministic random closed term: non-recursive combinators plus finite
// iteration/replication with n <= 2, prefix weights from a fixed rational
// set. Same seed, same term.
TermPtr randomTerm(uint64_t seed, unsigned maxDepth, const std::vector<Action>& alphabet);

}  // namespace pbm
