#pragma once

#include <iosfwd>

namespace pbm {

// Runs every acceptance criterion, printing one PASS/FAIL line per criterion.
// Returns the number of failed criteria.
int runAcceptance(std::ostream& out);

}  // namespace pbm
