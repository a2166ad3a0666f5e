#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pbm {

// Command dispatch for the pbm tool; also usable in-process by tests.
// Exit codes: 0 ok, 1 parse/usage, 2 budget exceeded, 3 domain/parameter,
// 4 verification failure.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbm
