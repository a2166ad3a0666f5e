#pragma once

#include <string>

#include "pbm/term.hpp"

namespace pbm {

// Concrete syntax, whitespace-insensitive. Precedence tight to loose:
// prefix/postfix, ';', parallel family, alternative family.
TermPtr parseTerm(const std::string& text);

// Minimal-parentheses rendering; parseTerm(render(t)) is structurally t.
std::string render(const TermPtr& t);

}  // namespace pbm
