#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace pbm {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational arithmetic; always canonical (lowest terms, positive
// denominator). No floating point enters any core computation.
using Rat = boost::multiprecision::cpp_rational;

// Parses "3/4", "2" or an exact decimal like "0.25" (-> 1/4).
Rat ratFromString(const std::string& text);

// "num/den" in lowest terms, denominator always printed ("1/1", "3/4").
std::string ratToString(const Rat& r);

double ratToDouble(const Rat& r);

Rat ratPow(const Rat& base, unsigned exp);

inline bool isProbability(const Rat& r) { return r >= 0 && r <= 1; }
inline bool isOpenProbability(const Rat& r) { return r > 0 && r < 1; }

}  // namespace pbm
