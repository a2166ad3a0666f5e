#include "pbm/rational.hpp"

#include <stdexcept>

namespace pbm {

Rat ratFromString(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rat(num, den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    // Exact decimal: 0.25 -> 25/100.
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (frac.empty()) throw std::invalid_argument("bad decimal literal: " + text);
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg) whole = whole.substr(1);
    BigInt w = whole.empty() ? BigInt(0) : BigInt(whole);
    BigInt n = w * scale + BigInt(frac);
    if (neg) n = -n;
    return Rat(n, scale);
  }
  return Rat(BigInt(text));
}

std::string ratToString(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

double ratToDouble(const Rat& r) { return r.convert_to<double>(); }

Rat ratPow(const Rat& base, unsigned exp) {
  Rat acc = 1;
  Rat b = base;
  unsigned e = exp;
  while (e > 0) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

}  // namespace pbm
