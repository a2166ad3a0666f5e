#include "pbm/termgen.hpp"

#include <random>

#include "pbm/errors.hpp"

namespace pbm {

namespace {

struct Gen {
  std::mt19937_64 rng;
  const std::vector<Action>& alphabet;

  uint64_t pick(uint64_t n) { return rng() % n; }

  const Action& act() { return alphabet[pick(alphabet.size())]; }

  std::vector<Rat> weights() {
    switch (pick(5)) {
      case 0: return {Rat(1)};
      case 1: return {Rat(1, 2), Rat(1, 2)};
      case 2: return {Rat(1, 4), Rat(3, 4)};
      case 3: return {Rat(1, 3), Rat(2, 3)};
      default: return {Rat(1, 4), Rat(1, 4), Rat(1, 2)};
    }
  }

  Rat openProb() {
    switch (pick(4)) {
      case 0: return Rat(1, 4);
      case 1: return Rat(1, 2);
      case 2: return Rat(3, 4);
      default: return Rat(1, 3);
    }
  }

  TermPtr gen(unsigned depth) {
    if (depth == 0) return pick(2) ? mkSkip() : mkStop();
    switch (pick(12)) {
      case 0: return mkStop();
      case 1: return mkSkip();
      case 2:
      case 3: {
        Action a = act();
        std::vector<PrefixBranch> branches;
        for (const auto& w : weights()) branches.push_back({w, gen(depth - 1)});
        return mkPrefix(a, std::move(branches));
      }
      case 4: return mkSeq(gen(depth - 1), gen(depth - 1));
      case 5: return mkAlt(gen(depth - 1), gen(depth - 1));
      case 6: return mkPAlt(openProb(), gen(depth - 1), gen(depth - 1));
      case 7: return mkSyncPar(gen(depth - 1), gen(depth - 1));
      case 8: return mkInterleave(gen(depth - 1), gen(depth - 1));
      case 9: return mkPPar(openProb(), gen(depth - 1), gen(depth - 1));
      case 10: {
        std::vector<Action> sync;
        uint64_t n = pick(3);
        for (uint64_t i = 0; i < n; ++i) sync.push_back(act());
        return mkCspPar(std::move(sync), gen(depth - 1), gen(depth - 1));
      }
      default: {
        unsigned n = static_cast<unsigned>(pick(3));
        return pick(2) ? mkFinIter(gen(depth - 1), n) : mkFinRepl(n, gen(depth - 1));
      }
    }
  }
};

}  // namespace

TermPtr randomTerm(uint64_t seed, unsigned maxDepth, const std::vector<Action>& alphabet) {
  if (maxDepth < 1) throw DomainError("randomTerm: maxDepth must be >= 1");
  if (alphabet.empty()) throw DomainError("randomTerm: alphabet must be nonempty");
  Gen g{std::mt19937_64(seed), alphabet};
  return g.gen(maxDepth);
}

}  // namespace pbm
