#include "pbm/term.hpp"

#include <algorithm>
#include <functional>

#include "pbm/errors.hpp"

namespace pbm {

namespace {

size_t mix(size_t h, size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

size_t hashRat(const Rat& r) {
  return std::hash<std::string>{}(ratToString(r));
}

TermPtr finish(Term t) {
  size_t h = mix(0, static_cast<size_t>(t.op) + 1);
  unsigned sz = 1;
  h = mix(h, std::hash<std::string>{}(t.act));
  h = mix(h, hashRat(t.prob));
  h = mix(h, t.count);
  for (const auto& br : t.branches) {
    h = mix(h, hashRat(br.weight));
    h = mix(h, br.target->hashv);
    sz += br.target->size;
  }
  for (const auto& a : t.syncSet) h = mix(h, std::hash<std::string>{}(a));
  if (t.a) {
    h = mix(h, t.a->hashv);
    sz += t.a->size;
  }
  if (t.b) {
    h = mix(h, t.b->hashv);
    sz += t.b->size;
  }
  t.hashv = h;
  t.size = sz;
  return std::make_shared<const Term>(std::move(t));
}

void checkOpenProb(const Rat& p, const char* what) {
  if (!(p > 0 && p < 1))
    throw RangeError(std::string(what) + " parameter must be in (0,1), got " + ratToString(p));
}

}  // namespace

TermPtr mkStop() {
  static const TermPtr t = finish(Term{.op = Op::Stop});
  return t;
}

TermPtr mkSkip() {
  static const TermPtr t = finish(Term{.op = Op::Skip});
  return t;
}

TermPtr mkPrefix(Action act, std::vector<PrefixBranch> branches) {
  if (branches.empty()) throw RangeError("prefix needs at least one branch");
  Rat sum = 0;
  for (const auto& br : branches) {
    if (!(br.weight > 0 && br.weight <= 1))
      throw RangeError("prefix branch weight must be in (0,1], got " + ratToString(br.weight));
    sum += br.weight;
  }
  if (sum != 1)
    throw WeightSumError("prefix branch weights sum to " + ratToString(sum) + ", expected 1");
  Term t{.op = Op::Prefix, .act = std::move(act)};
  t.branches = std::move(branches);
  return finish(std::move(t));
}

TermPtr mkPrefix(Action act, TermPtr target) {
  return mkPrefix(std::move(act), std::vector<PrefixBranch>{{Rat(1), std::move(target)}});
}

TermPtr mkSeq(TermPtr l, TermPtr r) {
  return finish(Term{.op = Op::Seq, .a = std::move(l), .b = std::move(r)});
}

TermPtr mkAlt(TermPtr l, TermPtr r) {
  return finish(Term{.op = Op::Alt, .a = std::move(l), .b = std::move(r)});
}

TermPtr mkPAlt(Rat p, TermPtr l, TermPtr r) {
  checkOpenProb(p, "+[p]");
  return finish(Term{.op = Op::PAlt, .prob = std::move(p), .a = std::move(l), .b = std::move(r)});
}

TermPtr mkSyncPar(TermPtr l, TermPtr r) {
  return finish(Term{.op = Op::SyncPar, .a = std::move(l), .b = std::move(r)});
}

TermPtr mkInterleave(TermPtr l, TermPtr r) {
  return finish(Term{.op = Op::Interleave, .a = std::move(l), .b = std::move(r)});
}

TermPtr mkPPar(Rat p, TermPtr l, TermPtr r) {
  checkOpenProb(p, "|||[p]");
  return finish(Term{.op = Op::PPar, .prob = std::move(p), .a = std::move(l), .b = std::move(r)});
}

TermPtr mkCspPar(std::vector<Action> syncSet, TermPtr l, TermPtr r) {
  std::sort(syncSet.begin(), syncSet.end());
  syncSet.erase(std::unique(syncSet.begin(), syncSet.end()), syncSet.end());
  Term t{.op = Op::CspPar, .a = std::move(l), .b = std::move(r)};
  t.syncSet = std::move(syncSet);
  return finish(std::move(t));
}

TermPtr mkFinIter(TermPtr body, unsigned n) {
  return finish(Term{.op = Op::FinIter, .count = n, .a = std::move(body)});
}

TermPtr mkInfIter(TermPtr body) {
  return finish(Term{.op = Op::InfIter, .a = std::move(body)});
}

TermPtr mkKleeneStar(TermPtr body, TermPtr exit) {
  return finish(Term{.op = Op::KleeneStar, .a = std::move(body), .b = std::move(exit)});
}

TermPtr mkPKleeneStar(Rat p, TermPtr body, TermPtr exit) {
  checkOpenProb(p, "pstar");
  return finish(
      Term{.op = Op::PKleeneStar, .prob = std::move(p), .a = std::move(body), .b = std::move(exit)});
}

TermPtr mkFinRepl(unsigned n, TermPtr body) {
  return finish(Term{.op = Op::FinRepl, .count = n, .a = std::move(body)});
}

TermPtr mkBang(TermPtr body) {
  return finish(Term{.op = Op::Bang, .a = std::move(body)});
}

TermPtr mkPBang(Rat p, TermPtr body) {
  checkOpenProb(p, "pbang");
  return finish(Term{.op = Op::PBang, .prob = std::move(p), .a = std::move(body)});
}

TermPtr mkCopy(TermPtr body) {
  return finish(Term{.op = Op::Copy, .a = std::move(body)});
}

namespace {

int cmp3(int c) { return c < 0 ? -1 : (c > 0 ? 1 : 0); }

int compareRat(const Rat& l, const Rat& r) { return l < r ? -1 : (l > r ? 1 : 0); }

}  // namespace

int compareTerms(const TermPtr& l, const TermPtr& r) {
  if (l.get() == r.get()) return 0;
  if (l->op != r->op) return l->op < r->op ? -1 : 1;
  switch (l->op) {
    case Op::Stop:
    case Op::Skip:
      return 0;
    case Op::Prefix: {
      if (int c = cmp3(l->act.compare(r->act))) return c;
      if (l->branches.size() != r->branches.size())
        return l->branches.size() < r->branches.size() ? -1 : 1;
      for (size_t i = 0; i < l->branches.size(); ++i) {
        if (int c = compareRat(l->branches[i].weight, r->branches[i].weight)) return c;
        if (int c = compareTerms(l->branches[i].target, r->branches[i].target)) return c;
      }
      return 0;
    }
    case Op::PAlt:
    case Op::PPar:
    case Op::PKleeneStar:
      if (int c = compareRat(l->prob, r->prob)) return c;
      break;
    case Op::PBang:
      if (int c = compareRat(l->prob, r->prob)) return c;
      break;
    case Op::CspPar: {
      if (l->syncSet.size() != r->syncSet.size())
        return l->syncSet.size() < r->syncSet.size() ? -1 : 1;
      for (size_t i = 0; i < l->syncSet.size(); ++i)
        if (int c = cmp3(l->syncSet[i].compare(r->syncSet[i]))) return c;
      break;
    }
    case Op::FinIter:
    case Op::FinRepl:
      if (l->count != r->count) return l->count < r->count ? -1 : 1;
      break;
    default:
      break;
  }
  if (l->a || r->a) {
    if (!l->a) return -1;
    if (!r->a) return 1;
    if (int c = compareTerms(l->a, r->a)) return c;
  }
  if (l->b || r->b) {
    if (!l->b) return -1;
    if (!r->b) return 1;
    if (int c = compareTerms(l->b, r->b)) return c;
  }
  return 0;
}

bool sameTerm(const TermPtr& l, const TermPtr& r) {
  if (l.get() == r.get()) return true;
  if (l->hashv != r->hashv || l->size != r->size) return false;
  return compareTerms(l, r) == 0;
}

}  // namespace pbm
