#include <doctest.h>

#include "pbm/metric.hpp"
#include "pbm/parser.hpp"
#include "pbm/semantics.hpp"
#include "pbm/termgen.hpp"

using namespace pbm;

namespace {

const Dist& only(const TransitionSet& ts, const Action& a) {
  const auto* d = ts.derivatives(a);
  REQUIRE(d != nullptr);
  REQUIRE(d->size() == 1);
  return d->front();
}

}  // namespace

TEST_CASE("derive examples") {
  TransitionSet eps = derive(mkSkip());
  CHECK(eps.byAction.size() == 1);
  CHECK(only(eps, kActTick).m.at(mkStop()) == 1);

  CHECK(derive(mkStop()).byAction.empty());

  TransitionSet pre = derive(parseTerm("a.([1/2]eps (+) [1/2]0)"));
  const Dist& d = only(pre, "a");
  CHECK(d.m.size() == 2);
  CHECK(d.m.at(mkSkip()) == Rat(1, 2));
  CHECK(d.m.at(mkStop()) == Rat(1, 2));

  // pbang(1/2, a.0) --a--> {0 : 1/2, 0|||pbang(1/2,a.0) : 1/2}
  TermPtr pb = parseTerm("pbang(1/2, a.0)");
  const Dist& pbd = only(derive(pb), "a");
  CHECK(pbd.m.size() == 2);
  CHECK(pbd.m.at(mkStop()) == Rat(1, 2));
  CHECK(pbd.m.at(mkInterleave(mkStop(), pb)) == Rat(1, 2));

  // a.0 +[1/3] a.eps --a--> {0 : 1/3, eps : 2/3}
  const Dist& pa = only(derive(parseTerm("a.0 +[1/3] a.eps")), "a");
  CHECK(pa.m.at(mkStop()) == Rat(1, 3));
  CHECK(pa.m.at(mkSkip()) == Rat(2, 3));
}

TEST_CASE("prefix merges duplicate targets") {
  const Dist& d = only(derive(parseTerm("a.([1/2]0 (+) [1/2]0)")), "a");
  CHECK(d.m.size() == 1);
  CHECK(d.m.at(mkStop()) == 1);
}

TEST_CASE("sequential composition") {
  // first component acts
  TransitionSet ts = derive(parseTerm("a.b.0;c.0"));
  const Dist& d = only(ts, "a");
  CHECK(d.m.begin()->first->op == Op::Seq);
  // skip passes control
  TransitionSet ts2 = derive(parseTerm("eps;c.0"));
  CHECK(ts2.enables("c"));
  CHECK(!ts2.enables(kActTick));
  // tick of the second component passes when the first terminates
  CHECK(derive(parseTerm("eps;eps")).enables(kActTick));
}

TEST_CASE("enabled") {
  CHECK(enabledActions(mkSkip()) == std::set<Action>{kActTick});
  CHECK(enabledActions(mkStop()).empty());
  CHECK(enabledActions(parseTerm("a.0 + b.0")) == std::set<Action>{"a", "b"});
}

TEST_CASE("parallel operator tick handling") {
  CHECK(derive(parseTerm("eps | eps")).enables(kActTick));
  CHECK(!derive(parseTerm("eps | 0")).enables(kActTick));
  CHECK(derive(parseTerm("eps ||| eps")).enables(kActTick));
  CHECK(!derive(parseTerm("eps ||| a.0")).enables(kActTick));
  CHECK(derive(parseTerm("eps ||{a} eps")).enables(kActTick));
  // sync only inside B minus tick; interleave outside
  TransitionSet csp = derive(parseTerm("a.0 ||{a} a.eps"));
  REQUIRE(csp.enables("a"));
  CHECK(csp.derivatives("a")->size() == 1);
  TransitionSet csp2 = derive(parseTerm("a.0 ||{} a.eps"));
  CHECK(csp2.derivatives("a")->size() == 2);
}

TEST_CASE("probabilistic parallel composition rules") {
  // both can move: convex combination of the two one-sided moves
  TermPtr t = parseTerm("a.0 |||[1/4] a.eps");
  const Dist& d = only(derive(t), "a");
  CHECK(d.m.size() == 2);
  CHECK(d.m.at(parseTerm("0 |||[1/4] a.eps")) == Rat(1, 4));
  CHECK(d.m.at(parseTerm("a.0 |||[1/4] eps")) == Rat(3, 4));
  // one side only: plain interleaving move
  TermPtr u = parseTerm("a.0 |||[1/4] b.0");
  CHECK(derive(u).derivatives("a")->size() == 1);
  CHECK(only(derive(u), "a").m.at(parseTerm("0 |||[1/4] b.0")) == 1);
}

TEST_CASE("iteration rules") {
  // x^0 ticks to 0
  CHECK(only(derive(parseTerm("a.0^0")), kActTick).m.at(mkStop()) == 1);
  // x^(n+1) steps into x;x^n
  const Dist& d = only(derive(parseTerm("a.0^2")), "a");
  CHECK(d.m.begin()->first->op == Op::Seq);
  CHECK(sameTerm(d.m.begin()->first->b, parseTerm("a.0^1")));
  // body that ticks terminates the loop
  CHECK(derive(parseTerm("eps^3")).enables(kActTick));
  // the extra rule: body ticks and acts gives one instance per m < n
  TransitionSet both = derive(parseTerm("(eps + a.0)^2"));
  REQUIRE(both.enables("a"));
  CHECK(both.derivatives("a")->size() == 2);  // continuations ^0 and ^1
  CHECK(both.enables(kActTick));
  // infinite iteration with a tick-only body deadlocks
  CHECK(derive(parseTerm("eps^w")).byAction.empty());
  CHECK(derive(parseTerm("a.0^w")).enables("a"));
}

TEST_CASE("kleene star variants") {
  TransitionSet ks = derive(parseTerm("star(a.0, b.eps)"));
  CHECK(ks.enables("a"));
  CHECK(ks.enables("b"));
  // exit tick passes through
  CHECK(derive(parseTerm("star(a.0, eps)")).enables(kActTick));
  // pstar with a shared action mixes exit and loop
  TermPtr ps = parseTerm("pstar(1/4, a.0, a.eps)");
  const Dist& d = only(derive(ps), "a");
  CHECK(d.m.at(mkSkip()) == Rat(1, 4));  // exit weighted p
  CHECK(d.m.at(mkSeq(mkStop(), ps)) == Rat(3, 4));
}

TEST_CASE("replication rules") {
  CHECK(only(derive(parseTerm("repl(0, a.0)")), kActTick).m.at(mkStop()) == 1);
  const Dist& d = only(derive(parseTerm("repl(2, a.0)")), "a");
  CHECK(d.m.begin()->first->op == Op::Interleave);
  TermPtr bang = parseTerm("bang(a.0)");
  CHECK(sameTerm(only(derive(bang), "a").m.begin()->first, mkInterleave(mkStop(), bang)));
  // bang of a tick-only body deadlocks
  CHECK(derive(parseTerm("bang(eps)")).byAction.empty());
}

TEST_CASE("copy operator") {
  // pass-through for non-fork actions, target not wrapped
  TransitionSet ts = derive(parseTerm("cp(a.eps)"));
  CHECK(sameTerm(only(ts, "a").m.begin()->first, mkSkip()));
  // fork: l- and r-derivatives combine under s into a synchronous pair
  TermPtr fork = parseTerm("cp(l.a.0 + r.b.0)");
  TransitionSet fts = derive(fork);
  CHECK(!fts.enables("l"));
  CHECK(!fts.enables("r"));
  const Dist& d = only(fts, kActSplit);
  TermPtr expect = mkSyncPar(mkCopy(parseTerm("a.0")), mkCopy(parseTerm("b.0")));
  CHECK(sameTerm(d.m.begin()->first, expect));
}

TEST_CASE("distributions sum to one on random terms") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    TermPtr t = randomTerm(seed, 3, {"a", "b"});
    for (const auto& [a, dists] : derive(t).byAction)
      for (const auto& d : dists) {
        CHECK(d.total() == 1);
        for (const auto& [u, p] : d.m) CHECK((p > 0 && p <= 1));
      }
  }
}

TEST_CASE("derive is deterministic") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    TermPtr t = randomTerm(seed, 3, {"a", "b"});
    TransitionSet t1 = derive(t);
    TransitionSet t2 = derive(t);
    REQUIRE(t1.byAction.size() == t2.byAction.size());
    auto i1 = t1.byAction.begin();
    auto i2 = t2.byAction.begin();
    for (; i1 != t1.byAction.end(); ++i1, ++i2) {
      CHECK(i1->first == i2->first);
      REQUIRE(i1->second.size() == i2->second.size());
      for (size_t k = 0; k < i1->second.size(); ++k)
        CHECK(compareDist(i1->second[k], i2->second[k]) == 0);
    }
  }
}

TEST_CASE("iteration unfoldings are bisimilar to their expansions") {
  // d_k(x^(n+1), x;x^n) = 0 and d_k(!^(n+1)x, x ||| !^n x) = 0
  std::vector<TermPtr> bodies{parseTerm("a.0"), parseTerm("eps + a.0"),
                              parseTerm("a.([1/2]eps (+) [1/2]0)"), parseTerm("a.b.0 + eps")};
  for (const auto& x : bodies) {
    for (unsigned n = 0; n <= 2; ++n) {
      CHECK(uptoK(mkFinIter(x, n + 1), mkSeq(x, mkFinIter(x, n)), 5, Rat(1)) == 0);
      CHECK(uptoK(mkFinRepl(n + 1, x), mkInterleave(x, mkFinRepl(n, x)), 5, Rat(1)) == 0);
    }
    CHECK(uptoK(mkInfIter(x), mkSeq(x, mkInfIter(x)), 5, Rat(1)) == 0);
    CHECK(uptoK(mkBang(x), mkInterleave(x, mkBang(x)), 5, Rat(1)) == 0);
  }
}

TEST_CASE("reachable") {
  ReachResult r0 = reachable(mkStop(), 5, 100);
  CHECK(r0.terms.size() == 1);
  CHECK(!r0.truncated);

  ReachResult r1 = reachable(parseTerm("a.b.0"), 1, 100);
  CHECK(r1.terms.size() == 2);
  CHECK(!r1.truncated);
  ReachResult r2 = reachable(parseTerm("a.b.0"), 3, 100);
  CHECK(r2.terms.size() == 3);  // a.b.0, b.0, 0

  // bang grows strictly; budget reports truncation
  ReachResult rb = reachable(parseTerm("bang(a.0)"), 50, 20);
  CHECK(rb.truncated);
  CHECK(rb.terms.size() >= 20);
  ReachResult rs = reachable(parseTerm("bang(a.0)"), 2, 100);
  CHECK(!rs.truncated);
  CHECK(rs.terms.size() == 3);
}
