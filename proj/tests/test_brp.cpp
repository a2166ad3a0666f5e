#include <doctest.h>

#include <cmath>

#include "pbm/brp.hpp"
#include "pbm/errors.hpp"
#include "pbm/parser.hpp"

using namespace pbm;

TEST_CASE("channel builders") {
  // t = 0 aborts
  CHECK(render(buildCh2(0, 0, 0, Rat(1, 10), Rat(1, 10))) == "res_NOK.0");
  CHECK(render(buildChPrime(0, 1, 0, Rat(0), Rat(0))) == "res_NOK.0");
  // q = 0 drops the lost branch: a Dirac try2 step
  TermPtr ch2 = buildCh2(0, 0, 1, Rat(1, 10), Rat(0));
  REQUIRE(ch2->op == Op::Prefix);
  CHECK(ch2->act == "try2");
  REQUIRE(ch2->branches.size() == 1);
  CHECK(ch2->branches[0].weight == 1);
  CHECK(ch2->branches[0].target->act == "ack");
  // full branch shape
  TermPtr chp = buildChPrime(0, 0, 1, Rat(1, 10), Rat(1, 10));
  REQUIRE(chp->op == Op::Prefix);
  REQUIRE(chp->branches.size() == 2);
  CHECK(chp->branches[0].weight == Rat(1, 10));
  CHECK(chp->branches[0].target->act == "bot");
  CHECK(chp->branches[1].target->act == "c_d0_0");
}

TEST_CASE("spec model is a Dirac chain") {
  BrpParams params;
  params.N = 1;
  TermPtr brp = buildBrp(params.asSpec());
  ReachResult rr = reachable(brp, 20, 10000);
  CHECK(!rr.truncated);
  for (const auto& t : rr.terms)
    for (const auto& [a, dists] : derive(t).byAction)
      for (const auto& d : dists) CHECK(d.m.size() == 1);
}

TEST_CASE("brp model derives and stays finite at desk scale") {
  BrpParams params;
  params.N = 1;
  params.T = 1;
  params.p = 0;
  params.q = 0;
  TermPtr brp = buildBrp(params);
  CHECK(!derive(brp).byAction.empty());
  ReachResult rr = reachable(brp, 20, 10000);
  CHECK(!rr.truncated);
  CHECK(rr.terms.size() > 5);
}

TEST_CASE("stream performance formulas") {
  StreamPerf p0 = perfFromEpsilon(0.0, 20, 1);
  CHECK(p0.noRetry == 1.0);
  CHECK(p0.atMostK == 1.0);
  CHECK(p0.allItems == 1.0);
  CHECK(p0.atLeastN == 1.0);

  CHECK(perfFromEpsilon(1.0, 20, 1).noRetry == 0.0);

  // paper scenario: eps = 0.01052 gives at least 99%
  StreamPerf pw = perfFromEpsilon(0.01052, 20, 1);
  CHECK(pw.allItems >= 0.99 - 1e-4);
  CHECK(pw.allItems <= 0.9901);

  // item (c) at k = N*T equals item (e)
  for (double eps : {0.01, 0.2, 0.7}) {
    StreamPerf s = perfFromEpsilon(eps, 5, 2, 10, 5);
    CHECK(s.atMostK == doctest::Approx(s.allItems).epsilon(1e-12));
  }
}

TEST_CASE("channel performance formulas") {
  ChannelPerf c0 = perfChannelFromDelta(0.0, 2);
  CHECK(c0.noRetry == 1.0);
  CHECK(c0.overall == 1.0);
  ChannelPerf ch = perfChannelFromDelta(0.5, 1, 1);
  CHECK(ch.exactlyK == doctest::Approx(0.25));
  ChannelPerf cw = perfChannelFromDelta(0.00053, 1);
  CHECK(cw.overall == doctest::Approx(1.0 - 0.00053 * 0.00053));
}

TEST_CASE("exact bounds") {
  CHECK(chBound(Rat(1, 10), Rat(1, 10)) == Rat(19, 100));
  CHECK(brpBound(2, Rat(1, 10), Rat(1, 10)) == Rat(3439, 10000));
  CHECK(brpBoundFromDelta(Rat(19, 100), 2) == Rat(3439, 10000));
  CHECK(uniformBound(5, Rat(0), Rat(0)) == 0);
  // uniform bound dominates the exact bound
  for (int n = 1; n <= 6; ++n)
    CHECK(uniformBound(n, Rat(1, 7), Rat(1, 9)) >= brpBound(n, Rat(1, 7), Rat(1, 9)));
  // paper parameters keep the channel within the derived requirement
  CHECK(chBound(Rat(2, 10000), Rat(32, 100000)) <= Rat(53, 100000));
  CHECK(ratToDouble(brpBound(20, Rat(2, 10000), Rat(32, 100000))) <= 0.01052);
}

TEST_CASE("solveForEpsilon") {
  double eps = solveForEpsilon(0.99, 20, 1);
  CHECK(std::fabs(eps - 0.01052) <= 1e-4);
  CHECK(std::fabs(perfFromEpsilon(eps, 20, 1).allItems - 0.99) <= 1e-8);
  double delta = 1.0 - std::pow(1.0 - eps, 1.0 / 20.0);
  CHECK(std::fabs(delta - 0.00053) <= 1e-5);
  CHECK_THROWS_AS(solveForEpsilon(1.5, 20, 1), DomainError);
}

TEST_CASE("verifyBrpBound at desk scale") {
  BrpParams params;
  params.N = 1;
  params.T = 1;
  params.p = Rat(1, 10);
  params.q = Rat(1, 10);
  BrpVerifyReport rep = verifyBrpBound(params, Rat(1), 12);
  CHECK(rep.ok);
  CHECK(rep.chBoundValue == Rat(19, 100));
  CHECK(rep.specSelfDist == 0);
  CHECK(rep.chDistK <= rep.chBoundValue);
  CHECK(rep.brpDistK <= rep.brpBoundValue);

  // spec vs itself
  BrpParams clean = params.asSpec();
  BrpVerifyReport zero = verifyBrpBound(clean, Rat(1), 8);
  CHECK(zero.brpDistK == 0);
  CHECK(zero.chDistK == 0);
}

TEST_CASE("parameter validation") {
  BrpParams bad;
  bad.N = 0;
  CHECK_THROWS_AS(bad.validate(), ParamError);
  BrpParams badP;
  badP.p = Rat(3, 2);
  CHECK_THROWS_AS(badP.validate(), ParamError);
}
