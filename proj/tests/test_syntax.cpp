#include <doctest.h>

#include "pbm/errors.hpp"
#include "pbm/parser.hpp"
#include "pbm/termgen.hpp"

using namespace pbm;

TEST_CASE("rational literals") {
  CHECK(ratFromString("1/2") == Rat(1, 2));
  CHECK(ratFromString("0.25") == Rat(1, 4));
  CHECK(ratFromString("2") == Rat(2));
  CHECK(ratToString(Rat(1, 2)) == "1/2");
  CHECK(ratToString(Rat(0)) == "0/1");
  CHECK(ratPow(Rat(4, 5), 3) == Rat(64, 125));
}

TEST_CASE("parse spec examples") {
  TermPtr t = parseTerm("a.0");
  REQUIRE(t->op == Op::Prefix);
  CHECK(t->act == "a");
  REQUIRE(t->branches.size() == 1);
  CHECK(t->branches[0].weight == 1);
  CHECK(t->branches[0].target->op == Op::Stop);

  TermPtr b = parseTerm("a.([1/2]eps (+) [1/2]0)");
  REQUIRE(b->op == Op::Prefix);
  REQUIRE(b->branches.size() == 2);
  CHECK(b->branches[0].weight == Rat(1, 2));
  CHECK(b->branches[0].target->op == Op::Skip);
  CHECK(b->branches[1].target->op == Op::Stop);

  CHECK_THROWS_AS(parseTerm("a.([1/3]0 (+) [1/3]0)"), WeightSumError);

  TermPtr s = parseTerm("star(a.eps, 0)");
  REQUIRE(s->op == Op::KleeneStar);
  CHECK(s->a->op == Op::Prefix);
  CHECK(s->a->branches[0].target->op == Op::Skip);
  CHECK(s->b->op == Op::Stop);
}

TEST_CASE("parse errors carry position") {
  try {
    parseTerm("a.0 +");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col >= 5);
    CHECK(!e.expected.empty());
  }
  CHECK_THROWS_AS(parseTerm("a.0 +[2] b.0"), RangeError);
  CHECK_THROWS_AS(parseTerm("pstar(1, a.0, 0)"), RangeError);
  CHECK_THROWS_AS(parseTerm(""), ParseError);
  CHECK_THROWS_AS(parseTerm("a.0 )"), ParseError);
}

TEST_CASE("render spec examples") {
  CHECK(render(mkPrefix("a", mkStop())) == "a.0");
  CHECK(render(mkSeq(mkSkip(), mkStop())) == "eps;0");
  CHECK(render(mkPAlt(Rat(1, 2), mkPrefix("a", mkStop()), mkPrefix("b", mkStop()))) ==
        "a.0 +[1/2] b.0");
}

TEST_CASE("precedence and grouping") {
  // postfix binds tighter than ';', parallel tighter than '+'
  TermPtr t = parseTerm("a.0;b.0^2 + c.0 | d.0");
  REQUIRE(t->op == Op::Alt);
  CHECK(t->a->op == Op::Seq);
  CHECK(t->a->b->op == Op::FinIter);
  CHECK(t->b->op == Op::SyncPar);

  // left associativity
  TermPtr s = parseTerm("a.0;b.0;c.0");
  CHECK(s->a->op == Op::Seq);
  CHECK(s->b->op == Op::Prefix);

  // prefix body is an atom; composite bodies need parentheses
  TermPtr p = parseTerm("a.(b.0;c.0)");
  CHECK(p->op == Op::Prefix);
  CHECK(p->branches[0].target->op == Op::Seq);
  CHECK(parseTerm("a.b.0")->branches[0].target->op == Op::Prefix);

  TermPtr csp = parseTerm("a.0 ||{a,b} b.0");
  CHECK(csp->op == Op::CspPar);
  CHECK(csp->syncSet == std::vector<Action>{"a", "b"});
  CHECK(parseTerm("a.0 ||{} b.0")->syncSet.empty());

  CHECK(parseTerm("a.0^2^w")->op == Op::InfIter);
  CHECK(parseTerm("pbang(1/3, a.0)")->op == Op::PBang);
  CHECK(parseTerm("cp(a.0)")->op == Op::Copy);
  CHECK(parseTerm("repl(2, a.0)")->count == 2);
}

TEST_CASE("compareTerms is a strict total order") {
  CHECK(compareTerms(mkStop(), mkStop()) == 0);
  CHECK(compareTerms(mkStop(), mkSkip()) < 0);
  CHECK(compareTerms(parseTerm("a.0"), parseTerm("b.0")) < 0);

  std::vector<TermPtr> pool;
  for (uint64_t s = 0; s < 60; ++s) pool.push_back(randomTerm(s, 3, {"a", "b", "c"}));
  for (size_t i = 0; i < pool.size(); ++i) {
    for (size_t j = 0; j < pool.size(); ++j) {
      int cij = compareTerms(pool[i], pool[j]);
      int cji = compareTerms(pool[j], pool[i]);
      CHECK(cij == -cji);
      if (cij == 0) CHECK(sameTerm(pool[i], pool[j]));
      for (size_t k = 0; k < pool.size(); ++k) {
        if (cij <= 0 && compareTerms(pool[j], pool[k]) <= 0)
          CHECK(compareTerms(pool[i], pool[k]) <= 0);
      }
    }
  }
}

TEST_CASE("parse after render is the identity") {
  for (uint64_t seed = 0; seed < 400; ++seed) {
    TermPtr t = randomTerm(seed, 4, {"a", "b", "c"});
    TermPtr back = parseTerm(render(t));
    CHECK(sameTerm(t, back));
  }
  // recursive operators too
  for (const char* text :
       {"star(a.0, b.eps)", "pstar(1/3, a.0, b.0)", "bang(a.([1/2]eps (+) [1/2]0))",
        "pbang(2/3, a.0;b.0)", "cp(l.0 + r.eps)", "(a.0 + b.0)^3", "a.0^w",
        "a.0 |||[1/4] (b.0 ||{tick} eps)", "repl(2, a.(b.0 + c.0))"}) {
    TermPtr t = parseTerm(text);
    CHECK(sameTerm(t, parseTerm(render(t))));
  }
}

TEST_CASE("randomTerm is deterministic and depth-bounded") {
  TermPtr a = randomTerm(1, 3, {"a", "b"});
  TermPtr b = randomTerm(1, 3, {"a", "b"});
  CHECK(sameTerm(a, b));
  CHECK(randomTerm(1, 1, {"a"}) != nullptr);

  std::function<unsigned(const TermPtr&)> depth = [&](const TermPtr& t) -> unsigned {
    unsigned d = 0;
    if (t->a) d = std::max(d, depth(t->a));
    if (t->b) d = std::max(d, depth(t->b));
    for (const auto& br : t->branches) d = std::max(d, depth(br.target));
    return d + 1;
  };
  for (uint64_t seed = 0; seed < 50; ++seed)
    CHECK(depth(randomTerm(seed, 3, {"a", "b"})) <= 4);
}

TEST_CASE("prefix weight validation") {
  CHECK_THROWS_AS(mkPrefix("a", {{Rat(1, 2), mkStop()}}), WeightSumError);
  CHECK_THROWS_AS(mkPrefix("a", {{Rat(0), mkStop()}, {Rat(1), mkSkip()}}), RangeError);
  CHECK_THROWS_AS(mkPAlt(Rat(0), mkStop(), mkStop()), RangeError);
  CHECK_THROWS_AS(mkPAlt(Rat(1), mkStop(), mkStop()), RangeError);
}
