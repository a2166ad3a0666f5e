#include <doctest.h>

#include <random>

#include "pbm/lifting.hpp"
#include "pbm/metric.hpp"
#include "pbm/parser.hpp"
#include "pbm/termgen.hpp"

using namespace pbm;

namespace {

TermPtr atom(const std::string& a) { return mkPrefix(a, mkStop()); }

}  // namespace

TEST_CASE("kantorovich on dirac distributions is the ground distance") {
  auto d = [](const TermPtr&, const TermPtr&) { return Rat(2, 7); };
  auto res = kantorovich(d, Dist::dirac(atom("a")), Dist::dirac(atom("b")));
  CHECK(res.value == Rat(2, 7));
  CHECK(kantorovich(d, Dist::dirac(atom("a")), Dist::dirac(atom("a"))).value == 0);
}

TEST_CASE("paper channel example: eps = 1/4") {
  TermPtr s = atom("s"), z = mkStop();
  Dist pis;
  pis.add(s, Rat(1, 2));
  pis.add(z, Rat(1, 2));
  Dist pit;
  pit.add(s, Rat(3, 4));
  pit.add(z, Rat(1, 4));
  auto d = [&](const TermPtr& u, const TermPtr& v) -> Rat {
    return sameTerm(u, v) ? Rat(0) : Rat(1);
  };
  auto res = kantorovich(d, pis, pit);
  CHECK(res.value == Rat(1, 4));
}

TEST_CASE("2x2 instance with known optimum 1/6") {
  Dist l, r;
  l.add(atom("x"), Rat(1, 3));
  l.add(atom("y"), Rat(2, 3));
  r.add(atom("u"), Rat(1, 2));
  r.add(atom("v"), Rat(1, 2));
  auto d = [&](const TermPtr& a, const TermPtr& b) -> Rat {
    std::string n = a->act + b->act;
    if (n == "xu" || n == "ux" || n == "yv" || n == "vy") return 0;
    return 1;
  };
  auto res = kantorovich(d, l, r);
  CHECK(res.value == Rat(1, 6));
  // plan attains the value and satisfies the marginals
  Rat cost = 0, total = 0;
  for (size_t i = 0; i < res.plan.rows.size(); ++i)
    for (size_t j = 0; j < res.plan.cols.size(); ++j) {
      cost += res.plan.mass[i][j] * d(res.plan.rows[i], res.plan.cols[j]);
      total += res.plan.mass[i][j];
    }
  CHECK(cost == res.value);
  CHECK(total == 1);
}

TEST_CASE("identity distribution has distance zero") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    Dist pi;
    long long D = 2 + rng() % 10;
    size_t n = 1 + rng() % 3;
    std::vector<long long> parts(n, 1);
    for (long long rest = D - static_cast<long long>(n); rest > 0; --rest) ++parts[rng() % n];
    const char* names[] = {"a", "b", "c"};
    for (size_t i = 0; i < n; ++i) pi.add(atom(names[i]), Rat(parts[i], D));
    auto d = [&](const TermPtr&, const TermPtr&) -> Rat { return Rat(1, 3); };
    CHECK(kantorovich(d, pi, pi).value == 0);
  }
}

TEST_CASE("monotonicity and convexity on random instances") {
  std::mt19937_64 rng(7);
  const std::vector<Rat> pool{Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};
  for (int inst = 0; inst < 50; ++inst) {
    const char* lnames[] = {"a", "b", "c"};
    const char* rnames[] = {"x", "y", "z"};
    size_t nl = 1 + rng() % 3, nr = 1 + rng() % 3;
    long long D = 2 + rng() % 8;
    auto mk = [&](const char** names, size_t n) {
      Dist d;
      std::vector<long long> parts(n, 1);
      for (long long rest = D - static_cast<long long>(n); rest > 0; --rest) ++parts[rng() % n];
      for (size_t i = 0; i < n; ++i) d.add(atom(names[i]), Rat(parts[i], D));
      return d;
    };
    Dist l1 = mk(lnames, nl), r1 = mk(rnames, nr);
    Dist l2 = mk(lnames, nl), r2 = mk(rnames, nr);

    std::map<std::string, Rat> base;
    auto dSmall = [&](const TermPtr& u, const TermPtr& v) -> Rat {
      if (sameTerm(u, v)) return 0;
      auto key = u->act + v->act;
      auto it = base.find(key);
      if (it == base.end()) it = base.emplace(key, pool[rng() % pool.size()]).first;
      return it->second;
    };
    auto dBig = [&](const TermPtr& u, const TermPtr& v) -> Rat {
      Rat x = dSmall(u, v) + Rat(1, 5);
      return x > 1 ? Rat(1) : x;
    };
    // monotonicity
    CHECK(kantorovich(dSmall, l1, r1).value <= kantorovich(dBig, l1, r1).value);
    // convexity under the shared mixing weight
    Rat p(1, 3);
    Dist lm = convexSum(p, l1, l2), rm = convexSum(p, r1, r2);
    CHECK(kantorovich(dSmall, lm, rm).value <=
          p * kantorovich(dSmall, l1, r1).value + (1 - p) * kantorovich(dSmall, l2, r2).value);
  }
}

TEST_CASE("hausdorff lifting") {
  auto dd = [](const Dist& a, const Dist& b) -> Rat {
    return compareDist(a, b) == 0 ? Rat(0) : Rat(1, 2);
  };
  std::vector<Dist> empty;
  std::vector<Dist> one{Dist::dirac(atom("a"))};
  std::vector<Dist> other{Dist::dirac(atom("b"))};
  CHECK(hausdorff(dd, empty, empty) == 0);
  CHECK(hausdorff(dd, one, empty) == 1);
  CHECK(hausdorff(dd, empty, one) == 1);
  CHECK(hausdorff(dd, one, other) == Rat(1, 2));
  CHECK(hausdorff(dd, one, one) == 0);
}

TEST_CASE("product distributions respect concave moduli of the synchronous product") {
  // z(e1, e2) = lambda (1 - (1 - e1/lambda)(1 - e2/lambda)) dominates K on
  // products whenever the component distances stay within [0, lambda].
  const std::vector<Action> alphabet{"a", "b"};
  for (const Rat& lambda : {Rat(1), Rat(1, 2)}) {
    int used = 0;
    for (uint64_t seed = 0; used < 30 && seed < 400; ++seed) {
      TermPtr s1 = randomTerm(9000 + seed * 4, 2, alphabet);
      TermPtr s2 = randomTerm(9001 + seed * 4, 2, alphabet);
      TermPtr t1 = randomTerm(9002 + seed * 4, 2, alphabet);
      TermPtr t2 = randomTerm(9003 + seed * 4, 2, alphabet);
      auto d = [&](const TermPtr& u, const TermPtr& v) { return uptoK(u, v, 3, lambda); };
      Dist q1 = Dist::dirac(t1), q2 = Dist::dirac(t2);
      // two-point left supports (Dist::add merges if the terms coincide)
      Dist p1, p2;
      p1.add(s1, Rat(1, 2));
      p1.add(randomTerm(9100 + seed, 1, alphabet), Rat(1, 2));
      p2.add(s2, Rat(2, 3));
      p2.add(randomTerm(9200 + seed, 1, alphabet), Rat(1, 3));
      Rat k1 = kantorovich(d, p1, q1).value;
      Rat k2 = kantorovich(d, p2, q2).value;
      if (k1 > lambda || k2 > lambda) continue;
      ++used;
      auto par = [](const TermPtr& u, const TermPtr& v) { return mkSyncPar(u, v); };
      Dist lp = productDist(p1, p2, par), rp = productDist(q1, q2, par);
      Rat kprod = kantorovich(d, lp, rp).value;
      Rat z = lambda * (1 - (1 - k1 / lambda) * (1 - k2 / lambda));
      CHECK(kprod <= z);
    }
    CHECK(used >= 20);
  }
}
