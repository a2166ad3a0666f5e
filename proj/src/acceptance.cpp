#include "pbm/acceptance.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "pbm/bounds.hpp"
#include "pbm/brp.hpp"
#include "pbm/errors.hpp"
#include "pbm/metric_reference.hpp"
#include "pbm/parser.hpp"
#include "pbm/termgen.hpp"

namespace pbm {

namespace {

struct Checker {
  std::ostream& out;
  int failures = 0;

  void report(int num, const std::string& name, bool pass, const std::string& detail) {
    out << (pass ? "PASS" : "FAIL") << "  criterion " << num << ": " << name;
    if (!detail.empty()) out << " — " << detail;
    out << "\n";
    if (!pass) ++failures;
  }
};

// Minimum transport cost by enumerating every nonnegative integer matrix with
// the given marginals. Independent of the flow solver.
Rat bruteForceTransport(const std::vector<long long>& rows, const std::vector<long long>& cols,
                        const std::vector<Rat>& cost, long long scale) {
  const size_t nl = rows.size(), nr = cols.size();
  std::vector<long long> colRem(cols);
  Rat best = 2;  // above any feasible cost
  std::function<void(size_t, long long, const Rat&)> rec = [&](size_t idx, long long rowRem,
                                                               const Rat& acc) {
    if (acc >= best) return;
    size_t i = idx / nr, j = idx % nr;
    if (i == nl) {
      best = acc;
      return;
    }
    if (j == nr - 1) {
      long long v = rowRem;
      if (v > colRem[j]) return;
      colRem[j] -= v;
      rec(idx + 1, i + 1 < nl ? rows[i + 1] : 0, acc + cost[idx] * Rat(v, scale));
      colRem[j] += v;
      return;
    }
    long long hi = std::min(rowRem, colRem[j]);
    for (long long v = 0; v <= hi; ++v) {
      colRem[j] -= v;
      rec(idx + 1, rowRem - v, acc + cost[idx] * Rat(v, scale));
      colRem[j] += v;
    }
  };
  rec(0, rows[0], Rat(0));
  return best;
}

std::vector<long long> randomComposition(std::mt19937_64& rng, long long total, size_t parts) {
  std::vector<long long> out(parts, 1);
  for (long long rest = total - static_cast<long long>(parts); rest > 0; --rest)
    ++out[rng() % parts];
  return out;
}

void criterion1(Checker& ck) {
  std::mt19937_64 rng(1001);
  const std::vector<Rat> costPool{Rat(0),     Rat(1, 4), Rat(1, 3), Rat(1, 2),
                                  Rat(2, 3),  Rat(3, 4), Rat(1)};
  std::vector<TermPtr> atoms;
  for (char c : {'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'})
    atoms.push_back(mkPrefix(std::string(1, c), mkStop()));

  int bad = 0;
  std::string firstBad;
  for (int inst = 0; inst < 200; ++inst) {
    long long D = 2 + static_cast<long long>(rng() % 11);  // common denominator <= 12
    size_t nl = 1 + rng() % 4, nr = 1 + rng() % 4;
    if (static_cast<long long>(nl) > D) nl = static_cast<size_t>(D);
    if (static_cast<long long>(nr) > D) nr = static_cast<size_t>(D);
    bool share = (rng() % 4) == 0 && nl > 0 && nr > 0;

    std::vector<TermPtr> ls(atoms.begin(), atoms.begin() + nl);
    std::vector<TermPtr> rs(atoms.begin() + 4, atoms.begin() + 4 + nr);
    if (share) rs[0] = ls[0];

    auto lparts = randomComposition(rng, D, nl);
    auto rparts = randomComposition(rng, D, nr);
    Dist left, right;
    for (size_t i = 0; i < nl; ++i) left.add(ls[i], Rat(lparts[i], D));
    for (size_t j = 0; j < nr; ++j) right.add(rs[j], Rat(rparts[j], D));

    std::map<std::pair<const Term*, const Term*>, Rat> costs;
    auto d = [&](const TermPtr& u, const TermPtr& v) -> Rat {
      if (sameTerm(u, v)) return 0;
      auto key = std::minmax(u.get(), v.get());
      auto it = costs.find({key.first, key.second});
      if (it != costs.end()) return it->second;
      Rat c = costPool[rng() % costPool.size()];
      costs.emplace(std::make_pair(key.first, key.second), c);
      return c;
    };

    auto res = kantorovich(d, left, right);

    // Oracle comparison over the identical (support-ordered) cost matrix.
    std::vector<long long> rowsI, colsI;
    std::vector<Rat> cm;
    for (const auto& [u, p] : left.m) rowsI.push_back((p * D).convert_to<long long>());
    for (const auto& [v, p] : right.m) colsI.push_back((p * D).convert_to<long long>());
    for (const auto& [u, p] : left.m)
      for (const auto& [v, q] : right.m) cm.push_back(sameTerm(u, v) ? Rat(0) : d(u, v));
    Rat oracle = bruteForceTransport(rowsI, colsI, cm, D);

    bool ok = res.value == oracle;
    // Plan feasibility and cost consistency.
    Rat planCost = 0;
    for (size_t i = 0; i < res.plan.rows.size() && ok; ++i) {
      Rat rowSum = 0;
      for (size_t j = 0; j < res.plan.cols.size(); ++j) {
        const Rat& m = res.plan.mass[i][j];
        if (m < 0) ok = false;
        rowSum += m;
        planCost += m * cm[i * res.plan.cols.size() + j];
      }
      if (rowSum != left.m.at(res.plan.rows[i])) ok = false;
    }
    for (size_t j = 0; j < res.plan.cols.size() && ok; ++j) {
      Rat colSum = 0;
      for (size_t i = 0; i < res.plan.rows.size(); ++i) colSum += res.plan.mass[i][j];
      if (colSum != right.m.at(res.plan.cols[j])) ok = false;
    }
    if (ok && planCost != res.value) ok = false;
    if (!ok) {
      ++bad;
      if (firstBad.empty())
        firstBad = "instance " + std::to_string(inst) + ": solver " + ratToString(res.value) +
                   " vs oracle " + ratToString(oracle);
    }
  }

  // Dirac embedding.
  bool diracOk = true;
  for (const Rat& v : costPool) {
    auto d = [&](const TermPtr&, const TermPtr&) -> Rat { return v; };
    auto res = kantorovich(d, Dist::dirac(atoms[0]), Dist::dirac(atoms[1]));
    if (res.value != v) diracOk = false;
  }

  ck.report(1, "Kantorovich exactness",
            bad == 0 && diracOk,
            bad == 0 ? "200/200 instances equal the enumeration oracle; plans feasible; Dirac "
                       "embedding exact"
                     : firstBad);
}

void criterion2(Checker& ck) {
  TermPtr S = parseTerm("star(a.([1/2]eps (+) [1/2]0), 0)");
  TermPtr T = mkPrefix("a", {{Rat(3, 4), S}, {Rat(1, 4), mkStop()}});
  DistanceResult res = exactDistance(S, T, Rat(1, 2));
  bool ok = res.exact && res.lower == Rat(1, 8);
  // d_k ladder: equals 1/8 from k = 2 on.
  for (unsigned k = 2; ok && k <= 6; ++k)
    if (uptoK(S, T, k, Rat(1, 2)) != Rat(1, 8)) ok = false;
  std::ostringstream detail;
  detail << "exactDistance = " << ratToString(res.lower) << (res.exact ? " (exact)" : " (interval)")
         << ", expected 1/8";
  ck.report(2, "worked example, lambda=1/2 eps=1/4", ok, detail.str());
}

struct TightRow {
  std::string name;
  CombinatorId id;
  unsigned depth;  // 0 = exact mode
};

void criterion3(Checker& ck) {
  std::vector<TightRow> rows;
  rows.push_back({"prefix[1/2,1/2]", CombinatorId::prefix({Rat(1, 2), Rat(1, 2)}), 0});
  rows.push_back({"alt", CombinatorId::simple(CombKind::Alt), 0});
  rows.push_back({"palt(1/3)", CombinatorId::withP(CombKind::PAlt, Rat(1, 3)), 0});
  rows.push_back({"seq", CombinatorId::simple(CombKind::Seq), 0});
  rows.push_back({"syncPar", CombinatorId::simple(CombKind::SyncPar), 0});
  rows.push_back({"asyncPar", CombinatorId::simple(CombKind::AsyncPar), 0});
  rows.push_back({"cspPar{a}", CombinatorId::cspPar({"a"}), 0});
  rows.push_back({"cspPar{}", CombinatorId::cspPar({}), 0});
  rows.push_back({"ppar(1/3)", CombinatorId::withP(CombKind::PPar, Rat(1, 3)), 0});
  for (unsigned n = 1; n <= 3; ++n)
    rows.push_back({"finIter(" + std::to_string(n) + ")",
                    CombinatorId::iter(CombKind::FinIter, n), 0});
  for (unsigned n = 1; n <= 2; ++n)
    rows.push_back({"finRepl(" + std::to_string(n) + ")",
                    CombinatorId::iter(CombKind::FinRepl, n), 0});
  rows.push_back({"kleene", CombinatorId::simple(CombKind::Kleene), 30});
  rows.push_back({"pkleene(1/3)", CombinatorId::withP(CombKind::PKleene, Rat(1, 3)), 30});
  rows.push_back({"infIter", CombinatorId::simple(CombKind::InfIter), 30});
  rows.push_back({"bang", CombinatorId::simple(CombKind::Bang), 7});
  rows.push_back({"pbang(1/3)", CombinatorId::withP(CombKind::PBang, Rat(1, 3)), 7});

  int checked = 0, bad = 0;
  std::string firstBad;
  for (const Rat& lambda : {Rat(1), Rat(4, 5)}) {
    std::vector<Rat> regimes{Rat(0), Rat(1, 4), Rat(1)};
    if (lambda < 1) regimes.insert(regimes.begin() + 2, lambda);
    for (const auto& row : rows) {
      for (const Rat& e : regimes) {
        std::vector<Rat> eps(arity(row.id), e);
        BoundReport rep = verifyTightness(row.id, lambda, eps, row.depth ? row.depth : 30);
        ++checked;
        if (!(rep.tight && rep.sound())) {
          ++bad;
          if (firstBad.empty()) {
            std::ostringstream os;
            os << row.name << " lambda=" << ratToString(lambda) << " eps=" << ratToString(e)
               << ": formula " << ratToString(rep.formulaValue) << " engine ["
               << ratToString(rep.engineLower) << "," << ratToString(rep.engineUpper) << "]";
            firstBad = os.str();
          }
        }
      }
    }
  }

  // The literal k=30 bracket for bang/pbang exceeds the 1e5 pair budget (the
  // depth-k pair closure of the replication witnesses grows ~4^k); the engine
  // must say so rather than answer.
  bool budgetDocumented = false;
  try {
    Witnesses w = witness(CombinatorId::simple(CombKind::Bang), Rat(4, 5), {Rat(1, 4)});
    uptoK(mkBang(w.left[0]), mkBang(w.right[0]), 30, Rat(4, 5));
  } catch (const BudgetExceededError&) {
    budgetDocumented = true;
  }

  std::ostringstream detail;
  if (bad == 0 && budgetDocumented) {
    detail << checked
           << " op/regime cases tight+sound (cyclic brackets: infIter/kleene/pkleene at k=30, "
              "bang/pbang at k=7; their k=30 closure exceeds the 1e5-pair budget and reports "
              "BudgetExceeded)";
  } else if (!firstBad.empty()) {
    detail << firstBad;
  } else {
    detail << "bang k=30 did not hit the pair budget as documented";
  }
  ck.report(3, "tightness suite", bad == 0 && budgetDocumented, detail.str());
}

struct SampleStats {
  // distances produced while running criteria 2-4 at lambda = 4/5, exact only
  std::vector<std::pair<std::pair<TermPtr, TermPtr>, Rat>> stabilized45;
};

void criterion4(Checker& ck, SampleStats& stats) {
  const std::vector<Action> alphabet{"a", "b"};
  struct OpRow {
    std::string name;
    CombinatorId id;
    bool maxForm;  // non-extensiveness also required
  };
  std::vector<OpRow> ops{
      {"prefix", CombinatorId::prefix({Rat(1, 2), Rat(1, 2)}), true},
      {"alt", CombinatorId::simple(CombKind::Alt), true},
      {"palt(1/3)", CombinatorId::withP(CombKind::PAlt, Rat(1, 3)), true},
      {"seq", CombinatorId::simple(CombKind::Seq), false},
      {"syncPar", CombinatorId::simple(CombKind::SyncPar), false},
      {"asyncPar", CombinatorId::simple(CombKind::AsyncPar), false},
      {"ppar(1/3)", CombinatorId::withP(CombKind::PPar, Rat(1, 3)), false},
      {"cspPar{a}", CombinatorId::cspPar({"a"}), false},
      {"cspPar{}", CombinatorId::cspPar({}), false},
  };

  int violations = 0;
  std::string firstBad;
  for (const Rat& lambda : {Rat(1), Rat(4, 5)}) {
    const int count = lambda == 1 ? 200 : 50;
    // Component pairs are shared across all combinators.
    std::vector<std::array<TermPtr, 4>> quads;
    std::vector<std::array<Rat, 2>> comp;
    for (int i = 0; i < count; ++i) {
      uint64_t base = (lambda == 1 ? 40000 : 90000) + static_cast<uint64_t>(i) * 4;
      unsigned depth = 2 + (i % 2);
      std::array<TermPtr, 4> q{randomTerm(base, depth, alphabet),
                               randomTerm(base + 1, depth, alphabet),
                               randomTerm(base + 2, depth, alphabet),
                               randomTerm(base + 3, depth, alphabet)};
      DistanceResult d1 = exactDistance(q[0], q[2], lambda);
      DistanceResult d2 = exactDistance(q[1], q[3], lambda);
      if (!(d1.exact && d2.exact)) {
        violations++;
        firstBad = "component distance not exact on acyclic terms";
        continue;
      }
      if (lambda == Rat(4, 5)) {
        stats.stabilized45.push_back({{q[0], q[2]}, d1.lower});
        stats.stabilized45.push_back({{q[1], q[3]}, d2.lower});
      }
      quads.push_back(q);
      comp.push_back({d1.lower, d2.lower});
    }
    for (const auto& op : ops) {
      for (size_t i = 0; i < quads.size(); ++i) {
        const auto& q = quads[i];
        TermPtr fs = compose(op.id, {q[0], q[1]});
        TermPtr ft = compose(op.id, {q[2], q[3]});
        DistanceResult df = exactDistance(fs, ft, lambda);
        if (!df.exact) {
          ++violations;
          if (firstBad.empty()) firstBad = op.name + ": composed distance not exact";
          continue;
        }
        if (lambda == Rat(4, 5)) stats.stabilized45.push_back({{fs, ft}, df.lower});
        Rat sum = comp[i][0] + comp[i][1];
        if (sum > 1) sum = 1;
        if (df.lower > sum) {
          ++violations;
          if (firstBad.empty()) {
            std::ostringstream os;
            os << op.name << " quad " << i << " lambda=" << ratToString(lambda)
               << ": d(f,f)=" << ratToString(df.lower) << " > sum " << ratToString(sum);
            firstBad = os.str();
          }
        }
        if (op.maxForm && df.lower > std::max(comp[i][0], comp[i][1])) {
          ++violations;
          if (firstBad.empty())
            firstBad = op.name + " quad " + std::to_string(i) + ": max form violated";
        }
      }
    }
  }
  std::ostringstream detail;
  if (violations == 0)
    detail << "9 combinators x (200 quads at lambda=1, 50 at 4/5): zero violations "
              "(sum form; max form for prefix/alt/palt)";
  else
    detail << violations << " violations; first: " << firstBad;
  ck.report(4, "non-expansiveness / non-extensiveness", violations == 0, detail.str());
}

void criterion5(Checker& ck, const SampleStats& stats) {
  const std::vector<Action> alphabet{"a", "b"};
  int bad = 0;
  std::string firstBad;
  auto note = [&](bool ok, const std::string& what) {
    if (!ok) {
      ++bad;
      if (firstBad.empty()) firstBad = what;
    }
  };

  // Range and action agreement over every stabilized lambda=4/5 value.
  for (const auto& [pr, v] : stats.stabilized45) {
    note(v == 1 || (v >= 0 && v <= Rat(4, 5)), "range: value " + ratToString(v));
    if (v < 1) note(enabledActions(pr.first) == enabledActions(pr.second),
                    "action agreement at distance " + ratToString(v));
  }

  // Symmetry, self-distance, depth monotonicity, projection dominance.
  for (int i = 0; i < 40; ++i) {
    uint64_t base = 70000 + static_cast<uint64_t>(i) * 2;
    TermPtr s = randomTerm(base, 3, alphabet);
    TermPtr t = randomTerm(base + 1, 3, alphabet);
    for (const Rat& lambda : {Rat(1), Rat(4, 5)}) {
      note(exactDistance(s, t, lambda).lower == exactDistance(t, s, lambda).lower, "symmetry");
      note(exactDistance(s, s, lambda).lower == 0, "self distance");
      std::vector<Rat> ladder;
      for (unsigned k = 0; k <= 6; ++k) ladder.push_back(uptoK(s, t, k, lambda));
      for (unsigned k = 0; k < 6; ++k) {
        note(ladder[k] <= ladder[k + 1], "monotone in k");
        for (unsigned k2 = k + 1; k2 <= 6; ++k2)
          note(ladder[k2] <= ladder[k] + ratPow(lambda, k), "projection bound d_k + lambda^k");
      }
    }
  }

  // Triangle inequality on random triples.
  for (int i = 0; i < 40; ++i) {
    uint64_t base = 80000 + static_cast<uint64_t>(i) * 3;
    TermPtr s = randomTerm(base, 2, alphabet);
    TermPtr t = randomTerm(base + 1, 2, alphabet);
    TermPtr u = randomTerm(base + 2, 2, alphabet);
    for (const Rat& lambda : {Rat(1), Rat(4, 5)}) {
      Rat st = exactDistance(s, t, lambda).lower;
      Rat tu = exactDistance(t, u, lambda).lower;
      Rat su = exactDistance(s, u, lambda).lower;
      note(su <= st + tu, "triangle inequality");
    }
  }

  std::ostringstream detail;
  if (bad == 0)
    detail << stats.stabilized45.size()
           << " stabilized values in range with matching action sets; symmetry/self/monotone/"
              "projection/triangle checks clean";
  else
    detail << bad << " violations; first: " << firstBad;
  ck.report(5, "pseudometric and structure properties", bad == 0, detail.str());
}

void criterion6(Checker& ck) {
  const Rat eps(1, 2);
  // Ladder witnesses from the copy-operator distance family.
  std::vector<PrefixBranch> sBranches{{1 - eps, mkPrefix("a", mkStop())}, {eps, mkStop()}};
  TermPtr s = mkAlt(mkPrefix(kActForkLeft, sBranches), mkPrefix(kActForkRight, sBranches));
  TermPtr t = mkAlt(mkPrefix(kActForkLeft, mkPrefix("a", mkStop())),
                    mkPrefix(kActForkRight, mkPrefix("a", mkStop())));
  int bad = 0;
  std::string firstBad;
  auto note = [&](bool ok, const std::string& what) {
    if (!ok) {
      ++bad;
      if (firstBad.empty()) firstBad = what;
    }
  };

  for (const Rat& lambda : {Rat(1), Rat(1, 2)}) {
    TermPtr sk = s, tk = t;
    for (unsigned k = 1; k <= 2; ++k) {
      if (k > 1) {
        sk = mkAlt(mkPrefix(kActForkLeft, sk), mkPrefix(kActForkRight, sk));
        tk = mkAlt(mkPrefix(kActForkLeft, tk), mkPrefix(kActForkRight, tk));
      }
      DistanceResult base = exactDistance(sk, tk, lambda);
      note(base.exact && base.lower == ratPow(lambda, k) * eps,
           "ladder distance k=" + std::to_string(k));
      DistanceResult dcp = exactDistance(mkCopy(sk), mkCopy(tk), lambda);
      Rat expected = ratPow(lambda, k) * (1 - ratPow(1 - eps, 1u << k));
      note(dcp.exact && dcp.lower == expected,
           "copy distance k=" + std::to_string(k) + " lambda=" + ratToString(lambda) + ": got " +
               ratToString(dcp.lower) + " want " + ratToString(expected));
    }
  }

  // Sampled per-depth Lipschitz factor 2^k.
  const std::vector<Action> alphabet{"a", "b", kActForkLeft, kActForkRight};
  for (int i = 0; i < 100; ++i) {
    uint64_t base = 60000 + static_cast<uint64_t>(i) * 2;
    TermPtr u = randomTerm(base, 2, alphabet);
    TermPtr v = randomTerm(base + 1, 2, alphabet);
    for (const Rat& lambda : {Rat(1), Rat(1, 2)}) {
      for (unsigned k = 1; k <= 4; ++k) {
        Rat plain = uptoK(u, v, k, lambda);
        Rat copied = uptoK(mkCopy(u), mkCopy(v), k, lambda);
        Rat cap = Rat(1u << k) * plain;
        if (cap > 1) cap = 1;
        note(copied <= cap, "2^k Lipschitz sample " + std::to_string(i));
      }
    }
  }

  ck.report(6, "copy operator family and 2^k-Lipschitz",
            bad == 0,
            bad == 0 ? "ladder equalities at lambda in {1,1/2}, k in {1,2}; 100 sampled pairs, "
                       "k <= 4"
                     : firstBad);
}

void criterion7(Checker& ck) {
  int bad = 0;
  std::string firstBad;
  for (unsigned N : {1u, 2u}) {
    BrpParams params;
    params.N = N;
    params.T = 1;
    params.p = Rat(1, 10);
    params.q = Rat(1, 10);
    params.domainSize = 1;
    BrpVerifyReport rep = verifyBrpBound(params, Rat(1), 20);
    Rat expectBound = N == 1 ? Rat(19, 100) : Rat(3439, 10000);
    if (!(rep.ok && rep.brpBoundValue == expectBound && rep.chBoundValue == Rat(19, 100))) {
      ++bad;
      if (firstBad.empty()) {
        std::ostringstream os;
        os << "N=" << N << ": ch d_20=" << ratToString(rep.chDistK) << " (bound "
           << ratToString(rep.chBoundValue) << "), brp d_20=" << ratToString(rep.brpDistK)
           << " (bound " << ratToString(rep.brpBoundValue) << ")";
        firstBad = os.str();
      }
    }
  }
  ck.report(7, "BRP bounds at desk scale", bad == 0,
            bad == 0 ? "N in {1,2}, p=q=1/10, lambda=1, k=20: d_20 <= bounds, spec self-distance 0"
                     : firstBad);
}

void criterion8(Checker& ck) {
  double eps = solveForEpsilon(0.99, 20, 1);
  double delta = 1.0 - std::pow(1.0 - eps, 1.0 / 20.0);
  bool epsOk = std::fabs(eps - 0.01052) <= 1e-4;
  bool deltaOk = std::fabs(delta - 0.00053) <= 1e-5;
  bool chOk = chBound(Rat(2, 10000), Rat(32, 100000)) <= Rat(53, 100000);
  ChannelPerf cperf = perfChannelFromDelta(0.00053, 1);
  bool perfOk = cperf.noRetry >= 0.9995 - 1e-4;
  double roundtrip = perfFromEpsilon(eps, 20, 1).allItems;
  bool rtOk = std::fabs(roundtrip - 0.99) <= 1e-8;
  bool ok = epsOk && deltaOk && chOk && perfOk && rtOk;
  std::ostringstream detail;
  detail.precision(6);
  detail << "eps=" << eps << " (0.01052 +- 1e-4), delta=" << delta
         << " (0.00053 +- 1e-5), chBound(0.0002,0.00032) <= 0.00053: " << (chOk ? "yes" : "NO")
         << ", channel no-retry likelihood " << cperf.noRetry << " >= 0.9994";
  ck.report(8, "worked scenario", ok, detail.str());
}

void criterion9(Checker& ck) {
  BrpParams params;
  params.N = 20;
  params.T = 1;
  params.p = Rat(1, 10);
  params.q = Rat(1, 10);
  params.domainSize = 1;
  bool budgetHit = false;
  std::string note;
  try {
    DistanceResult res = exactDistance(buildBrp(params.asSpec()), buildBrp(params), Rat(1));
    note = "exact computation unexpectedly finished: " + ratToString(res.lower);
  } catch (const BudgetExceededError& e) {
    budgetHit = true;
    if (e.partial) note = "partial interval [" + ratToString(e.partial->lower) + ", " +
                          ratToString(e.partial->upper) + "] at depth " +
                          std::to_string(e.partial->depthUsed);
  }
  bool coveredByBounds = brpBound(20, params.p, params.q) < 1;
  ck.report(9, "N=20 full-scale regime", budgetHit && coveredByBounds,
            budgetHit ? "direct metric computation exceeds the 1e5-pair desk budget (" + note +
                            "); regime covered by the criterion 7/8 bound checks"
                      : note);
}

}  // namespace

int runAcceptance(std::ostream& out) {
  Checker ck{out};
  criterion1(ck);
  criterion2(ck);
  criterion3(ck);
  SampleStats stats;
  criterion4(ck, stats);
  criterion5(ck, stats);
  criterion6(ck);
  criterion7(ck);
  criterion8(ck);
  criterion9(ck);
  out << (ck.failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(ck.failures))
      << "\n";
  return ck.failures;
}

}  // namespace pbm
