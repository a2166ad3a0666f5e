#include "pbm/brp.hpp"

#include <cmath>

#include "pbm/errors.hpp"

namespace pbm {

namespace {

std::string dName(unsigned d) { return "d" + std::to_string(d); }
Action actI(unsigned n) { return "i_" + std::to_string(n); }
Action actID(unsigned d) { return "i_" + dName(d); }
Action actC(unsigned d, unsigned bit) { return "c_" + dName(d) + "_" + std::to_string(bit); }
Action actO(unsigned d) { return "o_" + dName(d); }

TermPtr resNok() { return mkPrefix("res_NOK", mkStop()); }

// try.([p] onLoss (+) [1-p] onOk) with weight-0 branches dropped.
TermPtr probStep(const Action& tryAct, const Rat& p, TermPtr onLoss, TermPtr onOk) {
  if (p == 0) return mkPrefix(tryAct, std::move(onOk));
  if (p == 1) return mkPrefix(tryAct, std::move(onLoss));
  std::vector<PrefixBranch> branches{{p, std::move(onLoss)}, {1 - p, std::move(onOk)}};
  return mkPrefix(tryAct, std::move(branches));
}

TermPtr foldAlt(std::vector<TermPtr> terms) {
  TermPtr acc = terms.front();
  for (size_t i = 1; i < terms.size(); ++i) acc = mkAlt(acc, terms[i]);
  return acc;
}

}  // namespace

void BrpParams::validate() const {
  if (N < 1) throw ParamError("BRP: N must be >= 1");
  if (T < 1) throw ParamError("BRP: T must be >= 1");
  if (domainSize < 1) throw ParamError("BRP: data domain must be nonempty");
  if (!isProbability(p)) throw ParamError("BRP: p must be in [0,1]");
  if (!isProbability(q)) throw ParamError("BRP: q must be in [0,1]");
}

TermPtr buildChPrime(unsigned d, unsigned bit, unsigned t, const Rat& p, const Rat& q) {
  if (t == 0) return resNok();
  TermPtr onLoss = mkPrefix("bot", buildChPrime(d, bit, t - 1, p, q));
  TermPtr onOk = mkPrefix(actC(d, bit), buildCh2(d, bit, t, p, q));
  return probStep("try", p, std::move(onLoss), std::move(onOk));
}

TermPtr buildCh2(unsigned d, unsigned bit, unsigned t, const Rat& p, const Rat& q) {
  if (t == 0) return resNok();
  TermPtr onLoss = mkPrefix("lost", buildChPrime(d, bit, t - 1, p, q));
  TermPtr onOk = mkPrefix("ack", mkSkip());
  return probStep("try2", q, std::move(onLoss), std::move(onOk));
}

TermPtr buildCh(unsigned bit, unsigned T, const Rat& p, const Rat& q, unsigned domainSize) {
  std::vector<TermPtr> summands;
  for (unsigned d = 0; d < domainSize; ++d)
    summands.push_back(mkPrefix(actID(d), buildChPrime(d, bit, T, p, q)));
  return foldAlt(std::move(summands));
}

TermPtr buildRc(const BrpParams& params) {
  params.validate();
  TermPtr chain = mkSeq(buildCh(0, params.T, params.p, params.q, params.domainSize),
                        buildCh(1, params.T, params.p, params.q, params.domainSize));
  TermPtr ch0 = buildCh(0, params.T, params.p, params.q, params.domainSize);
  std::vector<TermPtr> summands;
  for (unsigned n = 1; n <= params.N; ++n) {
    TermPtr inner = (n % 2 == 0) ? mkFinIter(chain, n / 2)
                                 : mkSeq(mkFinIter(chain, (n - 1) / 2), ch0);
    summands.push_back(mkPrefix(actI(n), std::move(inner)));
  }
  return mkSeq(foldAlt(std::move(summands)), mkPrefix("res_OK", mkSkip()));
}

TermPtr buildTv(unsigned domainSize) {
  TermPtr ackOrLost = mkAlt(mkPrefix("ack", mkSkip()), mkPrefix("lost", mkSkip()));
  auto stale = [&](unsigned bit) {
    std::vector<TermPtr> summands;
    for (unsigned d = 0; d < domainSize; ++d)
      summands.push_back(mkPrefix(actC(d, bit), ackOrLost));
    return foldAlt(std::move(summands));
  };
  auto fresh = [&](unsigned bit) {
    std::vector<TermPtr> summands;
    for (unsigned d = 0; d < domainSize; ++d)
      summands.push_back(mkPrefix(actC(d, bit), mkPrefix(actO(d), ackOrLost)));
    return foldAlt(std::move(summands));
  };
  TermPtr phase0 = mkKleeneStar(stale(1), fresh(0));
  TermPtr phase1 = mkKleeneStar(stale(0), fresh(1));
  return mkInfIter(mkSeq(phase0, phase1));
}

TermPtr buildBrp(const BrpParams& params) {
  params.validate();
  std::vector<Action> sync{"ack", "lost"};
  for (unsigned d = 0; d < params.domainSize; ++d)
    for (unsigned bit = 0; bit <= 1; ++bit) sync.push_back(actC(d, bit));
  return mkCspPar(std::move(sync), buildRc(params), buildTv(params.domainSize));
}

StreamPerf perfFromEpsilon(double eps, unsigned N, unsigned T, unsigned k, unsigned n) {
  StreamPerf perf{};
  perf.k = k;
  perf.n = n;
  if (eps >= 1.0) return perf;  // every likelihood degenerates to 0
  double ok = 1.0 - eps;
  double rootN = std::pow(ok, 1.0 / N);
  double retry = 1.0 - rootN;
  perf.noRetry = ok;
  perf.exactlyK = ok * std::pow(retry, k);
  perf.atMostK = ok * (1.0 - std::pow(retry, k + 1)) / rootN;
  double rootn = std::pow(ok, 1.0 / n);
  perf.atLeastN = ok * (1.0 - std::pow(1.0 - rootn, static_cast<double>(n) * T + 1)) / rootn;
  perf.allItems = ok * (1.0 - std::pow(retry, static_cast<double>(N) * T + 1)) / rootN;
  return perf;
}

StreamPerf perfFromEpsilon(double eps, unsigned N, unsigned T) {
  return perfFromEpsilon(eps, N, T, N * T, N);
}

ChannelPerf perfChannelFromDelta(double delta, unsigned T, unsigned k) {
  ChannelPerf perf{};
  perf.k = k;
  perf.noRetry = 1.0 - delta;
  perf.exactlyK = (1.0 - delta) * std::pow(delta, k);
  perf.atMostK = 1.0 - std::pow(delta, k + 1);
  perf.overall = 1.0 - std::pow(delta, T + 1);
  return perf;
}

ChannelPerf perfChannelFromDelta(double delta, unsigned T) {
  return perfChannelFromDelta(delta, T, T);
}

Rat chBound(const Rat& p, const Rat& q) { return p + q - p * q; }

Rat brpBoundFromDelta(const Rat& delta, unsigned N) { return 1 - ratPow(1 - delta, N); }

Rat brpBound(unsigned N, const Rat& p, const Rat& q) {
  return 1 - ratPow((1 - p) * (1 - q), N);
}

Rat uniformBound(unsigned N, const Rat& p, const Rat& q) {
  return Rat(N) * (1 - (1 - p) * (1 - q));
}

double solveForEpsilon(double targetLikelihood, unsigned N, unsigned T) {
  if (!(targetLikelihood > 0.0 && targetLikelihood < 1.0))
    throw DomainError("target likelihood must be in (0,1)");
  auto f = [&](double eps) { return perfFromEpsilon(eps, N, T).allItems; };
  if (targetLikelihood > f(0.0)) throw NoSolutionError("target likelihood unreachable");
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 64 && hi - lo > 1e-12; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) >= targetLikelihood)
      lo = mid;  // f decreasing in eps
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

BrpVerifyReport verifyBrpBound(const BrpParams& params, const Rat& lambda, unsigned depth,
                               const MetricOptions& opts) {
  params.validate();
  BrpVerifyReport rep;
  rep.depth = depth;
  BrpParams spec = params.asSpec();
  TermPtr chSpec = buildCh(0, params.T, spec.p, spec.q, params.domainSize);
  TermPtr chImpl = buildCh(0, params.T, params.p, params.q, params.domainSize);
  TermPtr brpSpec = buildBrp(spec);
  TermPtr brpImpl = buildBrp(params);
  rep.chDistK = uptoK(chSpec, chImpl, depth, lambda, opts);
  rep.brpDistK = uptoK(brpSpec, brpImpl, depth, lambda, opts);
  rep.specSelfDist = uptoK(brpSpec, brpSpec, depth, lambda, opts);
  rep.chBoundValue = chBound(params.p, params.q);
  rep.brpBoundValue = brpBound(params.N, params.p, params.q);
  rep.uniformBoundValue = uniformBound(params.N, params.p, params.q);
  rep.ok = rep.chDistK <= rep.chBoundValue && rep.brpDistK <= rep.brpBoundValue &&
           rep.brpDistK <= rep.uniformBoundValue && rep.specSelfDist == 0;
  return rep;
}

}  // namespace pbm
