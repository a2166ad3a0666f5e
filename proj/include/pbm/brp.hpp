#pragma once

#include "pbm/metric.hpp"

namespace pbm {

// Bounded retransmission protocol, parametrized by max stream length N,
// retries per datum T, datum loss probability p, ack loss probability q and
// the data domain size. p = q = 0 is the specification.
struct BrpParams {
  unsigned N = 1;
  unsigned T = 1;
  Rat p;
  Rat q;
  unsigned domainSize = 1;

  void validate() const;
  BrpParams asSpec() const {
    BrpParams s = *this;
    s.p = 0;
    s.q = 0;
    return s;
  }
};

// Model builders. The process-level probabilistic choices are encoded with
// the internal prefix actions `try` / `try2` carrying the branch weights;
// weight-0 branches are dropped, so the p = q = 0 model is a Dirac chain.
TermPtr buildChPrime(unsigned d, unsigned bit, unsigned t, const Rat& p, const Rat& q);
TermPtr buildCh2(unsigned d, unsigned bit, unsigned t, const Rat& p, const Rat& q);
TermPtr buildCh(unsigned bit, unsigned T, const Rat& p, const Rat& q, unsigned domainSize);
TermPtr buildRc(const BrpParams& params);
TermPtr buildTv(unsigned domainSize);
TermPtr buildBrp(const BrpParams& params);

// Stream-level likelihoods from the system distance epsilon.
struct StreamPerf {
  double noRetry;    // no retry at all
  double exactlyK;   // exactly k retries
  double atMostK;    // at most k retries
  double atLeastN;   // at least n of the N items delivered
  double allItems;   // all N items delivered
  unsigned k;
  unsigned n;
};
StreamPerf perfFromEpsilon(double eps, unsigned N, unsigned T, unsigned k, unsigned n);
StreamPerf perfFromEpsilon(double eps, unsigned N, unsigned T);  // k = N*T, n = N

// Channel-level likelihoods from the channel distance delta.
struct ChannelPerf {
  double noRetry;
  double exactlyK;
  double atMostK;
  double overall;  // sent and acknowledged within T retries
  unsigned k;
};
ChannelPerf perfChannelFromDelta(double delta, unsigned T, unsigned k);
ChannelPerf perfChannelFromDelta(double delta, unsigned T);  // k = T

// Exact distance bounds.
Rat chBound(const Rat& p, const Rat& q);                   // p + q - pq
Rat brpBoundFromDelta(const Rat& delta, unsigned N);       // 1 - (1 - delta)^N
Rat brpBound(unsigned N, const Rat& p, const Rat& q);      // 1 - ((1-p)(1-q))^N
Rat uniformBound(unsigned N, const Rat& p, const Rat& q);  // N (1 - (1-p)(1-q))

// Inverts the all-items likelihood: the unique eps with
// perfFromEpsilon(eps, N, T).allItems = target. Bisection, |error| <= 1e-9.
double solveForEpsilon(double targetLikelihood, unsigned N, unsigned T);

struct BrpVerifyReport {
  Rat chDistK;
  Rat brpDistK;
  Rat specSelfDist;
  Rat chBoundValue;
  Rat brpBoundValue;
  Rat uniformBoundValue;
  unsigned depth = 0;
  bool ok = false;
};

// d_depth comparisons of the spec/impl pairs against the closed-form bounds;
// one-sided (d_k <= d <= bound) and intended for lambda = 1.
BrpVerifyReport verifyBrpBound(const BrpParams& params, const Rat& lambda, unsigned depth,
                               const MetricOptions& opts = {});

}  // namespace pbm
