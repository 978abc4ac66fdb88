#pragma once
// Final assembly: from the trace-inequality certificate and the expectation
// bound to the probability statement
//
//   P_{g,n}[ lambda_1 < 1/4 - ((2 alpha + 1)/4)^2 - eps ]  -->  0
//
// on the Weil-Petersson model with n = O(g^alpha) cusps, via Markov's
// inequality at threshold n^2 g^{1+eps} and the polynomial tail envelope.

#include <vector>

namespace wpgap::gapbound {

// Admissible parameter wedge.
//   alpha in [0, 1/2)            cusp growth exponent, n ~ g^alpha
//   eps   in [0, min(1/4, 1/2 - alpha))   slack; eps = 0 expresses the
//                                 closure value (the 3/16 endpoint check)
//   beta  > 0                    exponent of the log-power factor carried by
//                                 the non-simple envelope
struct GapParameters {
  double alpha = 0.0;
  double eps = 0.1;
  double beta = 66.0;

  // Throws ErrorCode::precondition naming the violated range.
  void validate() const;
};

// 1/4 - ((2 alpha + 1)/4)^2 - eps; at alpha = 0, eps = 0 this closes to 3/16.
double gap_value(const GapParameters& p);

// Markov threshold for the orbital-sum random variable: n^2 g^{1+eps}.
// Requires g >= 2, n >= 1, eps > 0 (precondition otherwise).
double markov_threshold(unsigned long g, unsigned long n, double eps);

// Tail envelope after Markov:
//   (1 + log(g)^6 / n + (log g)^{beta+1}) * g^{-eps/2};
// n_squared = true selects the mid-proof variant with log(g)^6 / n^2 in
// place of log(g)^6 / n (the default is the weaker final-display form:
// never silently strengthen a bound).  Requires g >= 2, n >= 1, eps > 0.
double tail_bound(unsigned long g, unsigned long n, double eps, double beta,
                  bool n_squared = false);

// Consistency margin of the certificate at the Markov threshold:
//   g^{2 alpha + 1 + 2 eps - 4 eps^2} - n^2 g^{1+eps},
// positive exactly when the threshold still certifies a gap.  n is taken
// as floor(g^alpha) when n = 0 is passed.
double certificate_consistency(const GapParameters& p, unsigned long g,
                               unsigned long n = 0);

// Smallest g >= 2 whose consistency margin is positive at n = floor(g^alpha),
// scanning doublings then bisecting; 0 when none exists below the scan cap.
unsigned long consistency_crossover(const GapParameters& p,
                                    unsigned long g_cap = 1ull << 40);

struct TailSweepRow {
  unsigned long g = 0;
  unsigned long n = 0;
  double gap = 0;
  double threshold = 0;
  double tail = 0;
};

// Sweep over g in geometric steps (x10) from 10 up to g_max, with
// n = floor(g^alpha) clamped to >= 1; formatting is the caller's business.
std::vector<TailSweepRow> tail_sweep(const GapParameters& p,
                                     unsigned long g_max);

}  // namespace wpgap::gapbound
