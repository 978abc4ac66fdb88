#include "wpgap/gapbound.hpp"

#include <algorithm>
#include <cmath>

#include "wpgap/errors.hpp"

namespace wpgap::gapbound {

namespace {

double cusps_for(double alpha, unsigned long g) {
  return std::max(1.0, std::floor(std::pow(static_cast<double>(g), alpha)));
}

}  // namespace

void GapParameters::validate() const {
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw Error(ErrorCode::precondition,
                "gap parameters: alpha must lie in [0, 1/2)");
  const double cap = std::min(0.25, 0.5 - alpha);
  // eps = 0 is admitted as the closure value (the 3/16 endpoint); the decay
  // statements themselves require eps > 0 and check it separately.
  if (!(eps >= 0.0 && eps < cap))
    throw Error(ErrorCode::precondition,
                "gap parameters: eps must lie in [0, min(1/4, 1/2 - alpha))");
  if (!(beta > 0.0))
    throw Error(ErrorCode::precondition, "gap parameters: beta must be positive");
}

double gap_value(const GapParameters& p) {
  p.validate();
  const double s = (2.0 * p.alpha + 1.0) / 4.0;
  return 0.25 - s * s - p.eps;
}

double markov_threshold(unsigned long g, unsigned long n, double eps) {
  if (g < 2)
    throw Error(ErrorCode::precondition, "markov threshold requires g >= 2");
  if (n < 1)
    throw Error(ErrorCode::precondition, "markov threshold requires n >= 1");
  if (!(eps > 0.0))
    throw Error(ErrorCode::precondition, "markov threshold requires eps > 0");
  const double nn = static_cast<double>(n);
  return nn * nn * std::pow(static_cast<double>(g), 1.0 + eps);
}

double tail_bound(unsigned long g, unsigned long n, double eps, double beta,
                  bool n_squared) {
  if (g < 2)
    throw Error(ErrorCode::precondition, "tail bound requires g >= 2");
  if (n < 1)
    throw Error(ErrorCode::precondition, "tail bound requires n >= 1");
  if (!(eps > 0.0))
    throw Error(ErrorCode::precondition, "tail bound requires eps > 0");
  if (!(beta > 0.0))
    throw Error(ErrorCode::precondition, "tail bound requires beta > 0");
  const double lg = std::log(static_cast<double>(g));
  const double nn = static_cast<double>(n);
  const double cusp_div = n_squared ? nn * nn : nn;
  const double poly = 1.0 + std::pow(lg, 6.0) / cusp_div +
                      std::pow(lg, beta + 1.0);
  return poly * std::pow(static_cast<double>(g), -0.5 * eps);
}

double certificate_consistency(const GapParameters& p, unsigned long g,
                               unsigned long n) {
  p.validate();
  if (g < 2)
    throw Error(ErrorCode::precondition,
                "certificate consistency requires g >= 2");
  const double nn =
      n == 0 ? cusps_for(p.alpha, g) : static_cast<double>(n);
  const double gg = static_cast<double>(g);
  const double lhs =
      std::pow(gg, 2.0 * p.alpha + 1.0 + 2.0 * p.eps - 4.0 * p.eps * p.eps);
  return lhs - nn * nn * std::pow(gg, 1.0 + p.eps);
}

unsigned long consistency_crossover(const GapParameters& p,
                                    unsigned long g_cap) {
  p.validate();
  // Doubling scan for the first positive margin, then bisection against the
  // last non-positive genus.  Floor effects in n = floor(g^alpha) can dent
  // strict monotonicity; the returned G satisfies margin(G) > 0 and
  // margin(G - 1) <= 0 at the bisection boundary.
  unsigned long lo = 2;
  if (certificate_consistency(p, lo) > 0.0) return lo;
  unsigned long hi = lo;
  while (true) {
    if (hi > g_cap / 2) return 0;  // no crossover below the scan cap
    hi *= 2;
    if (certificate_consistency(p, hi) > 0.0) break;
    lo = hi;
  }
  while (hi - lo > 1) {
    const unsigned long mid = lo + (hi - lo) / 2;
    if (certificate_consistency(p, mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::vector<TailSweepRow> tail_sweep(const GapParameters& p,
                                     unsigned long g_max) {
  p.validate();
  if (!(p.eps > 0.0))
    throw Error(ErrorCode::precondition, "tail sweep requires eps > 0");
  std::vector<TailSweepRow> rows;
  for (unsigned long g = 10; g <= g_max; g *= 10) {
    TailSweepRow row;
    row.g = g;
    row.n = static_cast<unsigned long>(cusps_for(p.alpha, g));
    row.gap = gap_value(p);
    row.threshold = markov_threshold(g, row.n, p.eps);
    row.tail = tail_bound(g, row.n, p.eps, p.beta);
    rows.push_back(row);
    if (g > g_max / 10) break;  // guard unsigned overflow on g *= 10
  }
  return rows;
}

}  // namespace wpgap::gapbound
