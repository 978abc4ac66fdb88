#include "wpgap/real.hpp"

#include <mpfr.h>

#include <cstdlib>
#include <mutex>
#include <string>

namespace wpgap {

unsigned default_precision_digits() {
  static const unsigned digits = [] {
    unsigned d = 50;
    if (const char* env = std::getenv("WPGAP_PRECISION")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v >= 30 && v <= 10000) d = static_cast<unsigned>(v);
    }
    return d;
  }();
  return digits;
}

void ensure_precision() {
  static std::once_flag flag;
  std::call_once(flag, [] { Real::default_precision(default_precision_digits()); });
}

Real pi_real() {
  ensure_precision();
  Real x;
  mpfr_const_pi(x.backend().data(), MPFR_RNDN);
  return x;
}

const BigInt& factorial(unsigned n) {
  static std::vector<BigInt> cache{1, 1};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= n) {
    cache.push_back(cache.back() * BigInt(cache.size()));
  }
  return cache[n];
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;  // exact at every step: r is C(n, i+1) * remaining partial
  }
  return r;
}

const Rational& bernoulli(unsigned m) {
  // Recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 with B_0 = 1.
  static std::vector<Rational> cache{1};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= m) {
    unsigned mm = static_cast<unsigned>(cache.size());
    Rational s = 0;
    for (unsigned j = 0; j < mm; ++j) {
      s += Rational(binomial(mm + 1, j)) * cache[j];
    }
    cache.push_back(-s / Rational(mm + 1));
  }
  return cache[m];
}

Rational zeta_even_rational(unsigned i) {
  if (i == 0) return Rational(-1, 2);
  // zeta(2i) = (-1)^{i+1} 2^{2i-1} B_{2i} / (2i)! * pi^{2i}
  Rational r = Rational(BigInt(1) << (2 * i - 1), factorial(2 * i)) * bernoulli(2 * i);
  return (i % 2 == 1) ? r : -r;
}

Rational pow_rational(const Rational& q, long e) {
  if (e == 0) return 1;
  Rational base = e > 0 ? q : Rational(1) / q;
  unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
  Rational acc = 1;
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

}  // namespace wpgap
