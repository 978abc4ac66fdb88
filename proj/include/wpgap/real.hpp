#pragma once
// Number types: exact rationals/integers over GMP and variable-precision
// reals over MPFR, plus the handful of exact combinatorial helpers the
// volume recursion needs (factorials, binomials, Bernoulli numbers, even
// zeta values as rationals with the pi-power split off).

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <vector>

namespace wpgap {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

// Default working precision for Real, in decimal digits.  Reads the
// WPGAP_PRECISION environment variable once (values clamped to [30, 10000]);
// falls back to 50 digits, enough that the near-cancelling ratio checks keep
// ~35 significant digits.
unsigned default_precision_digits();

// Installs default_precision_digits() as Real's working precision.  Called
// lazily by everything that constructs Reals; idempotent.
void ensure_precision();

// pi to the current working precision.  Computed directly through MPFR on
// every call (no caching), so it always honors the precision in effect.
Real pi_real();

// n! as an exact integer (cached; n <= a few hundred in practice).
const BigInt& factorial(unsigned n);

// Binomial coefficient C(n, k) as an exact integer.
BigInt binomial(unsigned n, unsigned k);

// Bernoulli number B_m (B_1 = -1/2 convention); cached.
const Rational& bernoulli(unsigned m);

// zeta(2i) = zeta_even_rational(i) * pi^(2i), exactly; zeta(0) = -1/2.
Rational zeta_even_rational(unsigned i);

// q^e for integer e (negative allowed; q must be nonzero then).
Rational pow_rational(const Rational& q, long e);

}  // namespace wpgap
