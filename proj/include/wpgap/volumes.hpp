#pragma once
// Exact Weil-Petersson volume polynomials V_{g,n}(x_1,...,x_n).
//
// A volume polynomial is stored through its intersection numbers: with
// d = (d_1,...,d_n) ranging over non-negative multi-indices of total degree
// |d| <= 3g-3+n,
//
//   V_{g,n}(2x_1,...,2x_n) = sum_d [tau_d] prod_i x_i^{2 d_i} / (2 d_i + 1)!
//
// and each [tau_d] is an exact rational times pi^{2(3g-3+n-|d|)}.  The
// coefficient map keeps every ordered multi-index (it is symmetric under
// permutation) and the rational part together with the pi-power, which is
// pinned to the grading.
//
// Generation runs Mirzakhani's integral recursion on the L-monomial
// coefficients c_d of V_{g,n}(L) = sum_d c_d prod L_i^{2d_i} (so
// [tau_d] = c_d 4^{|d|} prod (2d_i+1)!), with genus-0/1 base cases
// V_{0,3} = 1 and V_{1,1}(L) = (L^2 + 4 pi^2)/48, and closes the n = 0 row
// through the dilaton identity.  The convention for V_{1,1} is the orbifold
// one; it is the unique choice under which the recursion reproduces the
// published anchor values (V_{2,0} = 43 pi^6/2160, V_{2,1} = 29 pi^8/192,
// V_{3,0} = 176557 pi^12/1209600) and satisfies the string and dilaton
// equations exactly.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wpgap/real.hpp"

namespace wpgap::volumes {

// Exact coefficient value: `value` * pi^(2*pi_power).
struct PiRational {
  Rational value;
  unsigned pi_power = 0;

  bool operator==(const PiRational&) const = default;
  // Numeric value at the current working precision.
  Real to_real() const;
};

using MultiIndex = std::vector<std::uint8_t>;

struct VolumePolynomial {
  unsigned g = 0;
  unsigned n = 0;
  // Ordered multi-index -> intersection number [tau_d].  Symmetric closure:
  // every permutation of a stored index is stored with the same value.
  std::map<MultiIndex, PiRational> tau;

  unsigned dim() const { return 3 * g - 3 + n; }
  // The constant term [tau_0] = V_{g,n} (value at zero lengths).
  const PiRational& constant_term() const;
};

struct VolumeTable {
  enum class Provenance { generated, ingested };
  std::map<std::pair<unsigned, unsigned>, VolumePolynomial> entries;
  std::map<std::pair<unsigned, unsigned>, Provenance> provenance;

  bool contains(unsigned g, unsigned n) const {
    return entries.count({g, n}) != 0;
  }
  // Entry lookup; throws ErrorCode::missing_volume when absent.
  const VolumePolynomial& at(unsigned g, unsigned n) const;
};

// 2g-2+n > 0, g >= 0, n >= 0: the signature indexes a nonempty moduli space.
inline bool stable(long g, long n) { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }

// ---------------------------------------------------------------------------
// Construction

// Generates every stable (g,n) with g <= g_max, n <= n_max.  complexity_cap
// bounds 3g-3+n of the requested signatures (default 16; generation cost
// grows quickly with it).  Deterministic: output independent of evaluation
// order.
VolumeTable generate_volumes(unsigned g_max, unsigned n_max,
                             unsigned complexity_cap = 16);

// Extends `table` in place with (g,n) plus everything the recursion needs,
// reusing entries already present.  No-op when present.
void generate_entry(VolumeTable& table, unsigned g, unsigned n,
                    unsigned complexity_cap = 16);

// ---------------------------------------------------------------------------
// Table file I/O.  Line format (whitespace-separated, '#' comments ignored):
//
//   <g> <n> | <d1> <d2> ... <dn> | <num>/<den> | <piexp>
//
// one coefficient per line; the d-list may be empty as shorthand for the
// all-zeros index (and is always empty for n = 0); <piexp> must equal
// 3g-3+n-|d| and is validated on ingestion.  Serialization is canonical
// (entries sorted by (g,n), indices lexicographic, all-zeros written as the
// empty list), so serialize . parse is the identity on canonical text.

VolumeTable parse_volume_table(std::string_view text);
std::string serialize(const VolumeTable& table);

// Structural invariants of one polynomial: stability, degree bound, pi-power
// grading, symmetry of the coefficient map, strict positivity.  Throws
// ErrorCode::internal (generated) / parse_error (ingested) on violation.
void check_polynomial(const VolumePolynomial& poly);

// ---------------------------------------------------------------------------
// Evaluation

// V_{g,n}(L) = sum_d [tau_d] prod (L_i/2)^{2 d_i} / (2 d_i + 1)! at the
// current working precision.  lengths.size() must equal n; entries >= 0.
Real evaluate(const VolumePolynomial& poly, const std::vector<Real>& lengths);

// Exact evaluation at rational lengths: returns the map pi_power -> rational
// so tests can compare without rounding. Value = sum_k r_k pi^{2k}.
std::map<unsigned, Rational> evaluate_exact(const VolumePolynomial& poly,
                                            const std::vector<Rational>& lengths);

// L-monomial coefficient c_d = [tau_d] / (4^{|d|} prod (2d_i+1)!) of
// V_{g,n}(L) = sum_d c_d prod L_i^{2d_i}; rational part only (the pi-power
// is the grading).  Zero when d is absent.
Rational c_coefficient(const VolumePolynomial& poly, const MultiIndex& d);

// ---------------------------------------------------------------------------
// Volume-lemma functionals

// prod_i sinh(x_i/2)/(x_i/2) - V_{g,n}(x)/V_{g,n};  >= 0 is the content of
// the sinh-ratio volume bound.  Factors at x_i = 0 take the limit value 1.
Real sinh_ratio_margin(const VolumePolynomial& poly,
                       const std::vector<Real>& lengths);

// | V_{g,n}(0,...,0,x1,x2)/V_{g,n} * (x1 x2)/(4 sinh(x1/2) sinh(x2/2)) - 1 |
// normalized by n (x1^2 + x2^2) / g: the two-slot expansion residual whose
// boundedness over a (g,n,x) grid is the numerical content of the expansion
// V_{g,n}(0,..,x1,x2)/V_{g,n} = (4 sinh(x1/2) sinh(x2/2)/(x1 x2)) (1 + O(...)).
// Requires n >= 2, g >= 1, x1, x2 > 0.
Real two_slot_residual(const VolumeTable& table, unsigned g, unsigned n,
                       const Real& x1, const Real& x2);

// V_{g,n} sqrt(g) / ((2g-3+n)! (4 pi^2)^{2g-3+n}): the large-genus volume
// ratio whose stabilization over g estimates the leading constant.
// Requires 2g-3+n >= 1 and the entry present.
Real mz_ratio(const VolumeTable& table, unsigned g, unsigned n);

struct SeparatingSum {
  Real sum;    // sum over separating one-curve families, exact volumes
  Real ratio;  // sum * g / (1 + n^2)  (0 when g = 0: empty range)
};

// sum_{0<=i<=g, 0<=j<=n, 2<=2i+j<=2g+n-2} C(n,j) V_{i,j+1} V_{g-i,n-j+1} / V_{g,n}
// over constant terms, with its ratio to (1+n^2)/g.  Missing component
// entries raise ErrorCode::missing_volume naming the first absent signature.
SeparatingSum separating_sum(const VolumeTable& table, unsigned g, unsigned n);

struct CuspReductionViolation {
  unsigned a = 0, b = 0;
  Real ratio;  // V_{a,b+2} / V_{a+1,b} > 1
};

// Checks V_{a,b+2} <= V_{a+1,b} (constant terms) for every pair with both
// signatures in the table and 2a+b >= 1; returns the violating pairs.
// Note: the inequality is *false* in the orbifold convention for several
// small pairs — e.g. V_{1,3} = 14 pi^6/9 > V_{2,1} = 29 pi^8/192 — and the
// violation ratio tends to sqrt((a+1)/a) > 1 in the large-genus limit, so
// callers must treat a non-empty result as data, not as table corruption.
std::vector<CuspReductionViolation> check_cusp_reduction(const VolumeTable& table);

}  // namespace wpgap::volumes
