#pragma once
// The four-term decomposition of the Weil-Petersson expectation bound for
// the orbital sum minus f_hat_T(i/2):
//
//   E[ sum_gamma sum_k H_{X,k}(gamma) - f_hat_T(i/2) ]
//     <=  (a) simple separating primitives
//       + (b) |simple non-separating primitives - f_hat_T(i/2)|
//       + (c) iterates (k >= 2)
//       + (d) non-simple primitives,
//
// with H_{X,k}(gamma) = l/(2 sinh(k l/2)) f_T(k l) and T = 4 log g.
//
// Every term is evaluated through Mirzakhani's integration formula in one
// of two modes:
//   exact    - the volume-polynomial integrals themselves, at small (g,n),
//              using an ingested/generated VolumeTable;
//   stirling - the large-genus envelopes with the named constants table
//              (volume ratios replaced by the factorial/power bounds).
// Exact mode is an upper envelope wherever it replaces a truncated integral
// by its full Gamma-integral; the two modes satisfy exact <= stirling on
// their shared domain (cross-checked in tests).

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wpgap/constants.hpp"
#include "wpgap/testfunctions.hpp"
#include "wpgap/volumes.hpp"

namespace wpgap::expectation {

enum class BoundMode { exact, stirling };

// One complement component (g_j, a_j, n_j): genus, cusps inherited from the
// surface, boundary circles shared with the subsurface.
struct PartSignature {
  unsigned g = 0;
  unsigned a = 0;
  unsigned n = 1;

  friend bool operator==(const PartSignature&, const PartSignature&) = default;
  friend auto operator<=>(const PartSignature&, const PartSignature&) = default;
};

// A subsurface Y of signature (g0, k + a0) -- k geodesic boundary circles of
// which 2 n0 are internally identified in pairs, a0 cusps -- together with
// the q complement components.  Admissibility:
//   per part:  g_j, a_j >= 0, n_j >= 1, 2 g_j + a_j + n_j >= 3;
//   i)   sum_j (2 g_j - 2 + n_j + a_j) = 2g - 2 + n - m,  m = 2 g0 + a0 + k - 2;
//   ii)  sum_j n_j = k - 2 n0;
//   iii) sum_j a_j = n - a0.
struct SubsurfaceSignature {
  unsigned g0 = 0, a0 = 0, k = 1, n0 = 0, q = 1;
  std::vector<PartSignature> parts;  // canonical: non-increasing

  unsigned m() const { return 2 * g0 + a0 + k - 2; }
  // Throws ErrorCode::precondition naming the violated constraint.
  void validate(unsigned g, unsigned n) const;
};

// All admissible part multisets for the given frame, each exactly once as a
// canonical non-increasing sequence, in lexicographic order (deterministic).
// Infeasible frames yield an empty sequence.
std::vector<SubsurfaceSignature> enumerate_admissible(unsigned g, unsigned n,
                                                      unsigned g0, unsigned a0,
                                                      unsigned k, unsigned n0,
                                                      unsigned q);

// One-curve Mirzakhani integration formula shell:
//   C_Gamma * int_0^upper F(x) volume_factor(x) x dx
// by adaptive quadrature; C_Gamma in (0,1] is the orbit's symmetry constant.
double mif_one_curve(const std::function<double(double)>& F,
                     const std::function<double(double)>& volume_factor,
                     double C_Gamma, double upper,
                     const testfn::QuadratureConfig& quad = {});

// (b): the one-orbit family of simple non-separating curves.
//   expectation = (1/2) int_0^T x^2/sinh(x/2) f_T(x)
//                          V_{g-1,n+2}(0..0,x,x)/V_{g,n} dx
// (orientation factor 2 times the orbit constant C_Gamma = 1/2), returned
// with deviation = |expectation - f_hat_T(i/2)|.
std::pair<double, double> term_b_exact(const volumes::VolumeTable& table,
                                       unsigned g, unsigned n,
                                       const testfn::TestFunctionFamily& fam);

// (a): simple separating primitives.
// exact:    sum over 0<=i<=g, 0<=j<=n, 2 <= 2i+j <= 2g+n-2 of
//           C(n,j) int_0^T x^2/sinh(x/2) f_T V_{i,j+1}(0,x) V_{g-i,n-j+1}(0,x)
//           / V_{g,n} dx  (the ordered-range sum; no extra 1/2).
// stirling: 4 C_A3 ((1+n^2)/g) int_0^T sinh(x/2) f_T(x) dx.
double term_a_bound(const volumes::VolumeTable& table, unsigned g, unsigned n,
                    const testfn::TestFunctionFamily& fam, BoundMode mode,
                    const ConstantsTable& consts);

// (c): iterates.  Long part (lengths >= 1): the counting envelope
// e g sum_{m=1}^{floor(T/2)} m.  Short part: f_1(0) T E[sum_{l<1} 1/l] with
// exact:    E_short = [ int_0^1 V_{g-1,n+2}(0,t,t) dt
//             + sum C(n,j) int_0^1 V_{i,j+1}(0,t) V_{g-i,n-j+1}(0,t) dt ] / V_{g,n}
//           (orbit constants C_Gamma <= 1 taken at 1: upper envelope);
// stirling: E_short = C_short from the constants table.
double term_c_bound(const volumes::VolumeTable& table, unsigned g, unsigned n,
                    const testfn::TestFunctionFamily& fam, BoundMode mode,
                    const ConstantsTable& consts);

// (d): non-simple primitives, split by the complexity m of the filled
// subsurface, 1 <= m <= 3 log g - 2:
//   m <= 33: c1 T e^{T/2} E[sum e^{-(1-eps1) l(dY)/2}]
//   m >= 34:    T e^{T}   E[sum e^{-l(dY)/4}]
// exact:    each expectation by the integration formula with the truncation
//           |x| <= 2T dropped, every variable integrated in closed form
//           (int_0^infty x^{2D+1} e^{-lambda x} dx = (2D+1)!/lambda^{2D+2};
//           separating variables at rate lambda, internally identified pairs
//           at 2 lambda), orbit factor n!/(a0!..aq!) / (n0! n1! .. nq!).
// stirling: per (g0,a0,k) frame the factorial envelopes
//   m <= 33: c1 T^{beta+1} e^{T/2+eps1 T} #(n0,q) n^{a0} / g^m
//   m >= 34: T e^{T} e^{7T/2} #(n0,q) (m-1)! n^{a0} / g^m.
double term_d_bound(const volumes::VolumeTable& table, unsigned g, unsigned n,
                    const testfn::TestFunctionFamily& fam, double eps1,
                    double c1, BoundMode mode, const ConstantsTable& consts);

struct TermReport {
  unsigned g = 0, n = 0;
  double T = 0;
  double eps1 = 0;
  BoundMode mode = BoundMode::exact;
  double term_a = 0;
  double term_b = 0;  // the deviation |E_nonsep - f_hat_T(i/2)|
  double term_c = 0;
  double term_d = 0;
  double total = 0;   // a + b + c + d
  double term_b_expectation = 0;  // E_nonsep itself, echoed
  ConstantsTable constants;
};

// Full report at T = 4 log g.  eps1 in (0,1).  Exact mode throws
// ErrorCode::missing_volume naming the first absent signature.
TermReport total_bound(const volumes::VolumeTable& table, unsigned g, unsigned n,
                       double eps1, const ConstantsTable& consts, BoundMode mode);

// Stable-key-order JSON rendering of a report.
std::string to_json(const TermReport& report);

// Every (g', n') signature exact mode reads for (g, n); used to report the
// exact frontier instead of silently switching modes.
std::vector<std::pair<unsigned, unsigned>> exact_requirements(unsigned g, unsigned n);

// Largest genus G <= g_limit such that the table holds every signature that
// exact mode needs for (G, n); 0 when none.
unsigned exact_frontier(const volumes::VolumeTable& table, unsigned n,
                        unsigned g_limit = 64);

// Volume-sum cross-check ratio for one frame (g, n, g0, a0, k, n0, q):
//
//   [ sum_A n!/(a0! a1! .. aq!) V_{g0,k+a0} prod_j V_{gj,nj+aj} / V_{g,n} ]
//     / [ (2 g0 + k + a0 - 3)! n^{a0} / g^m ]
//
// over the admissible multisets (constant-term volumes; statement-literal
// normalization, no 1/nj! symmetry factors).  Returns 0 for infeasible
// frames.  Throws ErrorCode::missing_volume when a referenced volume is
// absent from the table.
double a4_ratio(const volumes::VolumeTable& table, unsigned g, unsigned n,
                unsigned g0, unsigned a0, unsigned k, unsigned n0, unsigned q);

}  // namespace wpgap::expectation
