#pragma once
// Both sides of the trace inequality for a supplied length spectrum and
// topology, and the parametric lower-bound certificate for the first
// Laplacian eigenvalue that it yields in contrapositive form.
//
// Geometric side (orbital sum over primitive closed geodesics):
//
//   H = sum_{gamma} sum_{k >= 1} l_gamma / (2 sinh(k l_gamma / 2)) f_T(k l_gamma),
//
// finite because f_T vanishes outside (-T, T).  The trace inequality bounds
// the spectral quantity C_eps log(g) g^{4(1-eps) s} (s = sqrt(1/4 - lambda_1)
// when lambda_1 < 1/4) by H - f_hat_T(i/2) + O(ng); the O(ng) slack is
// absorbed into a caller-supplied nu so that
//
//   R := H - f_hat_T(i/2) + nu n g
//
// is the certifiable right-hand side.  Solving for s gives the certificate:
// R below the threshold C_eps log(g) g^{1-eps} contradicts lambda_1 <= 3/16
// (s >= 1/4 would force R above it); otherwise lambda_1 >= 1/4 - s_max^2
// with s_max = log(R / (C_eps log g)) / (4 (1-eps) log g) clamped to
// [1/4, 1/2].

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wpgap/testfunctions.hpp"

namespace wpgap::trace {

// Surface with genus g >= 2 and n cusps.  n = 0 is admitted so the
// degenerate cusp-free checks (zero parabolic term) stay expressible; the
// certificate itself is used with n >= 1.
struct SurfaceTopology {
  unsigned g = 2;
  unsigned n = 1;

  // Throws ErrorCode::precondition unless g >= 2.
  void validate() const;
  // Gauss-Bonnet: area = 2 pi (2g - 2 + n).
  double area() const;
};

struct LengthSpectrumEntry {
  double length = 0;            // primitive geodesic length, > 0
  std::uint64_t multiplicity = 1;  // >= 1
};

struct LengthSpectrum {
  std::vector<LengthSpectrumEntry> entries;  // sorted ascending by length
  bool oriented = true;  // false: each entry counts both orientations (x2)
};

// CSV ingestion: header "length,multiplicity", '#' comments ignored, rows
// sorted on load.  Throws ErrorCode::parse_error with the offending line.
LengthSpectrum parse_length_spectrum(std::string_view text, bool oriented);

struct TraceConstants {
  double eps = 0.1;   // in (0,1)
  double C_eps = 1.0; // trace-inequality constant, > 0
  double nu = 1.0;    // O(ng) absorber, >= 0
};

struct GapCertificate {
  enum class Verdict { above_three_sixteenths, lower_bound };
  Verdict verdict;
  double lambda = 0;  // for lower_bound: 1/4 - s_max^2 in [0, 3/16]
  double s_max = 0;   // the clamped exponent solution (lower_bound only)

  // inputs echoed
  unsigned g = 0, n = 0;
  double T = 0;             // 4 log g
  double geometric = 0;     // H
  double fourier_half = 0;  // f_hat_T(i/2)
  double R = 0;             // H - f_hat_T(i/2) + nu n g
  double threshold = 0;     // C_eps log(g) g^{1-eps}
  TraceConstants constants;
};

// Orbital sum H above.  Entries with k l >= T contribute exactly zero, so
// the k-sum stops below T/l.  Unoriented spectra count twice.
double geometric_side(const LengthSpectrum& spec,
                      const testfn::TestFunctionFamily& fam);

// Identity-motion contribution (2 pi (2g-2+n) - n/2) k_T(0): the area of
// the fundamental domain minus the n cuspidal neighborhoods of area 1/2.
double identity_term(const SurfaceTopology& topo,
                     const testfn::TestFunctionFamily& fam);

// Parabolic-classes upper envelope 2 n f_1(0) (log(2 sqrt 2) + T/2).
double parabolic_bound(const SurfaceTopology& topo,
                       const testfn::TestFunctionFamily& fam);

// R = geometric_side - f_hat_T(i/2) + nu n g; validates a chosen nu on a
// synthetic spectrum (negative value = nu too small for this model).
double positivity_defect(const LengthSpectrum& spec, const SurfaceTopology& topo,
                         const testfn::TestFunctionFamily& fam, double nu);

// The certificate described in the header comment.  T is fixed to 4 log g.
// Throws ErrorCode::precondition when g < 2 and ErrorCode::invalid_nu when
// R < 0 (the absorber cannot be validated on this spectrum).
GapCertificate certify(const LengthSpectrum& spec, const SurfaceTopology& topo,
                       const TraceConstants& consts);

// Stable-key-order JSON rendering of a certificate.
std::string to_json(const GapCertificate& cert);

}  // namespace wpgap::trace
