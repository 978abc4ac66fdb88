#pragma once
// The smooth compactly supported test-function family f_T together with its
// Fourier transform on R union i[0,1/2] and its inverse Abel transform k_T.
//
// The mollifier is pinned to psi0(x) = exp(-1/(1-4x^2)) on |x| < 1/2 (zero
// outside): even, C-infinity, support exactly (-1/2,1/2), non-increasing on
// [0,1/2).  Then
//
//   f_1 = psi0 * psi0   (support exactly (-1,1), even, non-increasing on [0,1)),
//   f_T(x) = f_1(x/T)   for T > 1,
//
// so f_T(0) = f_1(0) for every T.  The transforms used downstream:
//
//   fourier:  f_hat_T(r)  = int_0^T 2 cos(r x)  f_T(x) dx   (real axis)
//             f_hat_T(it) = int_0^T 2 cosh(t x) f_T(x) dx   (t in [0,1/2])
//   inverse Abel:  k_T(rho) = (-1/(sqrt(2) pi)) int_rho^inf
//                              f_T'(u) / sqrt(cosh u - cosh rho) du
//
// k_T is non-negative, supported in [0,T).  Everything here is double
// precision: the downstream consumers compare against 1e-5/1e-6 tolerances
// while the quadratures deliver ~1e-10.
//
// Note on the forward Abel identity: with the normalization of k_T above,
// the exact round-trip at the origin is
//
//   sqrt(2) int_0^T k_T(rho) sinh(rho)/sqrt(cosh rho - 1) drho
//     = 2 int_0^T k_T(rho) cosh(rho/2) drho = f_T(0),
//
// (sinh rho / sqrt(cosh rho - 1) == sqrt(2) cosh(rho/2) identically).  The
// sqrt(2) prefactor is forced by inverting the k_T normalization through
// the classical Abel pair; abel_forward_at_zero computes the left-hand side
// including it.  See the convolution identity tests for the numerical
// round-trip evidence at T in {2, 8, 27.63}.

#include <vector>

namespace wpgap::testfn {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  unsigned max_subdivisions = 12;    // adaptive Gauss-Kronrod depth
  double truncation_radius = 700.0;  // spectral-integral cutoff in s = T r
};

// Spectral argument: either r >= 0 on the real axis or the point i t with
// t in [0, 1/2] (the image of the eigenvalue map r(x) below 1/4).
struct SpectralParameter {
  enum class Axis { real_axis, imaginary_axis };
  Axis axis;
  double value;

  static SpectralParameter real(double r);       // requires r >= 0
  static SpectralParameter imaginary(double t);  // requires 0 <= t <= 1/2
};

struct TestFunctionFamily {
  double T;
  QuadratureConfig quad;

  // Requires T > 1 (the family is defined by scaling f_1 past its support).
  explicit TestFunctionFamily(double T_, QuadratureConfig q = {});
};

// The mollifier and the base function (T-independent).
double psi0(double x);
double f1_eval(double x);
double f1_deriv(double x);

// f_T(x) = f_1(x/T) and its derivative f_1'(x/T)/T.
double fT_eval(const TestFunctionFamily& fam, double x);
double fT_deriv(const TestFunctionFamily& fam, double x);

// Fourier transform on the real or imaginary axis (see header comment).
// Non-negative on the whole domain.  Throws ErrorCode::quadrature when the
// integrator cannot reach the configured tolerances.
double fourier_fT(const TestFunctionFamily& fam, SpectralParameter s);

// Inverse Abel transform k_T(rho), rho >= 0.  The singular integral is
// evaluated through the substitution cosh u = cosh rho + v^2 (the integrand
// becomes -(sqrt(2)/pi) f_T'(u(v))/sinh u(v) with a removable singularity
// at v = 0), split at u = min(rho+1, T) with the remainder integrated in
// the u variable where the denominator is bounded away from zero.
// k_T(rho) = 0 for rho >= T.
double inverse_abel_kT(const TestFunctionFamily& fam, double rho);

// Independent route to k_T(0) through the spectral side:
//   k_T(0) = (1/4pi) int_R r f_hat_T(r) tanh(pi r) dr
//          = (1/(2 pi T)) int_0^inf s f_hat_1(s) tanh(pi s / T) ds,
// truncated at quad.truncation_radius in s with the tail below tolerance
// (f_hat_1 decays super-polynomially).
double k_zero_spectral(const TestFunctionFamily& fam);

// Forward Abel integral at the origin (see header comment for the exact
// prefactor); contract: equals f_1(0) within quadrature tolerance.
double abel_forward_at_zero(const TestFunctionFamily& fam);

// min over (T, t) of f_hat_T(it) e^{-T(1-eps)t} / T: the empirical lower
// envelope for the constant C_eps in f_hat_T(it) >= T C_eps e^{T(1-eps)t}.
// Requires eps in (0,1) and non-empty grids; strictly positive.
double empirical_C_eps(const std::vector<double>& T_grid, double eps,
                       const std::vector<double>& t_grid,
                       const QuadratureConfig& quad = {});

}  // namespace wpgap::testfn
