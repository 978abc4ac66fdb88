#include "wpgap/testfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wpgap/errors.hpp"

namespace wpgap::testfn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using boost::math::interpolators::cardinal_cubic_b_spline;
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

// Adaptive Gauss-Kronrod with an explicit post-hoc error check; every
// quadrature in this module funnels through here so a failed tolerance is
// reported as ErrorCode::quadrature with the achieved error, not silently
// accepted.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& q,
                 const char* what) {
  if (!(b > a)) return 0.0;
  double err = 0.0, l1 = 0.0;
  double val = GK::integrate(std::forward<F>(f), a, b, q.max_subdivisions,
                             q.rel_tol, &err, &l1);
  if (err > q.abs_tol && err > 50.0 * q.rel_tol * std::max(l1, std::abs(val))) {
    std::ostringstream msg;
    msg << "quadrature for " << what << " on [" << a << ", " << b
        << "] reached error " << err << " (rel_tol " << q.rel_tol
        << ", abs_tol " << q.abs_tol << ")";
    throw Error(ErrorCode::quadrature, msg.str());
  }
  return val;
}

// psi0'(x) = psi0(x) * (-8x) / (1 - 4x^2)^2 on the open support.
double psi0_deriv(double x) {
  if (std::abs(x) >= 0.5) return 0.0;
  const double w = 1.0 - 4.0 * x * x;
  return std::exp(-1.0 / w) * (-8.0 * x) / (w * w);
}

// Dense cubic-spline caches for f_1 = psi0 * psi0 and f_1' on [0, 1]
// (step 1/2048; both extended by parity).  The grid convolutions are smooth
// integrals over the overlap [x - 1/2, 1/2], evaluated once under call_once.
struct F1Cache {
  cardinal_cubic_b_spline<double> f;   // f_1 on [0,1]
  cardinal_cubic_b_spline<double> df;  // f_1' on [0,1]

  F1Cache() {
    constexpr unsigned kN = 2049;  // 2^11 intervals on [0,1]
    const double h = 1.0 / static_cast<double>(kN - 1);
    QuadratureConfig q;  // defaults: 1e-10 relative
    std::vector<double> fv(kN), dv(kN);
    for (unsigned i = 0; i < kN; ++i) {
      const double x = static_cast<double>(i) * h;
      const double lo = x - 0.5, hi = 0.5;
      if (hi <= lo) {
        fv[i] = 0.0;
        dv[i] = 0.0;
        continue;
      }
      fv[i] = integrate([x](double t) { return psi0(t) * psi0(x - t); }, lo,
                        hi, q, "f1 grid value");
      dv[i] = integrate([x](double t) { return psi0_deriv(x - t) * psi0(t); },
                        lo, hi, q, "f1' grid value");
    }
    // Exact endpoint slopes: f_1 is even (f_1'(0) = 0) and vanishes to all
    // orders at the support edge x = 1.
    f = cardinal_cubic_b_spline<double>(fv.data(), fv.size(), 0.0, h, 0.0, 0.0);
    df = cardinal_cubic_b_spline<double>(dv.data(), dv.size(), 0.0, h);
  }
};

const F1Cache& f1_cache() {
  static const F1Cache cache;
  return cache;
}

// Dense cache of psihat0(s) = 2 int_0^{1/2} cos(s x) psi0(x) dx on
// s in [0, 700], step 0.05.  The spectral route uses f_hat_1 = psihat0^2
// (Fourier transform of a self-convolution), which also keeps the cached
// transform non-negative by construction.
struct PsiHatCache {
  cardinal_cubic_b_spline<double> s;
  static constexpr double kStep = 0.05;
  static constexpr double kMax = 700.0;

  PsiHatCache() {
    const unsigned n = static_cast<unsigned>(kMax / kStep) + 1;
    QuadratureConfig q;
    q.abs_tol = 1e-15;  // the deep tail is ~1e-12; keep it meaningful
    std::vector<double> v(n);
    for (unsigned i = 0; i < n; ++i) {
      const double si = static_cast<double>(i) * kStep;
      v[i] = 2.0 * integrate([si](double x) { return std::cos(si * x) * psi0(x); },
                             0.0, 0.5, q, "psihat0 grid value");
    }
    s = cardinal_cubic_b_spline<double>(v.data(), v.size(), 0.0, kStep);
  }
};

const PsiHatCache& psihat_cache() {
  static const PsiHatCache cache;
  return cache;
}

}  // namespace

SpectralParameter SpectralParameter::real(double r) {
  if (!(r >= 0.0))
    throw Error(ErrorCode::precondition,
                "spectral parameter: real-axis value must be >= 0");
  return SpectralParameter{Axis::real_axis, r};
}

SpectralParameter SpectralParameter::imaginary(double t) {
  if (!(t >= 0.0 && t <= 0.5))
    throw Error(ErrorCode::precondition,
                "spectral parameter: imaginary-axis value must lie in [0, 1/2]");
  return SpectralParameter{Axis::imaginary_axis, t};
}

TestFunctionFamily::TestFunctionFamily(double T_, QuadratureConfig q)
    : T(T_), quad(q) {
  if (!(T > 1.0))
    throw Error(ErrorCode::precondition,
                "test-function family requires T > 1");
}

double psi0(double x) {
  if (std::abs(x) >= 0.5) return 0.0;
  return std::exp(-1.0 / (1.0 - 4.0 * x * x));
}

double f1_eval(double x) {
  const double ax = std::abs(x);
  if (ax >= 1.0) return 0.0;
  return f1_cache().f(ax);
}

double f1_deriv(double x) {
  const double ax = std::abs(x);
  if (ax >= 1.0) return 0.0;
  const double v = f1_cache().df(ax);
  return x < 0.0 ? -v : v;
}

double fT_eval(const TestFunctionFamily& fam, double x) {
  return f1_eval(x / fam.T);
}

double fT_deriv(const TestFunctionFamily& fam, double x) {
  return f1_deriv(x / fam.T) / fam.T;
}

double fourier_fT(const TestFunctionFamily& fam, SpectralParameter s) {
  const double T = fam.T;
  if (s.axis == SpectralParameter::Axis::real_axis) {
    const double r = s.value;
    return integrate(
        [&](double x) { return 2.0 * std::cos(r * x) * f1_eval(x / T); }, 0.0,
        T, fam.quad, "fourier transform (real axis)");
  }
  const double t = s.value;
  return integrate(
      [&](double x) { return 2.0 * std::cosh(t * x) * f1_eval(x / T); }, 0.0,
      T, fam.quad, "fourier transform (imaginary axis)");
}

double inverse_abel_kT(const TestFunctionFamily& fam, double rho) {
  if (!(rho >= 0.0))
    throw Error(ErrorCode::precondition, "inverse Abel: rho must be >= 0");
  const double T = fam.T;
  if (rho >= T) return 0.0;

  // cosh u = cosh rho + v^2 turns the square-root singularity at u = rho
  // into the regular integrand -(sqrt(2)/pi) f_T'(u(v)) / sinh u(v):
  //   cosh u - 1 = e + v^2 with e = 2 sinh^2(rho/2),
  //   sinh u     = sqrt((e + v^2)(e + v^2 + 2)),
  //   u          = 2 asinh(sqrt((e + v^2)/2)).
  const double sh = std::sinh(0.5 * rho);
  const double e = 2.0 * sh * sh;
  const double u1 = std::min(rho + 1.0, T);
  const double v1 = std::sqrt(std::cosh(u1) - std::cosh(rho));

  auto v_integrand = [&](double v) {
    const double w = e + v * v;
    const double s = std::sqrt(w * (w + 2.0));
    if (s == 0.0) {
      // Removable limit at rho = 0, v = 0: f_T'(u)/sinh u -> f_1''(0)/T^2.
      return f1_cache().df.prime(0.0) / (fam.T * fam.T);
    }
    const double u = 2.0 * std::asinh(std::sqrt(0.5 * w));
    return fT_deriv(fam, u) / s;
  };
  double value = -(std::sqrt(2.0) / kPi) *
                 integrate(v_integrand, 0.0, v1, fam.quad,
                           "inverse Abel (substituted piece)");

  if (u1 < T) {
    const double crho = std::cosh(rho);
    auto u_integrand = [&](double u) {
      return fT_deriv(fam, u) / std::sqrt(std::cosh(u) - crho);
    };
    value += -(1.0 / (std::sqrt(2.0) * kPi)) *
             integrate(u_integrand, u1, T, fam.quad,
                       "inverse Abel (regular piece)");
  }
  return value;
}

double k_zero_spectral(const TestFunctionFamily& fam) {
  // k_T(0) = (1/(2 pi T)) int_0^inf s f_hat_1(s) tanh(pi s / T) ds with
  // f_hat_1 = psihat0^2, integrated in chunks of length 4 pi until five
  // consecutive chunks are negligible against the accumulator (the
  // transform decays super-polynomially).
  const auto& cache = psihat_cache();
  const double T = fam.T;
  const double cap = std::min(fam.quad.truncation_radius, PsiHatCache::kMax);
  const double chunk_len = 4.0 * kPi;

  auto integrand = [&](double s) {
    const double p = cache.s(s);
    return s * p * p * std::tanh(kPi * s / T);
  };

  QuadratureConfig q = fam.quad;
  q.max_subdivisions = 8;
  double acc = 0.0;
  unsigned quiet = 0;
  for (double lo = 0.0; lo < cap && quiet < 5; lo += chunk_len) {
    const double hi = std::min(lo + chunk_len, cap);
    const double part =
        integrate(integrand, lo, hi, q, "spectral k_T(0) chunk");
    acc += part;
    quiet = (std::abs(part) < 1e-13 * std::abs(acc)) ? quiet + 1 : 0;
  }
  return acc / (2.0 * kPi * T);
}

double abel_forward_at_zero(const TestFunctionFamily& fam) {
  // sqrt(2) int_0^T k_T(rho) sinh(rho)/sqrt(cosh rho - 1) drho
  //   = 2 int_0^T k_T(rho) cosh(rho/2) drho,
  // using the pointwise identity sinh rho / sqrt(cosh rho - 1)
  //   = sqrt(2) cosh(rho/2), which also removes the apparent rho = 0
  // singularity before quadrature.
  QuadratureConfig q = fam.quad;
  q.rel_tol = std::max(q.rel_tol, 1e-9);  // every sample is itself a quadrature
  q.max_subdivisions = 10;
  auto integrand = [&](double rho) {
    return inverse_abel_kT(fam, rho) * std::cosh(0.5 * rho);
  };
  return 2.0 * integrate(integrand, 0.0, fam.T, q, "forward Abel at zero");
}

double empirical_C_eps(const std::vector<double>& T_grid, double eps,
                       const std::vector<double>& t_grid,
                       const QuadratureConfig& quad) {
  if (!(eps > 0.0 && eps < 1.0))
    throw Error(ErrorCode::precondition,
                "empirical C_eps requires eps in (0, 1)");
  if (T_grid.empty() || t_grid.empty())
    throw Error(ErrorCode::precondition,
                "empirical C_eps requires non-empty grids");
  double best = std::numeric_limits<double>::infinity();
  for (double T : T_grid) {
    TestFunctionFamily fam(T, quad);
    for (double t : t_grid) {
      const double fh = fourier_fT(fam, SpectralParameter::imaginary(t));
      const double ratio = fh * std::exp(-T * (1.0 - eps) * t) / T;
      best = std::min(best, ratio);
    }
  }
  return best;
}

}  // namespace wpgap::testfn
