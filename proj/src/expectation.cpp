#include "wpgap/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "wpgap/errors.hpp"

namespace wpgap::expectation {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using volumes::VolumePolynomial;
using volumes::VolumeTable;
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

template <class F>
double integrate(F&& f, double a, double b, const testfn::QuadratureConfig& q,
                 const char* what) {
  if (!(b > a)) return 0.0;
  double err = 0.0, l1 = 0.0;
  double val = GK::integrate(std::forward<F>(f), a, b, q.max_subdivisions,
                             q.rel_tol, &err, &l1);
  if (err > q.abs_tol && err > 50.0 * q.rel_tol * std::max(l1, std::abs(val))) {
    std::ostringstream msg;
    msg << "quadrature for " << what << " reached error " << err;
    throw Error(ErrorCode::quadrature, msg.str());
  }
  return val;
}

double fact_d(unsigned k) { return std::tgamma(static_cast<double>(k) + 1.0); }

// Double image of a coefficient value * pi^{2 pi_power}.
double to_d(const volumes::PiRational& pr) {
  return pr.value.convert_to<double>() *
         std::pow(kPi, 2.0 * static_cast<double>(pr.pi_power));
}

double constant_volume(const VolumePolynomial& poly) {
  return to_d(poly.constant_term());
}

// x^2 / sinh(x/2), extended by its limit 0 at x = 0.
double sinh_weight(double x) {
  if (x < 1e-12) return 2.0 * x;
  return x * x / std::sinh(0.5 * x);
}

// Coefficients c[e] of V restricted to (0,..,0,x) or (0,..,0,x,x): the
// L-monomial form of the tau coefficients is
//   V(L) = sum_d [tau_d] / (4^{|d|} prod (2 d_i + 1)!) prod L_i^{2 d_i},
// so pinning a slot to zero keeps exactly the monomials with d_i = 0 there,
// and equal slots add their exponents.  Returns the x^{2e} coefficient list.
std::vector<double> restricted_even_coeffs(const VolumePolynomial& poly,
                                           unsigned active) {
  std::vector<double> c(poly.dim() + 1, 0.0);
  const unsigned n = poly.n;
  for (const auto& [d, pr] : poly.tau) {
    unsigned e = 0;
    bool keep = true;
    double scale = 1.0;
    for (unsigned i = 0; i < n; ++i) {
      const unsigned di = d[i];
      if (i + active < n) {
        if (di != 0) {
          keep = false;
          break;
        }
        continue;
      }
      e += di;
      scale /= std::pow(4.0, di) * fact_d(2 * di + 1);
    }
    if (!keep) continue;
    c[e] += to_d(pr) * scale;
  }
  return c;
}

double horner_even(const std::vector<double>& c, double x) {
  const double x2 = x * x;
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x2 + *it;
  return acc;
}

// The simple-separating splitting range shared by terms (a) and (c):
// ordered pairs (i, j) with both sides stable, i.e. 2 <= 2i + j <= 2g + n - 2.
template <class Fn>
void for_each_separating_split(unsigned g, unsigned n, Fn&& fn) {
  for (unsigned i = 0; i <= g; ++i)
    for (unsigned j = 0; j <= n; ++j) {
      const unsigned w = 2 * i + j;
      if (w < 2 || w + 2 > 2 * g + n) continue;
      fn(i, j);
    }
}

// ---- closed-form integrals for term (d) ------------------------------------

// A volume polynomial collapsed onto `pairs` internal variables (two slots
// each, exponents added) and `sep` separating variables, all other slots
// pinned to zero.  Terms are (exponent-vector, L-monomial coefficient).
struct Collapsed {
  std::vector<std::pair<std::vector<uint8_t>, double>> terms;
};

Collapsed collapse(const VolumePolynomial& poly, unsigned pairs, unsigned sep) {
  Collapsed out;
  const unsigned n = poly.n;
  const unsigned live = 2 * pairs + sep;
  std::map<std::vector<uint8_t>, double> acc;
  for (const auto& [d, pr] : poly.tau) {
    bool keep = true;
    for (unsigned i = live; i < n; ++i)
      if (d[i] != 0) {
        keep = false;
        break;
      }
    if (!keep) continue;
    double scale = 1.0;
    for (unsigned i = 0; i < live; ++i)
      scale /= std::pow(4.0, d[i]) * fact_d(2 * d[i] + 1);
    std::vector<uint8_t> key(pairs + sep, 0);
    for (unsigned p = 0; p < pairs; ++p)
      key[p] = static_cast<uint8_t>(d[2 * p] + d[2 * p + 1]);
    for (unsigned v = 0; v < sep; ++v) key[pairs + v] = d[2 * pairs + v];
    acc[key] += to_d(pr) * scale;
  }
  out.terms.assign(acc.begin(), acc.end());
  return out;
}

// int_0^inf x^{2D+1} e^{-lambda x} dx = (2D+1)! / lambda^{2D+2}.
double gamma_weight(unsigned D, double lambda) {
  return fact_d(2 * D + 1) / std::pow(lambda, 2.0 * D + 2.0);
}

// Exponential rates and prefactor of the two complexity branches of the
// non-simple bound: boundary weight e^{-(1-eps1) l(dY)/2} for m <= 33 and
// e^{-l(dY)/4} for m >= 34 (internal curves meet dY twice, so their rate is
// doubled).
struct Branch {
  double prefactor;
  double lam_sep;
  double lam_int;
};

Branch branch_for(unsigned m, double T, double eps1, double c1) {
  if (m <= 33)
    return {c1 * T * std::exp(0.5 * T), 0.5 * (1.0 - eps1), 1.0 - eps1};
  return {T * std::exp(T), 0.25, 0.5};
}

// Closed-form Mirzakhani integral of one part-assignment: the subsurface
// volume carries n0 internal pairs then the k - 2 n0 separating slots (parts
// take them consecutively), every variable integrated against x e^{-lambda x}.
double gamma_integral(const VolumeTable& table, const SubsurfaceSignature& sig,
                      double lam_sep, double lam_int) {
  const unsigned sep = sig.k - 2 * sig.n0;
  const Collapsed y =
      collapse(table.at(sig.g0, sig.k + sig.a0), sig.n0, sep);
  std::vector<Collapsed> parts;
  parts.reserve(sig.parts.size());
  for (const auto& part : sig.parts)
    parts.push_back(collapse(table.at(part.g, part.n + part.a), 0, part.n));

  double total = 0.0;
  for (const auto& [ykey, yc] : y.terms) {
    double base = yc;
    for (unsigned i = 0; i < sig.n0; ++i) base *= gamma_weight(ykey[i], lam_int);
    unsigned off = sig.n0;
    for (unsigned j = 0; j < parts.size(); ++j) {
      const unsigned nj = sig.parts[j].n;
      double s = 0.0;
      for (const auto& [pkey, pc] : parts[j].terms) {
        double t = pc;
        for (unsigned v = 0; v < nj; ++v)
          t *= gamma_weight(ykey[off + v] + pkey[v], lam_sep);
        s += t;
      }
      base *= s;
      off += nj;
    }
    total += base;
  }
  return total;
}

double multinomial(unsigned n, unsigned a0,
                   const std::vector<PartSignature>& parts) {
  double denom = fact_d(a0);
  for (const auto& p : parts) denom *= fact_d(p.a);
  return fact_d(n) / denom;
}

// Enumeration of canonical non-increasing part sequences with the remaining
// budget (Sg, Sa, Sn) split over `left` parts, each part at most `prev`.
void recurse_parts(unsigned left, unsigned Sg, unsigned Sa, unsigned Sn,
                   const PartSignature& prev, std::vector<PartSignature>& acc,
                   std::vector<std::vector<PartSignature>>& out) {
  if (left == 0) {
    if (Sg == 0 && Sa == 0 && Sn == 0) out.push_back(acc);
    return;
  }
  if (Sn < left) return;  // every part needs at least one boundary circle
  for (unsigned gj = 0; gj <= Sg; ++gj)
    for (unsigned aj = 0; aj <= Sa; ++aj)
      for (unsigned nj = 1; nj + (left - 1) <= Sn; ++nj) {
        if (2 * gj + aj + nj < 3) continue;  // complement part must be stable
        const PartSignature cand{gj, aj, nj};
        if (prev < cand) continue;  // canonical: non-increasing
        acc.push_back(cand);
        recurse_parts(left - 1, Sg - gj, Sa - aj, Sn - nj, cand, acc, out);
        acc.pop_back();
      }
}

}  // namespace

void SubsurfaceSignature::validate(unsigned g, unsigned n) const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::precondition, "subsurface signature: " + what);
  };
  if (k < 1) fail("k >= 1 boundary circles required");
  if (2 * n0 > k) fail("n0 exceeds k/2");
  if (q < 1 || q != parts.size()) fail("q must equal the number of parts");
  if (q > k - 2 * n0) fail("q exceeds k - 2 n0");
  if (a0 > n) fail("a0 exceeds n");
  if (2 * g0 + a0 + k < 3) fail("subsurface must be stable");
  unsigned sg = 0, sa = 0, sn = 0, schi = 0;
  for (const auto& p : parts) {
    if (p.n < 1) fail("part requires n_j >= 1");
    if (2 * p.g + p.a + p.n < 3) fail("part must be stable");
    sg += p.g;
    sa += p.a;
    sn += p.n;
    schi += 2 * p.g - 2 + p.n + p.a;
  }
  if (sn != k - 2 * n0) fail("sum n_j must equal k - 2 n0");
  if (sa != n - a0) fail("sum a_j must equal n - a0");
  if (schi + m() != 2 * g - 2 + n)
    fail("Euler characteristics must sum to 2g - 2 + n - m");
  (void)sg;
}

std::vector<SubsurfaceSignature> enumerate_admissible(unsigned g, unsigned n,
                                                      unsigned g0, unsigned a0,
                                                      unsigned k, unsigned n0,
                                                      unsigned q) {
  std::vector<SubsurfaceSignature> result;
  if (k < 1 || 2 * n0 > k || q < 1 || a0 > n) return result;
  if (q > k - 2 * n0) return result;
  if (2 * g0 + a0 + k < 3) return result;
  // Constraint (i) fixes the total complement genus:
  //   sum g_j = g - g0 - k + n0 + q.
  const long sum_g = static_cast<long>(g) - g0 - k + n0 + q;
  if (sum_g < 0) return result;
  const unsigned Sg = static_cast<unsigned>(sum_g);
  const unsigned Sa = n - a0;
  const unsigned Sn = k - 2 * n0;

  std::vector<std::vector<PartSignature>> part_lists;
  std::vector<PartSignature> acc;
  const PartSignature top{Sg, Sa, Sn};
  recurse_parts(q, Sg, Sa, Sn, top, acc, part_lists);
  std::sort(part_lists.begin(), part_lists.end());
  for (auto& parts : part_lists) {
    SubsurfaceSignature sig{g0, a0, k, n0, q, std::move(parts)};
    sig.validate(g, n);
    result.push_back(std::move(sig));
  }
  return result;
}

double mif_one_curve(const std::function<double(double)>& F,
                     const std::function<double(double)>& volume_factor,
                     double C_Gamma, double upper,
                     const testfn::QuadratureConfig& quad) {
  if (!(C_Gamma > 0.0 && C_Gamma <= 1.0))
    throw Error(ErrorCode::precondition,
                "integration formula requires C_Gamma in (0, 1]");
  if (!(upper > 0.0))
    throw Error(ErrorCode::precondition,
                "integration formula requires a positive upper limit");
  auto integrand = [&](double x) { return F(x) * volume_factor(x) * x; };
  return C_Gamma *
         integrate(integrand, 0.0, upper, quad, "one-curve expectation");
}

std::pair<double, double> term_b_exact(const VolumeTable& table, unsigned g,
                                       unsigned n,
                                       const testfn::TestFunctionFamily& fam) {
  if (g < 1)
    throw Error(ErrorCode::precondition,
                "non-separating term requires g >= 1");
  const auto coeffs = restricted_even_coeffs(table.at(g - 1, n + 2), 2);
  const double vgn = constant_volume(table.at(g, n));
  auto integrand = [&](double x) {
    return sinh_weight(x) * testfn::fT_eval(fam, x) * horner_even(coeffs, x);
  };
  const double expectation =
      0.5 *
      integrate(integrand, 0.0, fam.T, fam.quad, "non-separating expectation") /
      vgn;
  const double fhalf =
      testfn::fourier_fT(fam, testfn::SpectralParameter::imaginary(0.5));
  return {expectation, std::abs(expectation - fhalf)};
}

double term_a_bound(const VolumeTable& table, unsigned g, unsigned n,
                    const testfn::TestFunctionFamily& fam, BoundMode mode,
                    const ConstantsTable& consts) {
  if (mode == BoundMode::stirling) {
    auto integrand = [&](double x) {
      return std::sinh(0.5 * x) * testfn::fT_eval(fam, x);
    };
    const double integral =
        integrate(integrand, 0.0, fam.T, fam.quad, "separating envelope");
    const double gg = static_cast<double>(g);
    return 4.0 * consts.C_A3 * (1.0 + static_cast<double>(n) * n) / gg *
           integral;
  }
  const double vgn = constant_volume(table.at(g, n));
  double total = 0.0;
  for_each_separating_split(g, n, [&](unsigned i, unsigned j) {
    const auto left = restricted_even_coeffs(table.at(i, j + 1), 1);
    const auto right = restricted_even_coeffs(table.at(g - i, n - j + 1), 1);
    auto integrand = [&](double x) {
      return sinh_weight(x) * testfn::fT_eval(fam, x) *
             horner_even(left, x) * horner_even(right, x);
    };
    const double integral =
        integrate(integrand, 0.0, fam.T, fam.quad, "separating expectation");
    double binom = fact_d(n) / (fact_d(j) * fact_d(n - j));
    total += binom * integral / vgn;
  });
  return total;
}

double term_c_bound(const VolumeTable& table, unsigned g, unsigned n,
                    const testfn::TestFunctionFamily& fam, BoundMode mode,
                    const ConstantsTable& consts) {
  // Long iterates (all lengths >= 1): counting envelope
  //   e g sum_{m=1}^{floor(T/2)} m.
  const double M = std::floor(0.5 * fam.T);
  const double long_part = std::exp(1.0) * static_cast<double>(g) *
                           0.5 * M * (M + 1.0);

  double e_short = 0.0;
  if (mode == BoundMode::stirling) {
    e_short = consts.C_short;
  } else {
    const double vgn = constant_volume(table.at(g, n));
    double sum = 0.0;
    if (g >= 1) {
      const auto nonsep = restricted_even_coeffs(table.at(g - 1, n + 2), 2);
      sum += integrate([&](double x) { return horner_even(nonsep, x); }, 0.0,
                       1.0, fam.quad, "short nonseparating count");
    }
    for_each_separating_split(g, n, [&](unsigned i, unsigned j) {
      const auto left = restricted_even_coeffs(table.at(i, j + 1), 1);
      const auto right = restricted_even_coeffs(table.at(g - i, n - j + 1), 1);
      const double binom = fact_d(n) / (fact_d(j) * fact_d(n - j));
      sum += binom * integrate(
                         [&](double x) {
                           return horner_even(left, x) * horner_even(right, x);
                         },
                         0.0, 1.0, fam.quad, "short separating count");
    });
    e_short = sum / vgn;
  }
  return long_part + testfn::f1_eval(0.0) * fam.T * e_short;
}

double term_d_bound(const VolumeTable& table, unsigned g, unsigned n,
                    const testfn::TestFunctionFamily& fam, double eps1,
                    double c1, BoundMode mode, const ConstantsTable& consts) {
  if (!(eps1 > 0.0 && eps1 < 1.0))
    throw Error(ErrorCode::precondition, "non-simple term requires eps1 in (0,1)");
  const double T = fam.T;
  const double gg = static_cast<double>(g);
  const long m_cap = static_cast<long>(std::floor(3.0 * std::log(gg) - 2.0));
  if (m_cap < 1) return 0.0;
  const unsigned m_max = static_cast<unsigned>(m_cap);

  double total = 0.0;
  for (unsigned m = 1; m <= m_max; ++m) {
    // Frames (g0, a0, k) with 2 g0 + a0 + k = m + 2, k >= 1, a0 <= n.
    for (unsigned g0 = 0; 2 * g0 + 1 <= m + 2; ++g0)
      for (unsigned a0 = 0; a0 <= n && 2 * g0 + a0 + 1 <= m + 2; ++a0) {
        const unsigned k = m + 2 - 2 * g0 - a0;
        if (mode == BoundMode::stirling) {
          unsigned long count = 0;
          for (unsigned n0 = 0; 2 * n0 <= k; ++n0)
            if (k >= 2 * n0 + 1) count += k - 2 * n0;
          if (count == 0) continue;
          double logc;
          if (m <= 33)
            logc = std::log(c1) + (consts.beta + 1.0) * std::log(T) + 0.5 * T +
                   eps1 * T;
          else
            logc = std::log(T) + T + 3.5 * T + std::lgamma(static_cast<double>(m));
          logc += std::log(static_cast<double>(count));
          if (a0 > 0) logc += a0 * std::log(static_cast<double>(n));
          logc -= m * std::log(gg);
          total += std::exp(logc);
          continue;
        }
        const Branch br = branch_for(m, T, eps1, c1);
        const double vgn = constant_volume(table.at(g, n));
        for (unsigned n0 = 0; 2 * n0 <= k; ++n0)
          for (unsigned q = 1; q + 2 * n0 <= k; ++q)
            for (const auto& sig : enumerate_admissible(g, n, g0, a0, k, n0, q)) {
              double sym = fact_d(sig.n0);
              for (const auto& p : sig.parts) sym *= fact_d(p.n);
              const double ig =
                  gamma_integral(table, sig, br.lam_sep, br.lam_int);
              total += br.prefactor * multinomial(n, a0, sig.parts) / sym * ig /
                       vgn;
            }
      }
  }
  return total;
}

TermReport total_bound(const VolumeTable& table, unsigned g, unsigned n,
                       double eps1, const ConstantsTable& consts,
                       BoundMode mode) {
  if (g < 2)
    throw Error(ErrorCode::precondition, "total bound requires g >= 2");
  if (!(eps1 > 0.0 && eps1 < 1.0))
    throw Error(ErrorCode::precondition, "total bound requires eps1 in (0,1)");
  const double gg = static_cast<double>(g);
  TermReport r;
  r.g = g;
  r.n = n;
  r.T = 4.0 * std::log(gg);
  r.eps1 = eps1;
  r.mode = mode;
  r.constants = consts;
  testfn::TestFunctionFamily fam(r.T);
  r.term_a = term_a_bound(table, g, n, fam, mode, consts);
  if (mode == BoundMode::exact) {
    auto [expectation, deviation] = term_b_exact(table, g, n, fam);
    r.term_b_expectation = expectation;
    r.term_b = deviation;
  } else {
    const double lg = std::log(gg);
    r.term_b_expectation = 0.0;
    r.term_b = static_cast<double>(n) * n * gg +
               static_cast<double>(n) * lg * lg * gg;
  }
  r.term_c = term_c_bound(table, g, n, fam, mode, consts);
  r.term_d = term_d_bound(table, g, n, fam, eps1, consts.c1, mode, consts);
  r.total = r.term_a + r.term_b + r.term_c + r.term_d;
  return r;
}

std::string to_json(const TermReport& r) {
  nlohmann::ordered_json j;
  j["g"] = r.g;
  j["n"] = r.n;
  j["T"] = r.T;
  j["eps1"] = r.eps1;
  j["mode"] = r.mode == BoundMode::exact ? "exact" : "stirling";
  j["term_a"] = r.term_a;
  j["term_b"] = r.term_b;
  j["term_b_expectation"] = r.term_b_expectation;
  j["term_c"] = r.term_c;
  j["term_d"] = r.term_d;
  j["total"] = r.total;
  j["constants"] = {{"C_eps", r.constants.C_eps}, {"nu", r.constants.nu},
                    {"c1", r.constants.c1},       {"beta", r.constants.beta},
                    {"C_A3", r.constants.C_A3},   {"C_short", r.constants.C_short}};
  return j.dump(2) + "\n";
}

std::vector<std::pair<unsigned, unsigned>> exact_requirements(unsigned g,
                                                              unsigned n) {
  std::set<std::pair<unsigned, unsigned>> req;
  req.insert({g, n});
  if (g >= 1) req.insert({g - 1, n + 2});
  for_each_separating_split(g, n, [&](unsigned i, unsigned j) {
    req.insert({i, j + 1});
    req.insert({g - i, n - j + 1});
  });
  const long m_cap =
      static_cast<long>(std::floor(3.0 * std::log(static_cast<double>(g)) - 2.0));
  for (long m = 1; m <= m_cap; ++m)
    for (unsigned g0 = 0; 2 * g0 + 1 <= m + 2; ++g0)
      for (unsigned a0 = 0; a0 <= n && 2 * g0 + a0 + 1 <= m + 2; ++a0) {
        const unsigned k = static_cast<unsigned>(m + 2) - 2 * g0 - a0;
        for (unsigned n0 = 0; 2 * n0 <= k; ++n0)
          for (unsigned q = 1; q + 2 * n0 <= k; ++q)
            for (const auto& sig :
                 enumerate_admissible(g, n, g0, a0, k, n0, q)) {
              req.insert({sig.g0, sig.k + sig.a0});
              for (const auto& p : sig.parts) req.insert({p.g, p.n + p.a});
            }
      }
  return {req.begin(), req.end()};
}

unsigned exact_frontier(const VolumeTable& table, unsigned n, unsigned g_limit) {
  unsigned best = 0;
  for (unsigned g = 2; g <= g_limit; ++g) {
    // Cheap gate before the frame enumeration: the two volumes every exact
    // term needs.  Real tables cap at small g, so this keeps the scan flat.
    if (!table.contains(g, n) || !table.contains(g - 1, n + 2)) continue;
    bool ok = true;
    for (const auto& [gg, nn] : exact_requirements(g, n))
      if (!table.contains(gg, nn)) {
        ok = false;
        break;
      }
    if (ok) best = g;
  }
  return best;
}

double a4_ratio(const VolumeTable& table, unsigned g, unsigned n, unsigned g0,
                unsigned a0, unsigned k, unsigned n0, unsigned q) {
  const auto sigs = enumerate_admissible(g, n, g0, a0, k, n0, q);
  if (sigs.empty()) return 0.0;
  const unsigned m = 2 * g0 + a0 + k - 2;
  const double vgn = constant_volume(table.at(g, n));
  const double vy = constant_volume(table.at(g0, k + a0));
  double lhs = 0.0;
  for (const auto& sig : sigs) {
    double prod = vy;
    for (const auto& p : sig.parts)
      prod *= constant_volume(table.at(p.g, p.n + p.a));
    lhs += multinomial(n, a0, sig.parts) * prod;
  }
  lhs /= vgn;
  const double rhs = fact_d(m - 1) *
                     std::pow(static_cast<double>(n), static_cast<double>(a0)) /
                     std::pow(static_cast<double>(g), static_cast<double>(m));
  return lhs / rhs;
}

}  // namespace wpgap::expectation
