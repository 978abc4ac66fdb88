#include "wpgap/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <utility>

#include "wpgap/errors.hpp"

namespace wpgap::volumes {

namespace {

// ---------------------------------------------------------------------------
// L-monomial ("c") representation used internally by the recursion:
// V_{g,n}(L) = sum_d c_d prod L_i^{2 d_i}, each c_d a rational times
// pi^{2(3g-3+n-|d|)} with the pi-power implicit in the grading.
using CPoly = std::map<MultiIndex, Rational>;

unsigned dim_of(unsigned g, unsigned n) { return 3 * g - 3 + n; }

// [tau_d] = c_d 4^{|d|} prod (2d_i+1)!
Rational tau_from_c(const MultiIndex& d, const Rational& c) {
  Rational r = c;
  unsigned total = 0;
  for (auto di : d) {
    total += di;
    r *= Rational(factorial(2 * di + 1));
  }
  r *= pow_rational(Rational(4), total);
  return r;
}

Rational c_from_tau(const MultiIndex& d, const Rational& tau) {
  Rational r = tau;
  unsigned total = 0;
  for (auto di : d) {
    total += di;
    r /= Rational(factorial(2 * di + 1));
  }
  r /= pow_rational(Rational(4), total);
  return r;
}

VolumePolynomial to_tau_poly(unsigned g, unsigned n, const CPoly& c) {
  VolumePolynomial poly;
  poly.g = g;
  poly.n = n;
  unsigned dmax = dim_of(g, n);
  for (const auto& [d, val] : c) {
    unsigned total = 0;
    for (auto di : d) total += di;
    poly.tau.emplace(d, PiRational{tau_from_c(d, val), dmax - total});
  }
  return poly;
}

CPoly to_cpoly(const VolumePolynomial& poly) {
  CPoly c;
  for (const auto& [d, pr] : poly.tau) c.emplace(d, c_from_tau(d, pr.value));
  return c;
}

// ---------------------------------------------------------------------------
// Kernel moments.  With H(x,y) = 1/(1+e^{(x+y)/2}) + 1/(1+e^{(x-y)/2}),
//
//   F_{2k+1}(t) = int_0^inf x^{2k+1} H(x,t) dx
//               = (2k+1)! sum_{i=0}^{k+1} zeta(2i)(2^{2i+1}-4)
//                 t^{2(k+1-i)} / (2(k+1-i))!,
//
// zeta(0) = -1/2.  Each term carries t^{2m} (m = k+1-i) and the grading
// pi^{2i}; we keep the rational parts only.
struct FTerm {
  unsigned m;    // t-exponent / 2
  Rational rat;  // rational part (pi^{2(k+1-m)} implicit)
};

const std::vector<FTerm>& F_terms(unsigned k) {
  static std::map<unsigned, std::vector<FTerm>> cache;
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  std::vector<FTerm> out;
  for (unsigned i = 0; i <= k + 1; ++i) {
    unsigned m = k + 1 - i;
    Rational rat = Rational(factorial(2 * k + 1)) * zeta_even_rational(i) *
                   Rational((BigInt(1) << (2 * i + 1)) - 4) /
                   Rational(factorial(2 * m));
    if (rat != 0) out.push_back({m, rat});
  }
  return cache.emplace(k, std::move(out)).first->second;
}

// Beta-type reduction factor (2a+1)!(2b+1)!/(2a+2b+3)! of the double
// integral int int x^{2a+1} y^{2b+1} H(x+y, t) dx dy = fac * F_{2(a+b+1)+1}(t).
Rational beta_factor(unsigned a, unsigned b) {
  return Rational(factorial(2 * a + 1) * factorial(2 * b + 1),
                  factorial(2 * a + 2 * b + 3));
}

// ---------------------------------------------------------------------------
// Mirzakhani recursion on c-polynomials.  Differentiating L_1 V_{g,n}(L)
// with respect to L_1 equals the sum of three integral transforms: the
// non-separating gluing term over V_{g-1,n+1}(x,y,L_rest), the separating
// one over ordered stable splittings V_{g1,|I|+1} x V_{g2,|J|+1}, and the
// boundary-pairing terms over V_{g,n-1}(x, L_rest\L_j).  After the moment
// reduction every contribution lands on an L-monomial; dividing the
// L_1^{2d_1} coefficient by (2d_1+1) recovers c_d.
class Generator {
 public:
  explicit Generator(unsigned cap) : cap_(cap) {}

  void seed(unsigned g, unsigned n, CPoly c) {
    memo_.emplace(std::make_pair(g, n), std::move(c));
  }

  const CPoly& cpoly(unsigned g, unsigned n) {
    auto key = std::make_pair(g, n);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (!stable(g, n)) {
      throw Error(ErrorCode::precondition,
                  "unstable signature (" + std::to_string(g) + "," + std::to_string(n) + ")");
    }
    CPoly result;
    if (g == 0 && n == 3) {
      result.emplace(MultiIndex{0, 0, 0}, Rational(1));
    } else if (g == 1 && n == 1) {
      result.emplace(MultiIndex{1}, Rational(1, 48));
      result.emplace(MultiIndex{0}, Rational(1, 12));
    } else if (n == 0) {
      result = from_dilaton(g);
    } else {
      result = recurse(g, n);
    }
    return memo_.emplace(key, std::move(result)).first->second;
  }

 private:
  // V_{g,0} from the dilaton identity applied to V_{g,1}: evaluating the
  // one-holed polynomial's derivative at the distinguished point 2 pi i
  // gives sum_{k>=1} 2k c_k (-4)^{k-1} = (2g-2) V_{g,0} (rational parts;
  // the grading supplies matching pi-powers on both sides).
  CPoly from_dilaton(unsigned g) {
    const CPoly& v1 = cpoly(g, 1);
    Rational acc = 0;
    for (const auto& [d, c] : v1) {
      unsigned k = d[0];
      if (k >= 1) {
        acc += Rational(2 * k) * c * pow_rational(Rational(-4), static_cast<long>(k) - 1);
      }
    }
    Rational val = acc / Rational(2 * g - 2);
    if (val <= 0) {
      throw Error(ErrorCode::internal, "dilaton closure gave non-positive volume");
    }
    CPoly out;
    out.emplace(MultiIndex{}, val);
    return out;
  }

  CPoly recurse(unsigned g, unsigned n) {
    CPoly W;
    const Rational half(1, 2);
    auto add = [&W](MultiIndex&& key, const Rational& v) {
      auto [it, fresh] = W.emplace(std::move(key), v);
      if (!fresh) it->second += v;
    };

    // --- non-separating term: V_{g-1,n+1}(x, y, L_2..L_n)
    if (g >= 1 && stable(static_cast<long>(g) - 1, n + 1)) {
      const CPoly& S = cpoly(g - 1, n + 1);
      for (const auto& [d, gam] : S) {
        unsigned a = d[0], b = d[1];
        Rational coef = half * gam * beta_factor(a, b);
        for (const FTerm& t : F_terms(a + b + 1)) {
          MultiIndex key(n);
          key[0] = static_cast<std::uint8_t>(t.m);
          std::copy(d.begin() + 2, d.end(), key.begin() + 1);
          add(std::move(key), coef * t.rat);
        }
      }
    }

    // --- separating term: ordered stable splittings of (g, {L_2..L_n})
    unsigned rest = n - 1;  // boundary labels 2..n
    for (unsigned g1 = 0; g1 <= g; ++g1) {
      unsigned g2 = g - g1;
      for (unsigned mask = 0; mask < (1u << rest); ++mask) {
        unsigned szI = static_cast<unsigned>(__builtin_popcount(mask));
        unsigned szJ = rest - szI;
        if (!stable(g1, szI + 1) || !stable(g2, szJ + 1)) continue;
        const CPoly& S1 = cpoly(g1, szI + 1);
        const CPoly& S2 = cpoly(g2, szJ + 1);
        // positions (0-based in the e-vector) of each side, ascending
        std::vector<unsigned> posI, posJ;
        for (unsigned p = 0; p < rest; ++p) {
          (mask >> p & 1u ? posI : posJ).push_back(p);
        }
        for (const auto& [d1, gam1] : S1) {
          unsigned a = d1[0];
          for (const auto& [d2, gam2] : S2) {
            unsigned b = d2[0];
            Rational coef = half * gam1 * gam2 * beta_factor(a, b);
            MultiIndex base(n, 0);
            for (unsigned idx = 0; idx < posI.size(); ++idx) base[posI[idx] + 1] = d1[idx + 1];
            for (unsigned idx = 0; idx < posJ.size(); ++idx) base[posJ[idx] + 1] = d2[idx + 1];
            for (const FTerm& t : F_terms(a + b + 1)) {
              MultiIndex key = base;
              key[0] = static_cast<std::uint8_t>(t.m);
              add(std::move(key), coef * t.rat);
            }
          }
        }
      }
    }

    // --- boundary-pairing terms: V_{g,n-1}(x, L_rest minus L_j)
    if (n >= 2 && stable(g, n - 1)) {
      const CPoly& S = cpoly(g, n - 1);
      for (unsigned j = 2; j <= n; ++j) {
        std::vector<unsigned> others;  // 0-based e-vector slots != j
        for (unsigned p = 2; p <= n; ++p) {
          if (p != j) others.push_back(p - 2);
        }
        for (const auto& [d, gam] : S) {
          unsigned k = d[0];
          for (const FTerm& t : F_terms(k)) {
            Rational base = gam * t.rat;
            for (unsigned p = 0; p <= t.m; ++p) {
              Rational c = base * Rational(binomial(2 * t.m, 2 * p));
              MultiIndex key(n, 0);
              key[0] = static_cast<std::uint8_t>(t.m - p);
              key[j - 1] = static_cast<std::uint8_t>(p);
              for (unsigned idx = 0; idx < others.size(); ++idx) {
                key[others[idx] + 1] = d[idx + 1];
              }
              add(std::move(key), c);
            }
          }
        }
      }
    }

    // LHS is d/dL_1 (L_1 V): the L_1^{2 d_1} coefficient is (2 d_1 + 1) c_d.
    CPoly res;
    unsigned dmax = dim_of(g, n);
    for (auto& [d, w] : W) {
      if (w == 0) continue;
      unsigned total = 0;
      for (auto di : d) total += di;
      if (total > dmax) {
        throw Error(ErrorCode::internal, "recursion produced a degree overflow");
      }
      res.emplace(d, w / Rational(2 * d[0] + 1));
    }
    // exact symmetry audit: every index must match its sorted representative
    for (const auto& [d, c] : res) {
      MultiIndex sd = d;
      std::sort(sd.begin(), sd.end(), std::greater<>());
      auto it = res.find(sd);
      if (it == res.end() || it->second != c) {
        throw Error(ErrorCode::internal, "recursion produced an asymmetric polynomial");
      }
    }
    return res;
  }

  std::map<std::pair<unsigned, unsigned>, CPoly> memo_;
  unsigned cap_;
};

void require_cap(unsigned g, unsigned n, unsigned cap) {
  if (dim_of(g, n) > cap) {
    throw Error(ErrorCode::precondition,
                "complexity cap exceeded: 3g-3+n = " + std::to_string(dim_of(g, n)) +
                    " > " + std::to_string(cap));
  }
}

std::string signature_str(unsigned g, unsigned n) {
  return "(" + std::to_string(g) + "," + std::to_string(n) + ")";
}

}  // namespace

// ---------------------------------------------------------------------------

Real PiRational::to_real() const {
  ensure_precision();
  Real r(value);
  if (pi_power > 0) {
    r *= pow(pi_real(), 2 * static_cast<int>(pi_power));
  }
  return r;
}

const PiRational& VolumePolynomial::constant_term() const {
  static const PiRational zero{Rational(0), 0};
  auto it = tau.find(MultiIndex(n, 0));
  return it == tau.end() ? zero : it->second;
}

const VolumePolynomial& VolumeTable::at(unsigned g, unsigned n) const {
  auto it = entries.find({g, n});
  if (it == entries.end()) {
    throw Error(ErrorCode::missing_volume,
                "volume table has no entry " + signature_str(g, n));
  }
  return it->second;
}

VolumeTable generate_volumes(unsigned g_max, unsigned n_max, unsigned complexity_cap) {
  bool any = false;
  for (unsigned g = 0; g <= g_max && !any; ++g) {
    for (unsigned n = 0; n <= n_max && !any; ++n) any = stable(g, n);
  }
  if (!any) {
    throw Error(ErrorCode::precondition, "no stable (g,n) in requested range");
  }
  require_cap(g_max, n_max, complexity_cap);
  Generator gen(complexity_cap);
  VolumeTable table;
  for (unsigned g = 0; g <= g_max; ++g) {
    for (unsigned n = 0; n <= n_max; ++n) {
      if (!stable(g, n)) continue;
      VolumePolynomial poly = to_tau_poly(g, n, gen.cpoly(g, n));
      check_polynomial(poly);
      table.entries.emplace(std::make_pair(g, n), std::move(poly));
      table.provenance.emplace(std::make_pair(g, n), VolumeTable::Provenance::generated);
    }
  }
  return table;
}

void generate_entry(VolumeTable& table, unsigned g, unsigned n, unsigned complexity_cap) {
  if (table.contains(g, n)) return;
  if (!stable(g, n)) {
    throw Error(ErrorCode::precondition, "unstable signature " + signature_str(g, n));
  }
  require_cap(g, n, complexity_cap);
  Generator gen(complexity_cap);
  for (const auto& [key, poly] : table.entries) {
    gen.seed(key.first, key.second, to_cpoly(poly));
  }
  VolumePolynomial poly = to_tau_poly(g, n, gen.cpoly(g, n));
  check_polynomial(poly);
  table.entries.emplace(std::make_pair(g, n), std::move(poly));
  table.provenance.emplace(std::make_pair(g, n), VolumeTable::Provenance::generated);
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize(const VolumeTable& table) {
  std::ostringstream out;
  out << "# weil-petersson volume coefficient table\n";
  out << "# format: g n | d1 ... dn | num/den | piexp   "
         "(coefficient [tau_d] = num/den * pi^(2*piexp))\n";
  for (const auto& [key, poly] : table.entries) {
    for (const auto& [d, pr] : poly.tau) {
      out << key.first << ' ' << key.second << " | ";
      bool all_zero = std::all_of(d.begin(), d.end(), [](auto v) { return v == 0; });
      if (!all_zero) {
        for (auto di : d) out << static_cast<unsigned>(di) << ' ';
      }
      out << "| " << numerator(pr.value).str() << '/' << denominator(pr.value).str()
          << " | " << pr.pi_power << '\n';
    }
  }
  return out.str();
}

namespace {

[[noreturn]] void parse_fail(unsigned line_no, const std::string& what) {
  throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

unsigned parse_unsigned(const std::string& tok, unsigned line_no, const char* what) {
  try {
    size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    parse_fail(line_no, std::string("invalid ") + what + " '" + tok + "'");
  }
}

}  // namespace

VolumeTable parse_volume_table(std::string_view text) {
  VolumeTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  unsigned line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    // split into the four '|'-separated fields
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t bar = line.find('|', start);
      if (bar == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, bar - start));
      start = bar + 1;
    }
    if (fields.size() != 4) {
      parse_fail(line_no, "malformed row (expected 4 '|'-separated fields, got " +
                              std::to_string(fields.size()) + ")");
    }

    auto head = tokenize(fields[0]);
    if (head.size() != 2) parse_fail(line_no, "expected '<g> <n>' before first '|'");
    unsigned g = parse_unsigned(head[0], line_no, "genus");
    unsigned n = parse_unsigned(head[1], line_no, "boundary count");
    if (!stable(g, n)) {
      parse_fail(line_no, "unstable signature " + signature_str(g, n));
    }
    unsigned dmax = 3 * g - 3 + n;

    auto dtoks = tokenize(fields[1]);
    MultiIndex d(n, 0);
    if (!dtoks.empty()) {
      if (dtoks.size() != n) {
        parse_fail(line_no, "d-list must have n = " + std::to_string(n) +
                                " entries or be empty, got " + std::to_string(dtoks.size()));
      }
      for (unsigned i = 0; i < n; ++i) {
        unsigned v = parse_unsigned(dtoks[i], line_no, "multi-index entry");
        if (v > 255) parse_fail(line_no, "multi-index entry out of range");
        d[i] = static_cast<std::uint8_t>(v);
      }
    }
    unsigned total = 0;
    for (auto di : d) total += di;
    if (total > dmax) {
      parse_fail(line_no, "degree bound violated (|d| = " + std::to_string(total) +
                              " > 3g-3+n = " + std::to_string(dmax) + ")");
    }

    auto rtoks = tokenize(fields[2]);
    if (rtoks.size() != 1) parse_fail(line_no, "expected '<num>/<den>'");
    auto slash = rtoks[0].find('/');
    if (slash == std::string::npos) parse_fail(line_no, "expected '<num>/<den>'");
    Rational coeff;
    try {
      BigInt num(rtoks[0].substr(0, slash));
      BigInt den(rtoks[0].substr(slash + 1));
      if (den <= 0) parse_fail(line_no, "denominator must be positive");
      coeff = Rational(num, den);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      parse_fail(line_no, "invalid rational '" + rtoks[0] + "'");
    }
    if (coeff <= 0) parse_fail(line_no, "coefficient must be positive");

    auto ptoks = tokenize(fields[3]);
    if (ptoks.size() != 1) parse_fail(line_no, "expected '<piexp>'");
    unsigned piexp = parse_unsigned(ptoks[0], line_no, "pi power");
    if (piexp != dmax - total) {
      parse_fail(line_no, "pi power mismatch (got " + std::to_string(piexp) +
                              ", expected 3g-3+n-|d| = " + std::to_string(dmax - total) + ")");
    }

    auto key = std::make_pair(g, n);
    auto& poly = table.entries[key];
    if (poly.tau.empty()) {
      poly.g = g;
      poly.n = n;
      table.provenance[key] = VolumeTable::Provenance::ingested;
    }
    if (!poly.tau.emplace(std::move(d), PiRational{coeff, piexp}).second) {
      parse_fail(line_no, "duplicate row for this (g, n, d)");
    }
  }
  for (const auto& [key, poly] : table.entries) {
    try {
      check_polynomial(poly);
    } catch (const Error& e) {
      throw Error(ErrorCode::parse_error,
                  "entry " + signature_str(key.first, key.second) + ": " + e.what());
    }
  }
  return table;
}

void check_polynomial(const VolumePolynomial& poly) {
  if (!stable(poly.g, poly.n)) {
    throw Error(ErrorCode::internal, "unstable signature");
  }
  unsigned dmax = poly.dim();
  // group by sorted representative: each orbit must be fully present with
  // one common value
  std::map<MultiIndex, std::pair<unsigned, const PiRational*>> orbits;
  for (const auto& [d, pr] : poly.tau) {
    if (d.size() != poly.n) throw Error(ErrorCode::internal, "multi-index arity mismatch");
    unsigned total = 0;
    for (auto di : d) total += di;
    if (total > dmax) throw Error(ErrorCode::internal, "degree bound violated");
    if (pr.pi_power != dmax - total) throw Error(ErrorCode::internal, "pi power mismatch");
    if (pr.value <= 0) throw Error(ErrorCode::internal, "non-positive coefficient");
    MultiIndex sd = d;
    std::sort(sd.begin(), sd.end(), std::greater<>());
    auto [it, fresh] = orbits.emplace(std::move(sd), std::make_pair(1u, &pr));
    if (!fresh) {
      it->second.first += 1;
      if (!(it->second.second->value == pr.value)) {
        throw Error(ErrorCode::internal, "coefficient map not symmetric");
      }
    }
  }
  for (const auto& [sd, info] : orbits) {
    // orbit size = n! / prod (multiplicity of each distinct entry)!
    BigInt expected = factorial(poly.n);
    unsigned run = 1;
    for (size_t i = 1; i <= sd.size(); ++i) {
      if (i < sd.size() && sd[i] == sd[i - 1]) {
        ++run;
      } else {
        expected /= factorial(run);
        run = 1;
      }
    }
    if (BigInt(info.first) != expected) {
      throw Error(ErrorCode::internal, "coefficient map not symmetric (incomplete orbit)");
    }
  }
}

// ---------------------------------------------------------------------------
// Evaluation

Real evaluate(const VolumePolynomial& poly, const std::vector<Real>& lengths) {
  ensure_precision();
  if (lengths.size() != poly.n) {
    throw Error(ErrorCode::precondition,
                "evaluate: expected " + std::to_string(poly.n) + " lengths, got " +
                    std::to_string(lengths.size()));
  }
  for (const Real& L : lengths) {
    if (L < 0) throw Error(ErrorCode::precondition, "evaluate: negative length");
  }
  unsigned dmax = poly.dim();
  // power tables: pw[i][e] = (L_i/2)^{2e}, pipw[k] = pi^{2k}
  std::vector<std::vector<Real>> pw(poly.n);
  for (unsigned i = 0; i < poly.n; ++i) {
    Real q = lengths[i] / 2;
    q *= q;
    pw[i].resize(dmax + 1);
    pw[i][0] = 1;
    for (unsigned e = 1; e <= dmax; ++e) pw[i][e] = pw[i][e - 1] * q;
  }
  std::vector<Real> pipw(dmax + 1);
  pipw[0] = 1;
  if (dmax >= 1) {
    Real p2 = pi_real();
    p2 *= p2;
    for (unsigned k = 1; k <= dmax; ++k) pipw[k] = pipw[k - 1] * p2;
  }
  Real acc = 0;
  for (const auto& [d, pr] : poly.tau) {
    Rational scale = pr.value;
    for (auto di : d) scale /= Rational(factorial(2 * di + 1));
    Real term(scale);
    term *= pipw[pr.pi_power];
    for (unsigned i = 0; i < poly.n; ++i) {
      if (d[i] != 0) term *= pw[i][d[i]];
    }
    acc += term;
  }
  return acc;
}

std::map<unsigned, Rational> evaluate_exact(const VolumePolynomial& poly,
                                            const std::vector<Rational>& lengths) {
  if (lengths.size() != poly.n) {
    throw Error(ErrorCode::precondition, "evaluate_exact: arity mismatch");
  }
  std::map<unsigned, Rational> acc;
  for (const auto& [d, pr] : poly.tau) {
    Rational term = pr.value;
    for (unsigned i = 0; i < poly.n; ++i) {
      term /= Rational(factorial(2 * d[i] + 1));
      if (d[i] != 0) term *= pow_rational(lengths[i] / 2, 2L * d[i]);
    }
    if (term != 0) acc[pr.pi_power] += term;
  }
  return acc;
}

Rational c_coefficient(const VolumePolynomial& poly, const MultiIndex& d) {
  auto it = poly.tau.find(d);
  if (it == poly.tau.end()) return Rational(0);
  return c_from_tau(d, it->second.value);
}

// ---------------------------------------------------------------------------
// Lemma functionals

namespace {

// sinh(x/2)/(x/2) with the limit value 1 at x = 0.
Real sinh_half_ratio(const Real& x) {
  if (x == 0) return Real(1);
  Real h = x / 2;
  return sinh(h) / h;
}

}  // namespace

Real sinh_ratio_margin(const VolumePolynomial& poly, const std::vector<Real>& lengths) {
  ensure_precision();
  if (lengths.size() != poly.n) {
    throw Error(ErrorCode::precondition, "sinh_ratio_margin: arity mismatch");
  }
  Real prod = 1;
  for (const Real& x : lengths) prod *= sinh_half_ratio(x);
  Real vratio = evaluate(poly, lengths) / poly.constant_term().to_real();
  return prod - vratio;
}

Real two_slot_residual(const VolumeTable& table, unsigned g, unsigned n,
                       const Real& x1, const Real& x2) {
  ensure_precision();
  if (n < 2 || g < 1) {
    throw Error(ErrorCode::precondition, "two_slot_residual: need g >= 1 and n >= 2");
  }
  if (x1 <= 0 || x2 <= 0) {
    throw Error(ErrorCode::precondition, "two_slot_residual: lengths must be positive");
  }
  const VolumePolynomial& poly = table.at(g, n);
  std::vector<Real> lengths(n, Real(0));
  lengths[n - 2] = x1;
  lengths[n - 1] = x2;
  Real vratio = evaluate(poly, lengths) / poly.constant_term().to_real();
  Real base = sinh_half_ratio(x1) * sinh_half_ratio(x2);
  Real resid = abs(vratio / base - 1);
  Real scale = Real(n) * (x1 * x1 + x2 * x2) / Real(g);
  return resid / scale;
}

Real mz_ratio(const VolumeTable& table, unsigned g, unsigned n) {
  ensure_precision();
  if (2 * static_cast<long>(g) - 3 + static_cast<long>(n) < 1) {
    throw Error(ErrorCode::precondition, "mz_ratio: need 2g-3+n >= 1");
  }
  unsigned e = 2 * g - 3 + n;
  const VolumePolynomial& poly = table.at(g, n);
  Real denom = Real(factorial(e));
  Real fourpi2 = pi_real();
  fourpi2 *= fourpi2;
  fourpi2 *= 4;
  denom *= pow(fourpi2, static_cast<int>(e));
  return poly.constant_term().to_real() * sqrt(Real(g)) / denom;
}

SeparatingSum separating_sum(const VolumeTable& table, unsigned g, unsigned n) {
  ensure_precision();
  const VolumePolynomial& whole = table.at(g, n);
  Real total = 0;
  long hi = 2 * static_cast<long>(g) + n - 2;
  for (unsigned i = 0; i <= g; ++i) {
    for (unsigned j = 0; j <= n; ++j) {
      long chi = 2 * static_cast<long>(i) + j;
      if (chi < 2 || chi > hi) continue;
      const VolumePolynomial& left = table.at(i, j + 1);
      const VolumePolynomial& right = table.at(g - i, n - j + 1);
      Real term = Real(binomial(n, j));
      term *= left.constant_term().to_real();
      term *= right.constant_term().to_real();
      total += term;
    }
  }
  total /= whole.constant_term().to_real();
  SeparatingSum out;
  out.sum = total;
  out.ratio = total * Real(g) / Real(1 + n * n);
  return out;
}

std::vector<CuspReductionViolation> check_cusp_reduction(const VolumeTable& table) {
  ensure_precision();
  std::vector<CuspReductionViolation> out;
  for (const auto& [key, poly] : table.entries) {
    unsigned a = key.first, b;
    if (key.second < 2) continue;
    b = key.second - 2;
    if (2 * a + b < 1) continue;
    auto other = table.entries.find({a + 1, b});
    if (other == table.entries.end()) continue;
    Real lhs = poly.constant_term().to_real();
    Real rhs = other->second.constant_term().to_real();
    if (lhs > rhs) {
      out.push_back({a, b, lhs / rhs});
    }
  }
  return out;
}

}  // namespace wpgap::volumes
