#include "wpgap/trace.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wpgap/errors.hpp"

namespace wpgap::trace {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Trims ASCII whitespace from both ends.
std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void csv_fail(unsigned line, const std::string& what) {
  std::ostringstream msg;
  msg << "length spectrum line " << line << ": " << what;
  throw Error(ErrorCode::parse_error, msg.str());
}

}  // namespace

void SurfaceTopology::validate() const {
  // n = 0 expresses degenerate cusp-free checks (e.g. the parabolic term
  // vanishing); the genus floor is what every certificate route needs.
  if (g < 2)
    throw Error(ErrorCode::precondition,
                "surface topology requires genus g >= 2");
}

double SurfaceTopology::area() const {
  return 2.0 * kPi * (2.0 * static_cast<double>(g) - 2.0 + n);
}

LengthSpectrum parse_length_spectrum(std::string_view text, bool oriented) {
  LengthSpectrum spec;
  spec.oriented = oriented;
  unsigned line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = (eol == std::string_view::npos) ? std::string_view{}
                                           : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "length,multiplicity")
        csv_fail(line_no, "expected header 'length,multiplicity'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos)
      csv_fail(line_no, "expected 'length,multiplicity' row");
    const std::string len_text{trim(line.substr(0, comma))};
    const std::string mult_text{trim(line.substr(comma + 1))};
    double length = 0;
    unsigned long long mult = 0;
    try {
      size_t used = 0;
      length = std::stod(len_text, &used);
      if (used != len_text.size()) throw std::invalid_argument(len_text);
    } catch (const std::exception&) {
      csv_fail(line_no, "invalid length '" + len_text + "'");
    }
    try {
      size_t used = 0;
      mult = std::stoull(mult_text, &used);
      if (used != mult_text.size()) throw std::invalid_argument(mult_text);
    } catch (const std::exception&) {
      csv_fail(line_no, "invalid multiplicity '" + mult_text + "'");
    }
    if (!(length > 0.0)) csv_fail(line_no, "length must be positive");
    if (mult == 0) csv_fail(line_no, "multiplicity must be >= 1");
    spec.entries.push_back({length, mult});
  }
  if (!header_seen)
    throw Error(ErrorCode::parse_error,
                "length spectrum: missing 'length,multiplicity' header");
  std::sort(spec.entries.begin(), spec.entries.end(),
            [](const LengthSpectrumEntry& a, const LengthSpectrumEntry& b) {
              return a.length < b.length;
            });
  return spec;
}

double geometric_side(const LengthSpectrum& spec,
                      const testfn::TestFunctionFamily& fam) {
  const double T = fam.T;
  double sum = 0.0;
  for (const auto& entry : spec.entries) {
    const double l = entry.length;
    if (!(l > 0.0))
      throw Error(ErrorCode::precondition,
                  "length spectrum entries must have positive length");
    double term = 0.0;
    for (unsigned k = 1; k * l < T; ++k) {
      const double kl = k * l;
      term += l / (2.0 * std::sinh(0.5 * kl)) * testfn::fT_eval(fam, kl);
    }
    sum += term * static_cast<double>(entry.multiplicity);
  }
  // An unoriented listing names each primitive geodesic once; the orbital
  // sum runs over oriented primitives, i.e. each contributes twice.
  if (!spec.oriented) sum *= 2.0;
  return sum;
}

double identity_term(const SurfaceTopology& topo,
                     const testfn::TestFunctionFamily& fam) {
  // Vol(D) = 2 pi (2g - 2 + n) - n/2: the area of the fundamental domain
  // with the n horoball collars D_{a_i}(2) of area 1/2 removed.
  const double vol_d = topo.area() - 0.5 * static_cast<double>(topo.n);
  return vol_d * testfn::inverse_abel_kT(fam, 0.0);
}

double parabolic_bound(const SurfaceTopology& topo,
                       const testfn::TestFunctionFamily& fam) {
  return 2.0 * static_cast<double>(topo.n) * testfn::f1_eval(0.0) *
         (std::log(2.0 * std::sqrt(2.0)) + 0.5 * fam.T);
}

double positivity_defect(const LengthSpectrum& spec, const SurfaceTopology& topo,
                         const testfn::TestFunctionFamily& fam, double nu) {
  if (!(nu >= 0.0))
    throw Error(ErrorCode::precondition, "positivity defect requires nu >= 0");
  const double geom = geometric_side(spec, fam);
  const double fhalf =
      testfn::fourier_fT(fam, testfn::SpectralParameter::imaginary(0.5));
  return geom - fhalf +
         nu * static_cast<double>(topo.n) * static_cast<double>(topo.g);
}

GapCertificate certify(const LengthSpectrum& spec, const SurfaceTopology& topo,
                       const TraceConstants& consts) {
  if (topo.g < 2)
    throw Error(ErrorCode::precondition, "certify requires genus g >= 2");
  if (!(consts.eps > 0.0 && consts.eps < 1.0))
    throw Error(ErrorCode::precondition, "certify requires eps in (0, 1)");
  if (!(consts.C_eps > 0.0))
    throw Error(ErrorCode::precondition, "certify requires C_eps > 0");
  if (!(consts.nu >= 0.0))
    throw Error(ErrorCode::precondition, "certify requires nu >= 0");

  const double g = static_cast<double>(topo.g);
  const double logg = std::log(g);
  const double T = 4.0 * logg;
  testfn::TestFunctionFamily fam(T);

  GapCertificate cert;
  cert.g = topo.g;
  cert.n = topo.n;
  cert.T = T;
  cert.constants = consts;
  cert.geometric = geometric_side(spec, fam);
  cert.fourier_half =
      testfn::fourier_fT(fam, testfn::SpectralParameter::imaginary(0.5));
  cert.R = cert.geometric - cert.fourier_half +
           consts.nu * static_cast<double>(topo.n) * g;
  cert.threshold = consts.C_eps * logg * std::pow(g, 1.0 - consts.eps);

  if (cert.R < 0.0) {
    std::ostringstream msg;
    msg << "orbital sum R = " << cert.R
        << " is negative: nu = " << consts.nu
        << " does not dominate the Fourier term for this spectrum";
    throw Error(ErrorCode::invalid_nu, msg.str());
  }

  if (cert.R < cert.threshold) {
    // Contrapositive: lambda_1 <= 3/16 would force
    // R >= C_eps log(g) g^{4(1-eps) s} with s = sqrt(1/4 - lambda_1) >= 1/4.
    cert.verdict = GapCertificate::Verdict::above_three_sixteenths;
    cert.s_max = 0.25;
    cert.lambda = 3.0 / 16.0;
    return cert;
  }
  double s = std::log(cert.R / (consts.C_eps * logg)) /
             (4.0 * (1.0 - consts.eps) * logg);
  s = std::clamp(s, 0.25, 0.5);
  cert.verdict = GapCertificate::Verdict::lower_bound;
  cert.s_max = s;
  cert.lambda = 0.25 - s * s;
  return cert;
}

std::string to_json(const GapCertificate& cert) {
  nlohmann::ordered_json j;
  j["verdict"] = cert.verdict == GapCertificate::Verdict::above_three_sixteenths
                     ? "AboveThreeSixteenths"
                     : "LowerBound";
  j["lambda"] = cert.lambda;
  j["s_max"] = cert.s_max;
  j["g"] = cert.g;
  j["n"] = cert.n;
  j["T"] = cert.T;
  j["geometric"] = cert.geometric;
  j["fourier_half"] = cert.fourier_half;
  j["R"] = cert.R;
  j["threshold"] = cert.threshold;
  j["constants"] = {{"eps", cert.constants.eps},
                    {"C_eps", cert.constants.C_eps},
                    {"nu", cert.constants.nu}};
  return j.dump(2) + "\n";
}

}  // namespace wpgap::trace
