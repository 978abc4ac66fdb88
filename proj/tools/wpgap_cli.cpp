// wpgap: command-line front end for the Weil-Petersson volume / spectral-gap
// tool chain.
//
// Subcommand tree:
//   volumes {gen, verify, eval, sep-sum, mz-ratio}
//   testfn  {table, abel-check, ceps}
//   trace   {certify, positivity}
//   bound   {total, sweep}
//   gap     {value, tail, sweep}
//
// Reports go to standard output (or -o FILE) as JSON or CSV with stable field
// order; identical invocations produce identical bytes.  Failures print one
// machine-readable JSON object {"error": <code name>, "message": ...} on
// standard error and exit with the distinct per-class code from errors.hpp.
//
// The environment variable WPGAP_PRECISION sets the working precision of the
// exact-evaluation layer in decimal digits (clamped to [30, 10000]; default
// 50).  All analysis constants live in one JSON config table (--constants,
// individually overridable) and are echoed into every report they feed.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wpgap/constants.hpp"
#include "wpgap/errors.hpp"
#include "wpgap/expectation.hpp"
#include "wpgap/gapbound.hpp"
#include "wpgap/real.hpp"
#include "wpgap/testfunctions.hpp"
#include "wpgap/trace.hpp"
#include "wpgap/volumes.hpp"

namespace {

using wpgap::ConstantsTable;
using wpgap::Error;
using wpgap::ErrorCode;
using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::file_not_found, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out)
    throw Error(ErrorCode::file_not_found,
                "cannot open output file: " + out_path);
  out << text;
}

// One canonical text form per double (shortest round-trip), shared by the
// JSON and CSV emitters so the two formats never disagree on a digit.
std::string num(double x) { return nlohmann::json(x).dump(); }

wpgap::volumes::VolumeTable load_table(const std::string& path) {
  return wpgap::volumes::parse_volume_table(read_file(path));
}

wpgap::trace::LengthSpectrum load_spectrum(const std::string& path,
                                           bool oriented) {
  return wpgap::trace::parse_length_spectrum(read_file(path), oriented);
}

wpgap::expectation::BoundMode parse_mode(const std::string& mode) {
  if (mode == "exact") return wpgap::expectation::BoundMode::exact;
  if (mode == "stirling") return wpgap::expectation::BoundMode::stirling;
  throw Error(ErrorCode::usage, "mode must be 'exact' or 'stirling'");
}

std::string term_report_csv(const wpgap::expectation::TermReport& r) {
  std::ostringstream out;
  out << "g,n,T,eps1,mode,term_a,term_b,term_b_expectation,term_c,term_d,"
         "total,C_eps,nu,c1,beta,C_A3,C_short\n";
  out << r.g << ',' << r.n << ',' << num(r.T) << ',' << num(r.eps1) << ','
      << (r.mode == wpgap::expectation::BoundMode::exact ? "exact" : "stirling")
      << ',' << num(r.term_a) << ',' << num(r.term_b) << ','
      << num(r.term_b_expectation) << ',' << num(r.term_c) << ','
      << num(r.term_d) << ',' << num(r.total) << ',' << num(r.constants.C_eps)
      << ',' << num(r.constants.nu) << ',' << num(r.constants.c1) << ','
      << num(r.constants.beta) << ',' << num(r.constants.C_A3) << ','
      << num(r.constants.C_short) << '\n';
  return out.str();
}

std::string certificate_csv(const wpgap::trace::GapCertificate& c) {
  std::ostringstream out;
  out << "verdict,lambda,s_max,g,n,T,geometric,fourier_half,R,threshold,eps,"
         "C_eps,nu\n";
  out << (c.verdict ==
                  wpgap::trace::GapCertificate::Verdict::above_three_sixteenths
              ? "AboveThreeSixteenths"
              : "LowerBound")
      << ',' << num(c.lambda) << ',' << num(c.s_max) << ',' << c.g << ','
      << c.n << ',' << num(c.T) << ',' << num(c.geometric) << ','
      << num(c.fourier_half) << ',' << num(c.R) << ',' << num(c.threshold)
      << ',' << num(c.constants.eps) << ',' << num(c.constants.C_eps) << ','
      << num(c.constants.nu) << '\n';
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "wpgap: exact Weil-Petersson volume polynomials and the numerical "
      "spectral-gap pipeline built on them (test-function transforms, "
      "trace-inequality certificates, expectation bounds, tail envelopes).\n"
      "WPGAP_PRECISION sets the exact-evaluation working precision in "
      "decimal digits (default 50, clamped to [30, 10000])."};
  app.require_subcommand(1);
  app.fallthrough();  // global options (--constants, overrides) may follow
                      // the subcommand

  // ---- global constants table -------------------------------------------
  ConstantsTable consts;  // documented defaults
  std::string constants_path;
  app.add_option("--constants", constants_path,
                 "JSON file with the named-constants table (single audit "
                 "point for every existence-only constant)");
  double o_C_eps = 0, o_nu = 0, o_c1 = 0, o_beta = 0, o_C_A3 = 0, o_C_short = 0;
  auto* f_C_eps = app.add_option("--C-eps", o_C_eps, "override C_eps");
  auto* f_nu = app.add_option("--nu-const", o_nu, "override nu");
  auto* f_c1 = app.add_option("--c1", o_c1, "override c1(eps1)");
  auto* f_beta = app.add_option("--beta", o_beta, "override beta");
  auto* f_C_A3 = app.add_option("--C-A3", o_C_A3, "override C_A3");
  auto* f_C_short = app.add_option("--C-short", o_C_short, "override C_short");
  auto resolve_constants = [&]() {
    if (!constants_path.empty())
      consts = ConstantsTable::from_json(read_file(constants_path));
    if (f_C_eps->count()) consts.C_eps = o_C_eps;
    if (f_nu->count()) consts.nu = o_nu;
    if (f_c1->count()) consts.c1 = o_c1;
    if (f_beta->count()) consts.beta = o_beta;
    if (f_C_A3->count()) consts.C_A3 = o_C_A3;
    if (f_C_short->count()) consts.C_short = o_C_short;
  };

  // ---- volumes ------------------------------------------------------------
  auto* volumes = app.add_subcommand("volumes",
                                     "exact volume polynomial tables");
  {
    auto* gen = volumes->add_subcommand(
        "gen", "generate the table of all stable (g,n) in a rectangle");
    auto gmax = std::make_shared<unsigned>(4);
    auto nmax = std::make_shared<unsigned>(4);
    auto cap = std::make_shared<unsigned>(16);
    auto out = std::make_shared<std::string>();
    gen->add_option("--gmax", *gmax, "largest genus")->required();
    gen->add_option("--nmax", *nmax, "largest cusp count")->required();
    gen->add_option("--cap", *cap, "complexity cap on 3g-3+n (default 16)");
    gen->add_option("-o,--output", *out, "output path (default stdout)");
    gen->callback([=] {
      emit(wpgap::volumes::serialize(
               wpgap::volumes::generate_volumes(*gmax, *nmax, *cap)),
           *out);
    });

    auto* verify = volumes->add_subcommand(
        "verify",
        "structural invariants plus seeded sinh-ratio margin draws");
    auto table_path = std::make_shared<std::string>();
    auto seed = std::make_shared<std::uint64_t>(0);
    auto draws = std::make_shared<unsigned>(25);
    auto out_v = std::make_shared<std::string>();
    verify->add_option("--table", *table_path, "volume table (.wpv)")
        ->required();
    verify->add_option("--seed", *seed, "PRNG seed for the margin draws");
    verify->add_option("--draws", *draws, "length vectors per entry");
    verify->add_option("-o,--output", *out_v, "output path (default stdout)");
    verify->callback([=] {
      const auto table = load_table(*table_path);
      for (const auto& [key, poly] : table.entries)
        wpgap::volumes::check_polynomial(poly);
      std::mt19937_64 rng(*seed);
      double min_margin = std::numeric_limits<double>::infinity();
      unsigned total_draws = 0;
      for (const auto& [key, poly] : table.entries) {
        if (poly.n == 0) continue;  // no boundary lengths to draw
        for (unsigned k = 0; k < *draws; ++k) {
          std::vector<wpgap::Real> lengths(poly.n);
          for (auto& L : lengths)
            L = 10.0 * static_cast<double>(rng() >> 11) * 0x1p-53;
          const double margin =
              wpgap::volumes::sinh_ratio_margin(poly, lengths)
                  .convert_to<double>();
          ++total_draws;
          if (margin < min_margin) min_margin = margin;
          if (margin < 0.0) {
            std::ostringstream msg;
            msg << "sinh-ratio margin negative at (g,n)=(" << key.first << ","
                << key.second << "): " << margin;
            throw Error(ErrorCode::parse_error, msg.str());
          }
        }
      }
      ordered_json j;
      j["table"] = *table_path;
      j["entries"] = table.entries.size();
      j["structural_checks"] = "pass";
      j["seed"] = *seed;
      j["draws_per_entry"] = *draws;
      j["margin_draws"] = total_draws;
      j["min_sinh_margin"] = min_margin;
      emit(j.dump(2) + "\n", *out_v);
    });

    auto* eval = volumes->add_subcommand(
        "eval", "evaluate V_{g,n} at a boundary-length vector");
    auto t_eval = std::make_shared<std::string>();
    auto ge = std::make_shared<unsigned>(0);
    auto ne = std::make_shared<unsigned>(0);
    auto lengths = std::make_shared<std::vector<double>>();
    auto out_e = std::make_shared<std::string>();
    eval->add_option("--table", *t_eval, "volume table (.wpv)")->required();
    eval->add_option("-g", *ge, "genus")->required();
    eval->add_option("-n", *ne, "cusp count")->required();
    eval->add_option("--lengths", *lengths,
                     "comma-separated boundary lengths (n values; "
                     "default all zero)")
        ->delimiter(',');
    eval->add_option("-o,--output", *out_e, "output path (default stdout)");
    eval->callback([=] {
      const auto table = load_table(*t_eval);
      const auto& poly = table.at(*ge, *ne);
      std::vector<wpgap::Real> L(*ne, wpgap::Real(0));
      if (!lengths->empty()) {
        if (lengths->size() != *ne)
          throw Error(ErrorCode::precondition,
                      "length vector arity does not match n");
        for (size_t i = 0; i < L.size(); ++i) L[i] = (*lengths)[i];
      }
      const wpgap::Real value = wpgap::volumes::evaluate(poly, L);
      ordered_json j;
      j["g"] = *ge;
      j["n"] = *ne;
      j["lengths"] = *lengths;
      j["precision_digits"] = wpgap::default_precision_digits();
      j["value"] = value.str(wpgap::default_precision_digits());
      j["value_double"] = value.convert_to<double>();
      emit(j.dump(2) + "\n", *out_e);
    });

    auto* sep = volumes->add_subcommand(
        "sep-sum", "separating one-curve volume sum and its (1+n^2)/g ratio");
    auto t_sep = std::make_shared<std::string>();
    auto gs = std::make_shared<unsigned>(0);
    auto ns = std::make_shared<unsigned>(0);
    auto out_s = std::make_shared<std::string>();
    sep->add_option("--table", *t_sep, "volume table (.wpv)")->required();
    sep->add_option("-g", *gs, "genus")->required();
    sep->add_option("-n", *ns, "cusp count")->required();
    sep->add_option("-o,--output", *out_s, "output path (default stdout)");
    sep->callback([=] {
      const auto table = load_table(*t_sep);
      const auto r = wpgap::volumes::separating_sum(table, *gs, *ns);
      ordered_json j;
      j["g"] = *gs;
      j["n"] = *ns;
      j["sum"] = r.sum.convert_to<double>();
      j["ratio"] = r.ratio.convert_to<double>();
      emit(j.dump(2) + "\n", *out_s);
    });

    auto* mz = volumes->add_subcommand(
        "mz-ratio", "large-genus ratio V_{g,n} sqrt(g)/((2g-3+n)! (4pi^2)^{2g-3+n})");
    auto t_mz = std::make_shared<std::string>();
    auto gm = std::make_shared<unsigned>(0);
    auto nm = std::make_shared<unsigned>(0);
    auto out_m = std::make_shared<std::string>();
    mz->add_option("--table", *t_mz, "volume table (.wpv)")->required();
    mz->add_option("-g", *gm, "genus")->required();
    mz->add_option("-n", *nm, "cusp count")->required();
    mz->add_option("-o,--output", *out_m, "output path (default stdout)");
    mz->callback([=] {
      const auto table = load_table(*t_mz);
      ordered_json j;
      j["g"] = *gm;
      j["n"] = *nm;
      j["ratio"] = wpgap::volumes::mz_ratio(table, *gm, *nm).convert_to<double>();
      emit(j.dump(2) + "\n", *out_m);
    });
  }

  // ---- testfn -------------------------------------------------------------
  auto* testfn = app.add_subcommand(
      "testfn", "the compactly supported test-function family f_T");
  {
    auto add_quad = [](CLI::App* cmd, std::shared_ptr<wpgap::testfn::QuadratureConfig> q) {
      cmd->add_option("--rel-tol", q->rel_tol, "quadrature relative tolerance");
      cmd->add_option("--abs-tol", q->abs_tol, "quadrature absolute tolerance");
      cmd->add_option("--max-subdiv", q->max_subdivisions,
                      "adaptive subdivision depth");
    };

    auto* table = testfn->add_subcommand(
        "table", "CSV samples of f_T, f_hat_T (both axes), and k_T");
    auto Tt = std::make_shared<double>(8.0);
    auto pts = std::make_shared<unsigned>(33);
    auto rmax = std::make_shared<double>(4.0);
    auto qt = std::make_shared<wpgap::testfn::QuadratureConfig>();
    auto out_t = std::make_shared<std::string>();
    table->add_option("-T", *Tt, "support half-width, T > 1")->required();
    table->add_option("--points", *pts, "samples per block (default 33)");
    table->add_option("--rmax", *rmax, "real-axis extent for f_hat_T");
    add_quad(table, qt);
    table->add_option("-o,--output", *out_t, "output path (default stdout)");
    table->callback([=] {
      wpgap::testfn::TestFunctionFamily fam(*Tt, *qt);
      const unsigned K = std::max(2u, *pts);
      std::ostringstream out;
      out << "# test-function family table: T=" << num(*Tt)
          << " rel_tol=" << num(qt->rel_tol) << " abs_tol=" << num(qt->abs_tol)
          << "\nkind,arg,value\n";
      for (unsigned i = 0; i < K; ++i) {
        const double x = *Tt * i / (K - 1);
        out << "f," << num(x) << ',' << num(wpgap::testfn::fT_eval(fam, x))
            << '\n';
      }
      for (unsigned i = 0; i < K; ++i) {
        const double t = 0.5 * i / (K - 1);
        out << "fourier_imag," << num(t) << ','
            << num(wpgap::testfn::fourier_fT(
                   fam, wpgap::testfn::SpectralParameter::imaginary(t)))
            << '\n';
      }
      for (unsigned i = 0; i < K; ++i) {
        const double r = *rmax * i / (K - 1);
        out << "fourier_real," << num(r) << ','
            << num(wpgap::testfn::fourier_fT(
                   fam, wpgap::testfn::SpectralParameter::real(r)))
            << '\n';
      }
      for (unsigned i = 0; i < K; ++i) {
        const double rho = *Tt * i / (K - 1);
        out << "kernel," << num(rho) << ','
            << num(wpgap::testfn::inverse_abel_kT(fam, rho)) << '\n';
      }
      emit(out.str(), *out_t);
    });

    auto* abel = testfn->add_subcommand(
        "abel-check",
        "round-trip checks: forward Abel at 0 vs f_1(0), k_T(0) both routes");
    auto Ta = std::make_shared<double>(8.0);
    auto qa = std::make_shared<wpgap::testfn::QuadratureConfig>();
    auto out_a = std::make_shared<std::string>();
    abel->add_option("-T", *Ta, "support half-width, T > 1")->required();
    add_quad(abel, qa);
    abel->add_option("-o,--output", *out_a, "output path (default stdout)");
    abel->callback([=] {
      wpgap::testfn::TestFunctionFamily fam(*Ta, *qa);
      const double f10 = wpgap::testfn::f1_eval(0.0);
      const double fwd = wpgap::testfn::abel_forward_at_zero(fam);
      const double k0d = wpgap::testfn::inverse_abel_kT(fam, 0.0);
      const double k0s = wpgap::testfn::k_zero_spectral(fam);
      ordered_json j;
      j["T"] = *Ta;
      j["f1_zero"] = f10;
      j["abel_forward_at_zero"] = fwd;
      j["forward_rel_err"] = std::abs(fwd - f10) / f10;
      j["k0_direct"] = k0d;
      j["k0_spectral"] = k0s;
      j["k0_rel_err"] = std::abs(k0d - k0s) / k0d;
      emit(j.dump(2) + "\n", *out_a);
    });

    auto* ceps = testfn->add_subcommand(
        "ceps", "empirical lower envelope for C_eps in f_hat_T(it) >= T C_eps e^{T(1-eps)t}");
    auto eps = std::make_shared<double>(0.1);
    auto Tgrid = std::make_shared<std::vector<double>>(
        std::vector<double>{8.0, 16.0, 28.0});
    auto tpts = std::make_shared<unsigned>(32);
    auto qc = std::make_shared<wpgap::testfn::QuadratureConfig>();
    auto out_c = std::make_shared<std::string>();
    ceps->add_option("--eps", *eps, "eps in (0,1)");
    ceps->add_option("--T-grid", *Tgrid, "comma-separated T values")
        ->delimiter(',');
    ceps->add_option("--t-points", *tpts, "spectral grid size on (0, 1/2]");
    add_quad(ceps, qc);
    ceps->add_option("-o,--output", *out_c, "output path (default stdout)");
    ceps->callback([=] {
      if (*tpts < 1)
        throw Error(ErrorCode::precondition, "t-points must be >= 1");
      std::vector<double> t_grid;
      for (unsigned j = 1; j <= *tpts; ++j) t_grid.push_back(0.5 * j / *tpts);
      const double c =
          wpgap::testfn::empirical_C_eps(*Tgrid, *eps, t_grid, *qc);
      ordered_json j;
      j["eps"] = *eps;
      j["T_grid"] = *Tgrid;
      j["t_points"] = *tpts;
      j["C_eps"] = c;
      emit(j.dump(2) + "\n", *out_c);
    });
  }

  // ---- trace ----------------------------------------------------------------
  auto* trace = app.add_subcommand(
      "trace", "trace-inequality certificates over a length spectrum");
  {
    auto* certify = trace->add_subcommand(
        "certify", "first-eigenvalue lower-bound certificate at T = 4 log g");
    auto spath = std::make_shared<std::string>();
    auto oriented = std::make_shared<bool>(true);
    auto gc = std::make_shared<unsigned>(2);
    auto nc = std::make_shared<unsigned>(1);
    auto tc = std::make_shared<wpgap::trace::TraceConstants>();
    auto fmt = std::make_shared<std::string>("json");
    auto out_c = std::make_shared<std::string>();
    certify->add_option("--spectrum", *spath,
                        "length spectrum CSV (length,multiplicity)")
        ->required();
    certify->add_flag("--oriented,!--unoriented", *oriented,
                      "whether entries already count both orientations");
    certify->add_option("-g", *gc, "genus, >= 2")->required();
    certify->add_option("-n", *nc, "cusp count")->required();
    certify->add_option("--eps", tc->eps, "trace eps in (0,1)");
    certify->add_option("--C", tc->C_eps, "trace-inequality constant C(eps)");
    certify->add_option("--nu", tc->nu, "O(ng) absorber, >= 0");
    certify->add_option("--format", *fmt, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    certify->add_option("-o,--output", *out_c, "output path (default stdout)");
    certify->callback([=] {
      const auto spec = load_spectrum(*spath, *oriented);
      const auto cert =
          wpgap::trace::certify(spec, {*gc, *nc}, *tc);
      emit(*fmt == "json" ? wpgap::trace::to_json(cert)
                          : certificate_csv(cert),
           *out_c);
    });

    auto* positivity = trace->add_subcommand(
        "positivity",
        "R = H - f_hat_T(i/2) + nu n g for a chosen nu (negative = too small)");
    auto sp = std::make_shared<std::string>();
    auto orp = std::make_shared<bool>(true);
    auto gp = std::make_shared<unsigned>(2);
    auto np = std::make_shared<unsigned>(1);
    auto nup = std::make_shared<double>(1.0);
    auto out_p = std::make_shared<std::string>();
    positivity->add_option("--spectrum", *sp, "length spectrum CSV")
        ->required();
    positivity->add_flag("--oriented,!--unoriented", *orp,
                         "whether entries already count both orientations");
    positivity->add_option("-g", *gp, "genus, >= 2")->required();
    positivity->add_option("-n", *np, "cusp count")->required();
    positivity->add_option("--nu", *nup, "O(ng) absorber to validate");
    positivity->add_option("-o,--output", *out_p,
                           "output path (default stdout)");
    positivity->callback([=] {
      const auto spec = load_spectrum(*sp, *orp);
      const wpgap::trace::SurfaceTopology topo{*gp, *np};
      topo.validate();
      const double T = 4.0 * std::log(static_cast<double>(*gp));
      wpgap::testfn::TestFunctionFamily fam(T);
      const double H = wpgap::trace::geometric_side(spec, fam);
      const double fh = wpgap::testfn::fourier_fT(
          fam, wpgap::testfn::SpectralParameter::imaginary(0.5));
      const double R = wpgap::trace::positivity_defect(spec, topo, fam, *nup);
      ordered_json j;
      j["g"] = *gp;
      j["n"] = *np;
      j["T"] = T;
      j["nu"] = *nup;
      j["geometric"] = H;
      j["fourier_half"] = fh;
      j["R"] = R;
      j["nu_valid"] = R >= 0.0;
      emit(j.dump(2) + "\n", *out_p);
    });
  }

  // ---- bound ----------------------------------------------------------------
  auto* bound = app.add_subcommand(
      "bound", "four-term expectation bound for the orbital sum");
  {
    auto* total = bound->add_subcommand("total", "one TermReport at T = 4 log g");
    auto tb = std::make_shared<std::string>();
    auto gb = std::make_shared<unsigned>(2);
    auto nb = std::make_shared<unsigned>(1);
    auto e1 = std::make_shared<double>(0.1);
    auto mode = std::make_shared<std::string>("exact");
    auto fmt = std::make_shared<std::string>("json");
    auto out_b = std::make_shared<std::string>();
    total->add_option("--table", *tb,
                      "volume table (.wpv); required for --mode exact "
                      "(stirling mode never reads volumes)");
    total->add_option("-g", *gb, "genus, >= 2")->required();
    total->add_option("-n", *nb, "cusp count")->required();
    total->add_option("--eps1", *e1, "term-(d) eps1 in (0,1)");
    total->add_option("--mode", *mode, "exact | stirling")
        ->check(CLI::IsMember({"exact", "stirling"}));
    total->add_option("--format", *fmt, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    total->add_option("-o,--output", *out_b, "output path (default stdout)");
    total->callback([=, &consts, &resolve_constants] {
      resolve_constants();
      if (tb->empty() && *mode == "exact")
        throw CLI::ValidationError("--table", "required when --mode exact");
      const auto table =
          tb->empty() ? wpgap::volumes::VolumeTable{} : load_table(*tb);
      const auto report = wpgap::expectation::total_bound(
          table, *gb, *nb, *e1, consts, parse_mode(*mode));
      emit(*fmt == "json" ? wpgap::expectation::to_json(report)
                          : term_report_csv(report),
           *out_b);
    });

    auto* sweep = bound->add_subcommand(
        "sweep", "TermReport rows over a genus range (CSV)");
    auto ts = std::make_shared<std::string>();
    auto gmin = std::make_shared<unsigned>(2);
    auto gmax = std::make_shared<unsigned>(4);
    auto ns = std::make_shared<unsigned>(1);
    auto e1s = std::make_shared<double>(0.1);
    auto modes = std::make_shared<std::string>("stirling");
    auto out_s = std::make_shared<std::string>();
    sweep->add_option("--table", *ts,
                      "volume table (.wpv); required for --mode exact "
                      "(stirling mode never reads volumes)");
    sweep->add_option("--gmin", *gmin, "first genus (default 2)");
    sweep->add_option("--gmax", *gmax, "last genus")->required();
    sweep->add_option("-n", *ns, "cusp count")->required();
    sweep->add_option("--eps1", *e1s, "term-(d) eps1 in (0,1)");
    sweep->add_option("--mode", *modes, "exact | stirling")
        ->check(CLI::IsMember({"exact", "stirling"}));
    sweep->add_option("-o,--output", *out_s, "output path (default stdout)");
    sweep->callback([=, &consts, &resolve_constants] {
      resolve_constants();
      if (*gmin < 2 || *gmax < *gmin)
        throw Error(ErrorCode::precondition,
                    "sweep requires 2 <= gmin <= gmax");
      if (ts->empty() && *modes == "exact")
        throw CLI::ValidationError("--table", "required when --mode exact");
      const auto table =
          ts->empty() ? wpgap::volumes::VolumeTable{} : load_table(*ts);
      const auto m = parse_mode(*modes);
      std::ostringstream out;
      out << "g,n,T,eps1,mode,term_a,term_b,term_b_expectation,term_c,"
             "term_d,total\n";
      for (unsigned g = *gmin; g <= *gmax; ++g) {
        const auto r =
            wpgap::expectation::total_bound(table, g, *ns, *e1s, consts, m);
        out << r.g << ',' << r.n << ',' << num(r.T) << ',' << num(r.eps1)
            << ',' << *modes << ',' << num(r.term_a) << ',' << num(r.term_b)
            << ',' << num(r.term_b_expectation) << ',' << num(r.term_c) << ','
            << num(r.term_d) << ',' << num(r.total) << '\n';
      }
      emit(out.str(), *out_s);
    });
  }

  // ---- gap ------------------------------------------------------------------
  auto* gap = app.add_subcommand(
      "gap", "final probability-bound assembly on the parameter wedge");
  {
    auto* value = gap->add_subcommand(
        "value", "gap value 1/4 - ((2 alpha + 1)/4)^2 - eps");
    auto av = std::make_shared<double>(0.0);
    auto ev = std::make_shared<double>(0.0);
    auto out_v = std::make_shared<std::string>();
    value->add_option("--alpha", *av, "cusp exponent in [0, 1/2)");
    value->add_option("--eps", *ev, "slack in [0, min(1/4, 1/2 - alpha))");
    value->add_option("-o,--output", *out_v, "output path (default stdout)");
    value->callback([=, &consts, &resolve_constants] {
      resolve_constants();
      const wpgap::gapbound::GapParameters p{*av, *ev, consts.beta};
      ordered_json j;
      j["alpha"] = *av;
      j["eps"] = *ev;
      j["gap"] = wpgap::gapbound::gap_value(p);
      emit(j.dump(2) + "\n", *out_v);
    });

    auto* tail = gap->add_subcommand(
        "tail", "Markov threshold and polynomial tail envelope at one genus");
    auto gt = std::make_shared<double>(0.0);
    auto nt = std::make_shared<unsigned long>(1);
    auto et = std::make_shared<double>(0.1);
    auto nsq = std::make_shared<bool>(false);
    auto out_t = std::make_shared<std::string>();
    tail->add_option("-g", *gt, "genus, >= 2 (scientific notation accepted)")
        ->required();
    tail->add_option("-n", *nt, "cusp count, >= 1");
    tail->add_option("--eps", *et, "slack, > 0");
    tail->add_flag("--n-squared", *nsq,
                   "use the mid-proof log(g)^6/n^2 variant");
    tail->add_option("-o,--output", *out_t, "output path (default stdout)");
    tail->callback([=, &consts, &resolve_constants] {
      resolve_constants();
      const auto g = static_cast<unsigned long>(*gt);
      ordered_json j;
      j["g"] = g;
      j["n"] = *nt;
      j["eps"] = *et;
      j["beta"] = consts.beta;
      j["n_squared"] = *nsq;
      j["threshold"] = wpgap::gapbound::markov_threshold(g, *nt, *et);
      j["tail"] = wpgap::gapbound::tail_bound(g, *nt, *et, consts.beta, *nsq);
      emit(j.dump(2) + "\n", *out_t);
    });

    auto* sweep = gap->add_subcommand(
        "sweep", "decade sweep of gap/threshold/tail with n = floor(g^alpha)");
    auto as = std::make_shared<double>(0.0);
    auto es = std::make_shared<double>(0.1);
    auto gms = std::make_shared<double>(1e6);
    auto out_s = std::make_shared<std::string>();
    sweep->add_option("--alpha", *as, "cusp exponent in [0, 1/2)");
    sweep->add_option("--eps", *es, "slack, > 0");
    sweep->add_option("--gmax", *gms,
                      "largest genus (scientific notation accepted)")
        ->required();
    sweep->add_option("-o,--output", *out_s, "output path (default stdout)");
    sweep->callback([=, &consts, &resolve_constants] {
      resolve_constants();
      const wpgap::gapbound::GapParameters p{*as, *es, consts.beta};
      const auto rows = wpgap::gapbound::tail_sweep(
          p, static_cast<unsigned long>(*gms));
      std::ostringstream out;
      out << "g,n,gap,threshold,tail\n";
      for (const auto& r : rows)
        out << r.g << ',' << r.n << ',' << num(r.gap) << ','
            << num(r.threshold) << ',' << num(r.tail) << '\n';
      emit(out.str(), *out_s);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    ordered_json j;
    j["error"] = "usage";
    j["message"] = e.what();
    std::cerr << j.dump(2) << "\n";
    return static_cast<int>(ErrorCode::usage);
  } catch (const Error& e) {
    ordered_json j;
    j["error"] = wpgap::error_code_name(e.code());
    j["message"] = e.what();
    std::cerr << j.dump(2) << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    ordered_json j;
    j["error"] = "internal";
    j["message"] = e.what();
    std::cerr << j.dump(2) << "\n";
    return static_cast<int>(ErrorCode::internal);
  }
  return 0;
}
