#include "odd/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "odd/approx.hpp"
#include "odd/bessel.hpp"
#include "odd/errors.hpp"
#include "odd/io.hpp"
#include "odd/kernels.hpp"
#include "odd/lab.hpp"
#include "odd/quantity.hpp"
#include "odd/smoothness.hpp"
#include "odd/verify.hpp"

namespace odd::cli {
namespace {

using grammar::format_number;
using nlohmann::json;

// Destination chosen by --out: a file when given, the command's stream otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidArgument("cannot write '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

// Resolved options of a subcommand, for embedding in reports.
json resolved_config(const CLI::App& sub) {
  json j = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      j[name] = r.size() == 1 ? json(r.front()) : json(r);
    } else if (!opt->get_default_str().empty()) {
      j[name] = opt->get_default_str();
    }
  }
  return j;
}

std::string fmt(double v) { return format_number(v); }

json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw InvalidArgument("unsupported --format '" + format + "'");
}

struct Common {
  int threads = 0;
  int verbosity = 0;
};

// --- gen ----------------------------------------------------------------------------

struct GenArgs {
  std::string model = "det";
  double r = 2.0;
  double c = 1.0;
  int W = 0;
  int dim = 1;
  std::uint64_t seed = 0;
  std::string out;
};

void add_gen(CLI::App& app, GenArgs& a) {
  app.add_option("--model", a.model, "det, phase or mag")->capture_default_str();
  app.add_option("--r", a.r, "decay exponent")->capture_default_str();
  app.add_option("--c", a.c, "amplitude")->capture_default_str();
  app.add_option("--W", a.W, "window half-width")->required();
  app.add_option("--dim", a.dim, "lattice dimension (1 or 2)")->capture_default_str();
  app.add_option("--seed", a.seed, "random seed")->capture_default_str();
  app.add_option("--out", a.out, "output matrix JSON (stdout when omitted)");
}

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  DecayModel m{parse_decay_kind(a.model), a.r, a.c, a.seed};
  const LatticeMatrix mat = generate(m, a.dim, a.W);
  std::ostringstream echo;
  echo << "model=" << to_string(m.kind) << " r=" << fmt(m.r) << " c=" << fmt(m.c) << " dim=" << a.dim
       << " W=" << a.W << " seed=" << m.seed << " diagonals=" << mat.stored_count() << '\n';
  if (a.out.empty()) {
    write_matrix_json(out, mat);
    err << echo.str();
  } else {
    save_matrix(a.out, mat);
    out << echo.str();
  }
  return kExitOk;
}

// --- norm ---------------------------------------------------------------------------

struct NormArgs {
  std::string in;
  std::vector<std::string> specs;
  std::string format = "text";
  std::string out;
};

void add_norm(CLI::App& app, NormArgs& a) {
  app.add_option("--in", a.in, "matrix file (.json or dense .csv)")->required();
  app.add_option("--spec", a.specs, "norm, besov:, approx: or bessel: spec (repeatable)")->required();
  app.add_option("--format", a.format, "text or json")->capture_default_str();
  app.add_option("--out", a.out, "output file");
}

int cmd_norm(const NormArgs& a, std::ostream& out) {
  check_format(a.format, {"text", "json"});
  std::vector<QuantitySpec> specs;
  for (const auto& s : a.specs) specs.push_back(parse_quantity(s));
  const LatticeMatrix m = load_matrix(a.in);
  Sink sink(a.out, out);
  json results = json::array();
  for (const auto& s : specs) {
    const double v = evaluate_quantity(m, s);
    if (a.format == "text")
      *sink << to_string(s) << '\t' << fmt(v) << '\n';
    else
      results.push_back({{"spec", to_string(s)}, {"value", number(v)}});
  }
  if (a.format == "json") *sink << json{{"input", a.in}, {"results", results}}.dump(2) << '\n';
  return kExitOk;
}

// --- besov --------------------------------------------------------------------------

struct BesovArgs {
  std::string in;
  std::string base = "jaffard:r=0";
  double r = 1.0;
  std::string p = "inf";
  std::string method = "all";
  int k = 0;
  int lmin = 0;
  int lmax = -1;
  int grid = 0;
  std::string format = "text";
  std::string out;
};

void add_besov(CLI::App& app, BesovArgs& a) {
  app.add_option("--in", a.in, "matrix file")->required();
  app.add_option("--base", a.base, "base norm spec")->capture_default_str();
  app.add_option("--r", a.r, "smoothness r > 0")->required();
  app.add_option("--p", a.p, "summability in [1, inf]")->capture_default_str();
  app.add_option("--method", a.method, "modulus, solidlp, philp or all")->capture_default_str();
  app.add_option("--k", a.k, "difference order (0: floor(r) + 1)")->capture_default_str();
  app.add_option("--lmin", a.lmin, "first dyadic level")->capture_default_str();
  app.add_option("--lmax", a.lmax, "last dyadic level (-1: automatic)")->capture_default_str();
  app.add_option("--grid", a.grid, "t-grid points per axis (0: automatic)")->capture_default_str();
  app.add_option("--format", a.format, "text or json")->capture_default_str();
  app.add_option("--out", a.out, "output file");
}

int cmd_besov(const BesovArgs& a, std::ostream& out) {
  check_format(a.format, {"text", "json"});
  BesovSpec spec{.base = parse_norm_spec(a.base),
                 .r = a.r,
                 .p = grammar::parse_number(a.p),
                 .order = a.k,
                 .level_min = a.lmin,
                 .level_max = a.lmax,
                 .grid = a.grid};
  std::vector<BesovSpec::Method> methods;
  if (a.method == "all") {
    methods = {BesovSpec::Method::Modulus, BesovSpec::Method::SolidLP, BesovSpec::Method::PhiLP};
    if (!spec.base.is_solid()) methods = {BesovSpec::Method::Modulus, BesovSpec::Method::PhiLP};
  } else {
    methods.push_back(parse_besov_spec("besov:base=op,r=1,method=" + a.method).method);
  }
  for (const auto m : methods) {
    spec.method = m;
    spec.validate();
  }
  const LatticeMatrix mat = load_matrix(a.in);
  Sink sink(a.out, out);
  json results = json::array();
  for (const auto m : methods) {
    spec.method = m;
    const double v = besov_norm(mat, spec);
    if (a.format == "text")
      *sink << spec.to_string() << '\t' << fmt(v) << '\n';
    else
      results.push_back({{"spec", spec.to_string()}, {"method", to_string(m)}, {"value", number(v)}});
  }
  if (a.format == "json") *sink << json{{"input", a.in}, {"results", results}}.dump(2) << '\n';
  return kExitOk;
}

// --- approx -------------------------------------------------------------------------

struct ApproxArgs {
  std::string in;
  std::string base = "jaffard:r=0";
  double r = 1.0;
  std::string p = "inf";
  std::string format = "text";
  std::string out;
};

void add_approx(CLI::App& app, ApproxArgs& a) {
  app.add_option("--in", a.in, "matrix file")->required();
  app.add_option("--base", a.base, "base norm spec")->capture_default_str();
  app.add_option("--r", a.r, "approximation order r > 0")->required();
  app.add_option("--p", a.p, "summability in [1, inf]")->capture_default_str();
  app.add_option("--format", a.format, "text, csv (error rows) or json")->capture_default_str();
  app.add_option("--out", a.out, "output file");
}

int cmd_approx(const ApproxArgs& a, std::ostream& out) {
  check_format(a.format, {"text", "csv", "json"});
  const NormSpec base = parse_norm_spec(a.base);
  const double p = grammar::parse_number(a.p);
  ApproxSpaceSpec{base, a.r, p}.validate();
  const LatticeMatrix mat = load_matrix(a.in);
  const auto errors = approx_errors(mat, base);
  const ApproxNorms norms = approx_space_norms(errors, a.r, p);
  const bool solid = base.is_solid();
  const double besov = solid && !mat.is_zero() ? besov_norm_solid_lp(mat, base, a.r, p) : 0.0;
  const int W = mat.window().half_width();
  Sink sink(a.out, out);
  if (a.format == "csv") {
    *sink << "W,spec,N,E\n";
    for (std::size_t n = 0; n < errors.size(); ++n)
      *sink << W << ",\"" << base.to_string() << "\"," << n << ',' << fmt(errors[n]) << '\n';
  } else if (a.format == "text") {
    *sink << "approx:base=" << base.to_string() << ",r=" << fmt(a.r) << ",p=" << fmt(p) << ",form=sum\t"
          << fmt(norms.integral_sum) << '\n';
    *sink << "approx:base=" << base.to_string() << ",r=" << fmt(a.r) << ",p=" << fmt(p) << ",form=dyadic\t"
          << fmt(norms.dyadic) << '\n';
    if (solid && besov > 0.0) *sink << "jackson_bernstein_ratio\t" << fmt(norms.integral_sum / besov) << '\n';
    *sink << "exact_errors\t" << (approx_error_is_exact(base) ? "yes" : "upper-bound") << '\n';
  } else {
    json rows = json::array();
    for (std::size_t n = 0; n < errors.size(); ++n) rows.push_back({{"N", n}, {"E", errors[n]}});
    json j{{"input", a.in},
           {"W", W},
           {"base", base.to_string()},
           {"r", a.r},
           {"p", number(p)},
           {"integral_sum", norms.integral_sum},
           {"dyadic", norms.dyadic},
           {"exact_errors", approx_error_is_exact(base)},
           {"errors", rows}};
    if (solid && besov > 0.0) j["jackson_bernstein_ratio"] = norms.integral_sum / besov;
    *sink << j.dump(2) << '\n';
  }
  return kExitOk;
}

// --- bessel -------------------------------------------------------------------------

struct BesselArgs {
  std::string in;
  std::string base = "jaffard:r=0";
  double r = 1.0;
  std::string method = "weighted";
  int eps_first = 1;
  int eps_last = 12;
  int eps_max = 40;
  double tol = 0.005;
  double s = 0.5;
  std::string p = "inf";
  std::string format = "text";
  std::string out;
};

void add_bessel(CLI::App& app, BesselArgs& a) {
  app.add_option("--in", a.in, "matrix file")->required();
  app.add_option("--base", a.base, "solid base norm spec")->capture_default_str();
  app.add_option("--r", a.r, "Bessel order r > 0")->required();
  app.add_option("--method", a.method, "weighted, hypersingular, embedding or table")->capture_default_str();
  app.add_option("--eps-first", a.eps_first, "first epsilon exponent")->capture_default_str();
  app.add_option("--eps-last", a.eps_last, "last epsilon exponent of the base grid")->capture_default_str();
  app.add_option("--eps-max", a.eps_max, "largest epsilon exponent when extending")->capture_default_str();
  app.add_option("--tol", a.tol, "stabilization tolerance")->capture_default_str();
  app.add_option("--s", a.s, "extra smoothness for the embedding check")->capture_default_str();
  app.add_option("--p", a.p, "summability for the embedding check")->capture_default_str();
  app.add_option("--format", a.format, "text or json")->capture_default_str();
  app.add_option("--out", a.out, "output file (multiplier CSV for method=table)");
}

int cmd_bessel(const BesselArgs& a, std::ostream& out) {
  check_format(a.format, {"text", "json"});
  const NormSpec base = parse_norm_spec(a.base);
  const HypersingularQuadrature quad{a.eps_first, a.eps_last, a.eps_max, a.tol};
  const LatticeMatrix mat = load_matrix(a.in);
  Sink sink(a.out, out);
  if (a.method == "weighted") {
    const double v = bessel_norm(mat, a.r, base);
    if (a.format == "text")
      *sink << "bessel:base=" << base.to_string() << ",r=" << fmt(a.r) << ",method=weighted\t" << fmt(v) << '\n';
    else
      *sink << json{{"base", base.to_string()}, {"r", a.r}, {"value", v}}.dump(2) << '\n';
    return kExitOk;
  }
  if (a.method == "table") {
    std::vector<double> eps;
    for (int j = a.eps_first; j <= a.eps_last; ++j) eps.push_back(std::ldexp(1.0, -j));
    write_multiplier_csv(*sink, hypersingular_table(mat.window(), a.r, eps));
    return kExitOk;
  }
  if (a.method == "hypersingular") {
    const auto res = hypersingular_norm(mat, a.r, base, quad);
    if (a.format == "text") {
      *sink << "bessel:base=" << base.to_string() << ",r=" << fmt(a.r) << ",method=hypersingular\t" << fmt(res.value)
            << '\n';
      *sink << "converged\t" << (res.converged ? "yes" : "no") << "\nsmallest_eps\t" << fmt(res.eps.back()) << '\n';
    } else {
      *sink << json{{"base", base.to_string()}, {"r", a.r},           {"value", res.value},
                    {"base_norm", res.base_norm}, {"seminorm", res.seminorm}, {"eps", res.eps},
                    {"seminorms", res.seminorms}, {"converged", res.converged}}
                   .dump(2)
            << '\n';
    }
    if (!res.converged) throw NonConvergence("hypersingular seminorm did not stabilize");
    return kExitOk;
  }
  if (a.method == "embedding") {
    EmbeddingOptions opt{a.s, grammar::parse_number(a.p), a.r < 2.0, quad};
    const auto rep = embedding_check(mat, a.r, base, opt);
    json j{{"base", base.to_string()},        {"r", a.r},
           {"besov_1", rep.besov_1},          {"bessel", rep.bessel},
           {"besov_inf", rep.besov_inf},      {"bessel_over_besov_1", rep.lower_ratio},
           {"besov_inf_over_bessel", rep.upper_ratio}, {"s", rep.s},
           {"p", number(rep.p)},              {"smoothed", rep.smoothed},
           {"unsmoothed", rep.unsmoothed},    {"smoothing_ratio", rep.smoothing_ratio}};
    if (rep.hypersingular) {
      j["hypersingular"] = rep.hypersingular->value;
      j["hypersingular_over_bessel"] = *rep.hypersingular_ratio;
      j["quadrature_converged"] = rep.hypersingular->converged;
    }
    if (a.format == "json") {
      *sink << j.dump(2) << '\n';
    } else {
      for (auto it = j.begin(); it != j.end(); ++it) {
        *sink << it.key() << '\t';
        if (it->is_number())
          *sink << fmt(it->get<double>());
        else if (it->is_string())
          *sink << it->get<std::string>();
        else
          *sink << it->dump();
        *sink << '\n';
      }
    }
    if (rep.hypersingular && !rep.hypersingular->converged)
      throw NonConvergence("hypersingular seminorm did not stabilize");
    return kExitOk;
  }
  throw InvalidArgument("unknown --method '" + a.method + "'");
}

// --- profile ------------------------------------------------------------------------

struct ProfileArgs {
  std::string in;
  int fit_lo = 1;
  int fit_hi = 0;
  std::string format = "json";
  std::string out;
};

void add_profile(CLI::App& app, ProfileArgs& a) {
  app.add_option("--in", a.in, "matrix file")->required();
  app.add_option("--fit-lo", a.fit_lo, "first shell of the fit")->capture_default_str();
  app.add_option("--fit-hi", a.fit_hi, "last shell of the fit (0: automatic)")->capture_default_str();
  app.add_option("--format", a.format, "json or csv (plot data m,envelope)")->capture_default_str();
  app.add_option("--out", a.out, "output file");
}

int cmd_profile(const ProfileArgs& a, std::ostream& out) {
  check_format(a.format, {"json", "csv"});
  const LatticeMatrix mat = load_matrix(a.in);
  const DecayProfile p = decay_profile(mat, a.fit_lo, a.fit_hi);
  Sink sink(a.out, out);
  if (a.format == "csv") {
    write_profile_csv(*sink, p);
  } else {
    *sink << json{{"input", a.in},
                  {"exponent", p.exponent},
                  {"slope", p.slope},
                  {"intercept", p.intercept},
                  {"residual", p.residual},
                  {"exponent_near", p.exponent_near},
                  {"exponent_far", p.exponent_far},
                  {"super_polynomial", p.super_polynomial},
                  {"fit_lo", p.fit_lo},
                  {"fit_hi", p.fit_hi},
                  {"envelope", p.envelope}}
                 .dump(2)
          << '\n';
  }
  return kExitOk;
}

// --- verify -------------------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> suites;
  int count = 8;
  int W = 32;
  int dim = 1;
  std::uint64_t seed = 1;
  int t_samples = 8;
  double bound = 20.0;
  std::string out;
};

void add_verify(CLI::App& app, VerifyArgs& a) {
  app.add_option("--suite", a.suites, "suite name or 'all' (repeatable, comma separated)")->delimiter(',');
  app.add_option("--count", a.count, "corpus size")->capture_default_str();
  app.add_option("--W", a.W, "window half-width")->capture_default_str();
  app.add_option("--dim", a.dim, "lattice dimension")->capture_default_str();
  app.add_option("--seed", a.seed, "corpus seed")->capture_default_str();
  app.add_option("--t-samples", a.t_samples, "random t values per matrix")->capture_default_str();
  app.add_option("--bound", a.bound, "constant bound C for [1/C, C] intervals")->capture_default_str();
  app.add_option("--out", a.out, "JSON report file");
}

int cmd_verify(const VerifyArgs& a, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  if (a.count <= 0) throw InvalidArgument("verification corpus is empty (--count must be > 0)");
  std::vector<std::string> names = a.suites;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = verify::suite_names();
  for (const auto& n : names)
    if (std::find(verify::suite_names().begin(), verify::suite_names().end(), n) == verify::suite_names().end())
      throw InvalidArgument("unknown suite '" + n + "'");
  verify::Config cfg{a.dim, a.W, std::size_t(a.count), a.seed, a.t_samples, a.bound};
  json suites = json::array();
  bool ok = true;
  for (const auto& n : names) {
    const auto res = verify::run_suite(n, cfg);
    ok = ok && res.passed;
    err << (res.passed ? "PASS " : "FAIL ") << n << ' ' << res.metrics.dump() << '\n';
    json s{{"suite", n}, {"passed", res.passed}, {"metrics", res.metrics}};
    if (!res.passed) s["failure"] = res.failure;
    suites.push_back(s);
  }
  Sink sink(a.out, out);
  *sink << json{{"passed", ok}, {"seed", a.seed}, {"config", resolved_config(sub)}, {"suites", suites}}.dump(2) << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

// --- report -------------------------------------------------------------------------

struct ReportArgs {
  std::string model = "det";
  double r = 3.0;
  double c = 1.0;
  std::uint64_t seed = 0;
  std::vector<int> windows;
  double lambda = 2.0;
  int dim = 1;
  std::vector<std::string> quantities;
  std::string format = "json";
  std::string out;
  std::string plot_dir;
};

void add_report(CLI::App& app, ReportArgs& a) {
  app.add_option("--model", a.model, "det, phase or mag")->capture_default_str();
  app.add_option("--r", a.r, "decay exponent")->capture_default_str();
  app.add_option("--c", a.c, "amplitude")->capture_default_str();
  app.add_option("--seed", a.seed, "random seed")->capture_default_str();
  app.add_option("--W", a.windows, "increasing window list, e.g. 64,128,256")->delimiter(',')->required();
  app.add_option("--lambda", a.lambda, "invertibility margin > 1")->capture_default_str();
  app.add_option("--dim", a.dim, "lattice dimension")->capture_default_str();
  app.add_option("--quantity", a.quantities, "quantity spec to report (repeatable)");
  app.add_option("--format", a.format, "json or csv")->capture_default_str();
  app.add_option("--out", a.out, "report file");
  app.add_option("--plot-dir", a.plot_dir, "directory for m,envelope plot data per matrix");
}

int cmd_report(const ReportArgs& a, const CLI::App& sub, std::ostream& out) {
  check_format(a.format, {"json", "csv"});
  const DecayModel m{parse_decay_kind(a.model), a.r, a.c, a.seed};
  ReportOptions opt{a.lambda, a.dim, a.quantities};
  for (const auto& q : opt.quantities) parse_quantity(q);
  const auto rep = spectral_invariance_report(m, a.windows, opt);
  Sink sink(a.out, out);
  if (a.format == "json")
    write_report_json(*sink, rep, resolved_config(sub).dump());
  else
    write_report_csv(*sink, rep);
  if (!a.plot_dir.empty()) {
    std::filesystem::create_directories(a.plot_dir);
    for (const auto& c : rep.cells) {
      const std::string stem = a.plot_dir + "/W" + std::to_string(c.half_width);
      std::ofstream fb(stem + "_matrix.csv"), fi(stem + "_inverse.csv");
      if (!fb || !fi) throw InvalidArgument("cannot write plot data under '" + a.plot_dir + "'");
      write_profile_csv(fb, c.matrix_profile);
      write_profile_csv(fi, c.inverse_profile);
    }
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Off-diagonal decay matrix algebra toolkit", "odd"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--threads", common.threads, "OpenMP threads (default: ODD_THREADS or runtime default)")
      ->envname("ODD_THREADS");
  app.set_config("--config", "", "INI configuration file with one [subcommand] section; command-line flags win");
  app.add_flag("-v,--verbose", common.verbosity, "more diagnostics on stderr");

  GenArgs gen;
  NormArgs nrm;
  BesovArgs bes;
  ApproxArgs apx;
  BesselArgs bsl;
  ProfileArgs prf;
  VerifyArgs ver;
  ReportArgs rep;
  auto* s_gen = app.add_subcommand("gen", "generate a decay-model matrix");
  auto* s_norm = app.add_subcommand("norm", "evaluate norm / besov / approx / bessel specs");
  auto* s_besov = app.add_subcommand("besov", "Besov norms in the three evaluator forms");
  auto* s_approx = app.add_subcommand("approx", "banded approximation errors and norms");
  auto* s_bessel = app.add_subcommand("bessel", "Bessel-potential norms, hypersingular form, embeddings");
  auto* s_profile = app.add_subcommand("profile", "diagonal decay profile and fitted exponent");
  auto* s_verify = app.add_subcommand("verify", "run property suites over a seeded corpus");
  auto* s_report = app.add_subcommand("report", "spectral-invariance experiment");
  add_gen(*s_gen, gen);
  add_norm(*s_norm, nrm);
  add_besov(*s_besov, bes);
  add_approx(*s_approx, apx);
  add_bessel(*s_bessel, bsl);
  add_profile(*s_profile, prf);
  add_verify(*s_verify, ver);
  add_report(*s_report, rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    set_threads(common.threads);
    if (common.verbosity > 0) err << "threads: " << max_threads() << '\n';
    if (s_gen->parsed()) return cmd_gen(gen, out, err);
    if (s_norm->parsed()) return cmd_norm(nrm, out);
    if (s_besov->parsed()) return cmd_besov(bes, out);
    if (s_approx->parsed()) return cmd_approx(apx, out);
    if (s_bessel->parsed()) return cmd_bessel(bsl, out);
    if (s_profile->parsed()) return cmd_profile(prf, out);
    if (s_verify->parsed()) return cmd_verify(ver, *s_verify, out, err);
    if (s_report->parsed()) return cmd_report(rep, *s_report, out);
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const SingularSection& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace odd::cli
