// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "odd/lab.hpp"
#include "odd/verify.hpp"

namespace {

using nlohmann::json;
using odd::verify::Config;
using odd::verify::run_suite;

constexpr double kBound = 20.0;
constexpr double kDrift = 0.10;

struct Outcome {
  bool passed = false;
  std::string detail;
};

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Config corpus(int W, std::size_t count = 24, int t_samples = 8) {
  Config c;
  c.dim = 1;
  c.half_width = W;
  c.count = count;
  c.seed = 20240601;
  c.t_samples = t_samples;
  c.constant_bound = kBound;
  return c;
}

double drift(double a, double b) { return std::abs(b - a) / std::abs(a); }

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

bool inside(const json& iv) { return iv[0].get<double>() >= 1.0 / kBound && iv[1].get<double>() <= kBound; }

// Interval check at W = 64 plus endpoint drift against W = 128, for every interval under `key`.
Outcome stable_intervals(const std::string& suite, const std::string& key) {
  const auto small = run_suite(suite, corpus(64));
  const auto large = run_suite(suite, corpus(128));
  Outcome out{small.passed && large.passed, ""};
  auto check = [&](const std::string& label, const json& a, const json& b) {
    const double d = std::max(drift(a[0].get<double>(), b[0].get<double>()), drift(a[1].get<double>(), b[1].get<double>()));
    out.passed = out.passed && inside(a) && inside(b) && d < kDrift;
    out.detail += label + fmt("[%.4g,%.4g] drift %.2f%%; ", b[0].get<double>(), b[1].get<double>(), 100.0 * d);
  };
  const json& a = small.metrics.at(key);
  const json& b = large.metrics.at(key);
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) check(it.key() + " ", *it, b.at(it.key()));
  } else {
    check("", a, b);
  }
  return out;
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const Config c = corpus(64, 100, 32);
  const auto l = run_suite("leibniz", c);
  const auto q = run_suite("quotient", c);
  const double el = elapsed(t0);
  const double rl = l.metrics["max_residual"], rq = q.metrics["max_residual"];
  return {rl < 1e-10 && rq < 1e-10 && el < 30.0,
          fmt("leibniz %.3g, quotient %.3g over 100 matrices x 32 t, %.1f s", rl, rq, el)};
}

Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out{true, ""};
  for (const double r : {2.0, 3.0}) {
    odd::DecayModel model;
    model.r = r;
    odd::ReportOptions opt;
    opt.quantities = {"jaffard:r=" + odd::grammar::format_number(r)};
    const auto rep = odd::spectral_invariance_report(model, {64, 128, 256}, opt);
    double worst = 1e300;
    for (const auto& cell : rep.cells) worst = std::min(worst, cell.inverse_profile.exponent);
    const double d = drift(rep.cells[1].norms[0].inverse, rep.cells[2].norms[0].inverse);
    out.passed = out.passed && worst >= r - 0.25 && d < kDrift;
    out.detail += fmt("r=%g min inverse exponent %.3f, jaffard drift %.3f%%; ", r, worst, 100.0 * d);
  }
  const double el = elapsed(t0);
  out.passed = out.passed && el < 120.0;
  out.detail += fmt("%.1f s", el);
  return out;
}

Outcome criterion6() {
  const auto res = run_suite("bessel-exactness", corpus(64));
  const double e = res.metrics["max_relative_error"], s = res.metrics["semigroup_error"];
  return {res.passed && e <= 1e-12 && s <= 1e-12, fmt("max relative error %.3g, semigroup %.3g", e, s)};
}

Outcome criterion7() {
  Outcome out{true, ""};
  json prev;
  for (const int W : {64, 128}) {
    const auto res = run_suite("embedding", corpus(W));
    const json& m = res.metrics;
    out.passed = out.passed && res.passed && m["quadrature_converged"].get<bool>();
    out.detail += fmt("W=%g bessel/besov1 [%.3g,%.3g] ", W, m["bessel_over_besov1"][0], m["bessel_over_besov1"][1]);
    out.detail += fmt("besovinf/bessel [%.3g,%.3g] ", m["besovinf_over_bessel"][0], m["besovinf_over_bessel"][1]);
    out.detail += fmt("hypersingular/bessel [%.3g,%.3g]; ", m["hypersingular_over_bessel"][0],
                      m["hypersingular_over_bessel"][1]);
    for (const char* k : {"bessel_over_besov1", "besovinf_over_bessel"})
      out.passed = out.passed && m[k][1].get<double>() <= kBound;
    out.passed = out.passed && inside(m["hypersingular_over_bessel"]);
  }
  return out;
}

Outcome criterion8() {
  const Config c = corpus(64, 24, 32);
  const auto s = run_suite("solidity", c);
  const auto i = run_suite("isometry", c);
  const double e = i.metrics["max_relative_change"];
  return {s.passed && i.passed && e <= 1e-12,
          fmt("%g dominated pairs monotone, isometry max relative change %.3g over 32 t", s.metrics["pairs"], e)};
}

Outcome criterion9() {
  const auto res = run_suite("bernstein", corpus(64));
  const double w = res.metrics["max_ratio_over_2piN"];
  return {res.passed && w <= 1.0, fmt("max ratio / (2 pi N) = %.4f for N in {4, 8, 16}", w)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 leibniz-quotient", criterion1},
      {"2 jaffard-invariance", criterion2},
      {"3 besov-equivalence", [] { return stable_intervals("lp-equivalence", "ratio_intervals"); }},
      {"4 jackson-bernstein", [] { return stable_intervals("jackson-bernstein", "ratio_intervals"); }},
      {"5 reiteration", [] { return stable_intervals("reiteration", "ratio_interval"); }},
      {"6 bessel-exactness", criterion6},
      {"7 embedding-chain", criterion7},
      {"8 solidity-isometry", criterion8},
      {"9 bernstein", criterion9},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.passed;
    std::printf("%s criterion %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
