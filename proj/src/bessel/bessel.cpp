#include "odd/bessel.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <set>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "odd/errors.hpp"
#include "odd/kernels.hpp"
#include "odd/smoothness.hpp"

namespace odd {

using grammar::Cursor;
using grammar::format_number;

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double r) {
  if (!(r > 0.0) || std::isinf(r)) throw InvalidArgument("Bessel order r must be finite and > 0");
}

void require_hypersingular_range(double r) {
  if (!(r > 0.0 && r < 2.0)) throw InvalidArgument("the hypersingular evaluator needs 0 < r < 2");
}

}  // namespace

std::vector<double> bessel_multiplier(const Window& w, double r) {
  require_positive(r);
  std::vector<double> out(w.offset_count());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = 1.0 / bessel_weight(w.offset(s), r);
  return out;
}

LatticeMatrix bessel_convolve(const LatticeMatrix& a, double r) {
  const auto m = bessel_multiplier(a.window(), r);
  return kernels::apply_multiplier(a, Multiplier(m.begin(), m.end()));
}

double bessel_norm(const LatticeMatrix& a, double r, const NormSpec& base) {
  require_positive(r);
  return weighted_norm(a, base, WeightSpec::bessel(r));
}

// --- hypersingular multipliers ----------------------------------------------------

namespace {

// Radial integrand without the |t|^{-1-r} factor: d = 1 gives 2(cos(a t) - 1),
// d = 2 gives 2 pi (J0(a t) - 1), with a = 2 pi |m|_2.
double radial_kernel(int dim, double a, double t) {
  if (dim == 1) {
    const double h = std::sin(0.5 * a * t);
    return -4.0 * h * h;
  }
  return 2.0 * kPi * (std::cyl_bessel_j(0.0, a * t) - 1.0);
}

// int_lo^hi kernel(t) t^{-1-r} dt for a * hi <= 1 from the power series.
double series_part(int dim, double a, double r, double lo, double hi) {
  double sum = 0.0;
  double coeff = 1.0;  // a^{2n} / (2n)!  (d = 1)  or  (a/2)^{2n} / (n!)^2  (d = 2)
  for (int n = 1; n < 60; ++n) {
    if (dim == 1)
      coeff *= a * a / double((2 * n - 1) * (2 * n));
    else
      coeff *= (a * a / 4.0) / double(n * n);
    const double e = 2.0 * n - r;
    const double term = coeff * (std::pow(hi, e) - std::pow(lo, e)) / e;
    sum += (n % 2 == 1) ? -term : term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return dim == 1 ? 2.0 * sum : 2.0 * kPi * sum;
}

// Integrals of kernel(t) t^{-1-r} over the half-period panels [k pi/a, (k+1) pi/a] meeting
// [delta, 1], with suffix sums so that any tail int_x^1 costs one partial panel.
struct PanelTable {
  double a = 0.0;
  double step = 1.0;
  long first = 0;  // panel index of delta
  double delta = 0.0;
  std::vector<double> suffix;  // suffix[i] = int over panels first + i .. end, clipped to [delta, 1]
};

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

double integrand(int dim, double a, double r, double t) {
  return radial_kernel(dim, a, t) * std::pow(t, -1.0 - r);
}

double gk(int dim, double a, double r, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  return GK::integrate([&](double t) { return integrand(dim, a, r, t); }, lo, hi, 6, 1e-12);
}

PanelTable build_panels(int dim, double a, double r, double delta) {
  PanelTable p;
  p.a = a;
  p.delta = delta;
  p.step = kPi / a;
  p.first = long(std::floor(delta / p.step));
  const long last = long(std::ceil(1.0 / p.step));
  std::vector<double> piece;
  for (long k = p.first; k < last; ++k) {
    const double lo = std::max(delta, double(k) * p.step);
    const double hi = std::min(1.0, double(k + 1) * p.step);
    piece.push_back(gk(dim, a, r, lo, hi));
  }
  p.suffix.assign(piece.size() + 1, 0.0);
  for (std::size_t i = piece.size(); i-- > 0;) p.suffix[i] = p.suffix[i + 1] + piece[i];
  return p;
}

// int_x^1 for x >= delta.
double panel_tail(int dim, double r, const PanelTable& p, double x) {
  if (x >= 1.0) return 0.0;
  const long k = std::max(p.first, long(std::floor(x / p.step)));
  const std::size_t i = std::min(std::size_t(k - p.first), p.suffix.size() - 1);
  const double boundary = std::min(1.0, double(k + 1) * p.step);
  return gk(dim, p.a, r, x, boundary) + p.suffix[std::min(i + 1, p.suffix.size() - 1)];
}

// Shared write-once cache of the panel tables, keyed by (dim, |m|_2^2, r).
const PanelTable& panels(int dim, long norm_sq, double r) {
  static std::mutex mutex;
  static std::map<std::tuple<int, long, double>, std::unique_ptr<PanelTable>> cache;
  const auto key = std::make_tuple(dim, norm_sq, r);
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  const double a = 2.0 * kPi * std::sqrt(double(norm_sq));
  auto table = std::make_unique<PanelTable>(build_panels(dim, a, r, std::min(1.0, 1.0 / a)));
  std::lock_guard<std::mutex> lock(mutex);
  return *cache.emplace(key, std::move(table)).first->second;
}

long norm_sq(const LatticeIndex& m) {
  long s = 0;
  for (int j = 0; j < m.dim; ++j) s += long(m.c[j]) * long(m.c[j]);
  return s;
}

}  // namespace

double hypersingular_multiplier(const LatticeIndex& m, double r, double eps) {
  require_hypersingular_range(r);
  if (!(eps > 0.0)) throw InvalidArgument("epsilon must be > 0");
  const long n2 = norm_sq(m);
  if (n2 == 0 || eps >= 1.0) return 0.0;
  const double a = 2.0 * kPi * std::sqrt(double(n2));
  const double delta = std::min(1.0, 1.0 / a);
  const PanelTable& p = panels(m.dim, n2, r);
  if (eps >= delta) return panel_tail(m.dim, r, p, eps);
  return series_part(m.dim, a, r, eps, delta) + p.suffix.front();
}

HypersingularTable hypersingular_table(const Window& w, double r, const std::vector<double>& eps) {
  require_hypersingular_range(r);
  HypersingularTable t{w, r, eps, {}};
  // Values depend on |m|_2 only; evaluate each distinct norm once.
  std::map<long, std::size_t> index;
  std::vector<LatticeIndex> reps;
  for (std::size_t s = 0; s < w.offset_count(); ++s) {
    const LatticeIndex m = w.offset(s);
    if (index.emplace(norm_sq(m), reps.size()).second) reps.push_back(m);
  }
  for (const double e : eps) {
    std::vector<double> distinct(reps.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(reps.size()); ++i)
      distinct[std::size_t(i)] = hypersingular_multiplier(reps[std::size_t(i)], r, e);
    std::vector<double> row(w.offset_count());
    for (std::size_t s = 0; s < row.size(); ++s) row[s] = distinct[index.at(norm_sq(w.offset(s)))];
    t.values.push_back(std::move(row));
  }
  return t;
}

void write_multiplier_csv(std::ostream& os, const HypersingularTable& table) {
  os << "m,eps,re,im\n";
  const Window& w = table.window;
  for (std::size_t e = 0; e < table.eps.size(); ++e) {
    for (std::size_t s = 0; s < w.offset_count(); ++s) {
      const LatticeIndex m = w.offset(s);
      os << m.c[0];
      if (m.dim == 2) os << ';' << m.c[1];
      os << ',' << format_number(table.eps[e]) << ',' << format_number(table.values[e][s]) << ",0\n";
    }
  }
}

namespace {

bool stabilized(const std::vector<double>& v, double tol) {
  if (v.size() < 3) return false;
  const auto last = v.end() - 3;
  const double lo = std::min({last[0], last[1], last[2]});
  const double hi = std::max({last[0], last[1], last[2]});
  if (hi == 0.0) return true;
  return (hi - lo) <= tol * hi;
}

}  // namespace

HypersingularResult hypersingular_norm(const LatticeMatrix& a, double r, const NormSpec& base,
                                       const HypersingularQuadrature& quad) {
  require_hypersingular_range(r);
  if (quad.first_exponent < 0 || quad.last_exponent < quad.first_exponent || quad.max_exponent < quad.last_exponent)
    throw InvalidArgument("invalid epsilon grid");
  const Window& w = a.window();
  const auto norm = prepare_norm(base, a);
  HypersingularResult out;
  out.base_norm = norm->value();

  const auto seminorm = [&](double eps) {
    const auto t = hypersingular_table(w, r, {eps});
    Multiplier mult(t.values[0].begin(), t.values[0].end());
    return (*norm)(mult);
  };
  for (int j = quad.first_exponent; j <= quad.max_exponent; ++j) {
    const double eps = std::ldexp(1.0, -j);
    out.eps.push_back(eps);
    out.seminorms.push_back(seminorm(eps));
    if (j >= quad.last_exponent && stabilized(out.seminorms, quad.tolerance)) {
      out.converged = true;
      break;
    }
  }
  for (const double v : out.seminorms) out.seminorm = std::max(out.seminorm, v);
  out.value = out.base_norm + out.seminorm;
  return out;
}

double hypersingular_norm_checked(const LatticeMatrix& a, double r, const NormSpec& base,
                                  const HypersingularQuadrature& quad) {
  const auto res = hypersingular_norm(a, r, base, quad);
  if (!res.converged)
    throw NonConvergence("hypersingular seminorm did not stabilize down to eps = " + format_number(res.eps.back()));
  return res.value;
}

EmbeddingReport embedding_check(const LatticeMatrix& a, double r, const NormSpec& base,
                                const EmbeddingOptions& options) {
  require_positive(r);
  if (!base.is_solid()) throw NonSolidBase("embedding checks need a solid base, got '" + base.to_string() + "'");
  EmbeddingReport out;
  out.besov_1 = besov_norm_solid_lp(a, base, r, 1.0);
  out.bessel = bessel_norm(a, r, base);
  out.besov_inf = besov_norm_solid_lp(a, base, r, kInf);
  const auto ratio = [](double x, double y) { return y == 0.0 ? (x == 0.0 ? 1.0 : kInf) : x / y; };
  out.lower_ratio = ratio(out.bessel, out.besov_1);
  out.upper_ratio = ratio(out.besov_inf, out.bessel);
  if (options.hypersingular && r < 2.0) {
    out.hypersingular = hypersingular_norm(a, r, base, options.quadrature);
    out.hypersingular_ratio = ratio(out.hypersingular->value, out.bessel);
  }
  out.s = options.s;
  out.p = options.p;
  out.smoothed = besov_norm_solid_lp(bessel_convolve(a, r), base, r + options.s, options.p);
  out.unsmoothed = besov_norm_solid_lp(a, base, options.s, options.p);
  out.smoothing_ratio = ratio(out.smoothed, out.unsmoothed);
  return out;
}

// --- grammar ----------------------------------------------------------------------

void BesselSpec::validate() const {
  require_positive(r);
  if (!base.is_solid()) throw NonSolidBase("Bessel norms need a solid base, got '" + base.to_string() + "'");
  if (method == Method::Hypersingular) require_hypersingular_range(r);
}

std::string BesselSpec::to_string() const {
  return "bessel:base=" + base.to_string() + ",r=" + format_number(r) +
         ",method=" + (method == Method::Weighted ? "weighted" : "hypersingular");
}

BesselSpec parse_bessel_spec(Cursor& cur) {
  if (cur.identifier() != "bessel") cur.fail("expected 'bessel'");
  cur.expect(":");
  static const std::set<std::string> allowed{"base", "r", "method"};
  BesselSpec spec;
  std::set<std::string> seen;
  for (bool first = true;; first = false) {
    const std::string key = cur.peek_item_key(!first);
    if (key.empty() || !allowed.count(key) || seen.count(key)) {
      if (first) cur.fail("expected a Bessel parameter");
      break;
    }
    if (!first) cur.expect(",");
    cur.expect(key);
    cur.expect("=");
    if (key == "base") {
      spec.base = parse_norm_spec(cur);
    } else if (key == "r") {
      spec.r = cur.number();
    } else {
      const std::string m = cur.value();
      if (m == "weighted")
        spec.method = BesselSpec::Method::Weighted;
      else if (m == "hypersingular")
        spec.method = BesselSpec::Method::Hypersingular;
      else
        cur.fail("unknown Bessel method '" + m + "'");
    }
    seen.insert(key);
  }
  if (!seen.count("r")) cur.fail("Bessel spec needs r=");
  try {
    spec.validate();
  } catch (const Error& e) {
    cur.fail(e.what());
  }
  return spec;
}

BesselSpec parse_bessel_spec(const std::string& text) {
  Cursor cur(text);
  BesselSpec spec = parse_bessel_spec(cur);
  if (!cur.done()) cur.fail("unexpected trailing text");
  return spec;
}

}  // namespace odd
