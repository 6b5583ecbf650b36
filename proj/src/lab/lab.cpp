#include "odd/lab.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <json.hpp>

#include "odd/errors.hpp"
#include "odd/grammar.hpp"
#include "odd/kernels.hpp"
#include "odd/quantity.hpp"

namespace odd {

using grammar::format_number;

std::string to_string(DecayModel::Kind k) {
  switch (k) {
    case DecayModel::Kind::Deterministic:
      return "det";
    case DecayModel::Kind::RandomPhase:
      return "phase";
    case DecayModel::Kind::RandomMagnitude:
      return "mag";
  }
  return "?";
}

DecayModel::Kind parse_decay_kind(const std::string& text) {
  if (text == "det" || text == "deterministic-envelope") return DecayModel::Kind::Deterministic;
  if (text == "phase" || text == "random-phase") return DecayModel::Kind::RandomPhase;
  if (text == "mag" || text == "random-magnitude") return DecayModel::Kind::RandomMagnitude;
  throw ParseError("unknown decay model '" + text + "' (expected det, phase or mag)");
}

namespace {

// SplitMix64 finalizer, used as a counter-based generator keyed by (seed, k, l).
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit(std::uint64_t x) { return double(x >> 11) * 0x1.0p-53; }

std::uint64_t entry_key(std::uint64_t seed, const LatticeIndex& k, const LatticeIndex& l) {
  std::uint64_t h = mix(seed);
  for (int j = 0; j < k.dim; ++j) {
    h = mix(h ^ std::uint64_t(std::int64_t(k.c[j])));
    h = mix(h ^ std::uint64_t(std::int64_t(l.c[j])));
  }
  return h;
}

}  // namespace

LatticeMatrix generate(const DecayModel& model, int dim, int half_width) {
  if (!(model.r >= 0.0) || std::isinf(model.r)) throw InvalidArgument("decay exponent r must be finite and >= 0");
  if (!(model.c > 0.0) || std::isinf(model.c)) throw InvalidArgument("amplitude c must be finite and > 0");
  if (half_width < 1) throw InvalidArgument("generation needs W >= 1");
  const Window w(dim, half_width);
  return LatticeMatrix::from_function(w, [&](const LatticeIndex& k, const LatticeIndex& l) -> cplx {
    const double env = model.c * std::pow(1.0 + (k - l).norm2(), -model.r);
    switch (model.kind) {
      case DecayModel::Kind::Deterministic:
        return env;
      case DecayModel::Kind::RandomPhase: {
        const double theta = 2.0 * std::numbers::pi * unit(entry_key(model.seed, k, l));
        return std::polar(env, theta);
      }
      case DecayModel::Kind::RandomMagnitude:
        return env * unit(entry_key(model.seed, k, l));
    }
    return 0.0;
  });
}

std::vector<DecayModel> decay_models(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<DecayModel> out;
  for (std::size_t i = 0; i < count; ++i) {
    DecayModel m;
    m.kind = static_cast<DecayModel::Kind>(i % 3);
    m.r = 2.0 + 2.0 * unit(gen());
    m.c = 0.5 + 1.5 * unit(gen());
    m.seed = gen();
    out.push_back(m);
  }
  return out;
}

std::vector<LatticeMatrix> decay_corpus(int dim, int half_width, std::size_t count, std::uint64_t seed) {
  std::vector<LatticeMatrix> out;
  for (const DecayModel& m : decay_models(count, seed)) out.push_back(generate(m, dim, half_width));
  return out;
}

LatticeMatrix make_invertible(const LatticeMatrix& a, double lambda) {
  if (!(lambda > 1.0)) throw InvalidArgument("margin lambda must be > 1");
  if (a.is_zero()) throw InvalidArgument("cannot shift the zero matrix by a multiple of its norm");
  const double shift = lambda * op_norm_l2(a);
  return kernels::combine(a, 1.0, LatticeMatrix::identity(a.window()), shift);
}

LatticeMatrix invert_finite_section(const LatticeMatrix& b, double* residual) {
  const Eigen::MatrixXcd dense = b.to_dense();
  const Eigen::Index n = dense.rows();
  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(dense);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(n - 1);
  if (!(smin >= 1e-10 * smax) || smax == 0.0) {
    const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    throw SingularSection("finite section is numerically singular (condition " + format_number(cond) + ")", cond);
  }
  const Eigen::MatrixXcd inv = dense.partialPivLu().inverse();
  const Eigen::MatrixXcd r = dense * inv - Eigen::MatrixXcd::Identity(n, n);
  const double frob = r.norm();
  if (residual) *residual = frob;
  if (frob > 1e-8) {
    const double op = Eigen::BDCSVD<Eigen::MatrixXcd>(r).singularValues()(0);
    if (op > 1e-8) throw NonConvergence("inverse residual " + format_number(op) + " exceeds 1e-8");
  }
  return LatticeMatrix::from_dense(b.window(), inv);
}

// --- decay profile ----------------------------------------------------------------

namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

Line fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  Line l;
  const double den = n * sxx - sx * sx;
  l.slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  l.intercept = (sy - l.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (l.intercept + l.slope * x[i]);
    ss += e * e;
  }
  l.rms = std::sqrt(ss / n);
  return l;
}

Line fit_range(const std::vector<double>& env, int lo, int hi) {
  std::vector<double> x, y;
  for (int n = lo; n <= hi; ++n) {
    x.push_back(std::log1p(double(n)));
    y.push_back(std::log(std::max(env[std::size_t(n)], 1e-300)));
  }
  return fit_line(x, y);
}

}  // namespace

DecayProfile decay_profile(const LatticeMatrix& a, int fit_lo, int fit_hi) {
  if (fit_hi > 0 && fit_lo > fit_hi)
    throw InvalidArgument("fit range " + std::to_string(fit_lo) + ".." + std::to_string(fit_hi) + " is empty");
  const Window& w = a.window();
  const int half = w.half_width();
  const int interior = half / 2;
  const int shells = (3 * half) / 2;
  DecayProfile out;
  out.envelope.assign(std::size_t(shells) + 1, 0.0);
  for (std::size_t s = 0; s < w.offset_count(); ++s) {
    if (!a.has_slot(s)) continue;
    const LatticeIndex m = w.offset(s);
    const int n = m.norm_inf();
    if (n > shells) continue;
    const auto d = a.slot_data(s);
    double best = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (w.diagonal_row(m, i).norm_inf() <= interior) best = std::max(best, std::abs(d[i]));
    out.envelope[std::size_t(n)] = std::max(out.envelope[std::size_t(n)], best);
  }
  if (fit_hi <= 0) fit_hi = (3 * shells) / 4;
  fit_hi = std::min(fit_hi, shells);
  fit_lo = std::max(fit_lo, 0);
  out.fit_lo = fit_lo;
  out.fit_hi = fit_hi;
  int nonzero = 0;
  for (int n = fit_lo; n <= fit_hi; ++n) nonzero += out.envelope[std::size_t(n)] > 0.0;
  if (fit_hi - fit_lo + 1 < 8 || nonzero < 8)
    throw InsufficientData("decay fit needs at least 8 nonzero shells in " + std::to_string(fit_lo) + ".." +
                           std::to_string(fit_hi) + ", found " + std::to_string(nonzero));
  const Line all = fit_range(out.envelope, fit_lo, fit_hi);
  out.slope = all.slope;
  out.intercept = all.intercept;
  out.residual = all.rms;
  out.exponent = -all.slope;
  const int mid = (fit_lo + fit_hi) / 2;
  out.exponent_near = -fit_range(out.envelope, fit_lo, mid).slope;
  out.exponent_far = -fit_range(out.envelope, mid + 1, fit_hi).slope;
  out.super_polynomial = out.exponent_far > out.exponent_near + std::max(1.0, 0.5 * std::abs(out.exponent_near));
  return out;
}

void write_profile_csv(std::ostream& os, const DecayProfile& profile) {
  os << "m,envelope\n";
  for (std::size_t n = 0; n < profile.envelope.size(); ++n) os << n << ',' << format_number(profile.envelope[n]) << '\n';
}

// --- report -----------------------------------------------------------------------

std::vector<std::string> default_report_quantities(const DecayModel& model) {
  const double s = model.r > 1.0 ? model.r - 0.5 : model.r / 2.0;
  std::vector<std::string> q{"jaffard:r=" + format_number(model.r)};
  if (s > 0.0) {
    q.push_back("besov:base=jaffard:r=0,r=" + format_number(s) + ",p=inf,method=solidlp");
    q.push_back("bessel:base=jaffard:r=0,r=" + format_number(s) + ",method=weighted");
  }
  return q;
}

SpectralReport spectral_invariance_report(const DecayModel& model, const std::vector<int>& windows,
                                          const ReportOptions& options) {
  if (windows.empty()) throw InvalidArgument("report needs at least one window");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i] < 16) throw InvalidArgument("report windows must satisfy W >= 16");
    if (i > 0 && windows[i] <= windows[i - 1]) throw InvalidArgument("report windows must be strictly increasing");
  }
  SpectralReport rep{model, options, {}, {}};
  if (rep.options.quantities.empty()) rep.options.quantities = default_report_quantities(model);
  std::vector<QuantitySpec> specs;
  for (const auto& q : rep.options.quantities) specs.push_back(parse_quantity(q));

  rep.cells.resize(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    ReportCell& cell = rep.cells[i];
    cell.half_width = windows[i];
    const LatticeMatrix a = generate(model, options.dim, windows[i]);
    const LatticeMatrix b = make_invertible(a, options.lambda);
    cell.op_norm = op_norm_l2(a);
    const LatticeMatrix inv = invert_finite_section(b, &cell.residual);
    cell.matrix_profile = decay_profile(b);
    cell.inverse_profile = decay_profile(inv);
    for (std::size_t q = 0; q < specs.size(); ++q)
      cell.norms.push_back({to_string(specs[q]), evaluate_quantity(b, specs[q]), evaluate_quantity(inv, specs[q])});
  }
  if (rep.cells.size() >= 2) {
    const auto& x = rep.cells[rep.cells.size() - 2].norms;
    const auto& y = rep.cells.back().norms;
    for (std::size_t q = 0; q < specs.size(); ++q)
      rep.inverse_drift.push_back(std::abs(y[q].inverse - x[q].inverse) / x[q].inverse);
  }
  return rep;
}

namespace {

nlohmann::json profile_json(const DecayProfile& p) {
  return {{"exponent", p.exponent},       {"slope", p.slope},
          {"intercept", p.intercept},     {"residual", p.residual},
          {"exponent_near", p.exponent_near}, {"exponent_far", p.exponent_far},
          {"super_polynomial", p.super_polynomial}, {"fit_lo", p.fit_lo},
          {"fit_hi", p.fit_hi}};
}

}  // namespace

void write_report_json(std::ostream& os, const SpectralReport& report, const std::string& config_json) {
  nlohmann::json j;
  j["model"] = {{"kind", to_string(report.model.kind)},
                {"r", report.model.r},
                {"c", report.model.c},
                {"seed", report.model.seed}};
  j["lambda"] = report.options.lambda;
  j["dim"] = report.options.dim;
  j["config"] = nlohmann::json::parse(config_json);
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json norms = nlohmann::json::array();
    for (const auto& n : c.norms) norms.push_back({{"quantity", n.spec}, {"matrix", n.matrix}, {"inverse", n.inverse}});
    cells.push_back({{"W", c.half_width},
                     {"op_norm", c.op_norm},
                     {"residual", c.residual},
                     {"matrix", profile_json(c.matrix_profile)},
                     {"inverse", profile_json(c.inverse_profile)},
                     {"norms", norms}});
  }
  j["cells"] = cells;
  nlohmann::json drift = nlohmann::json::object();
  for (std::size_t q = 0; q < report.inverse_drift.size(); ++q)
    drift[report.cells.back().norms[q].spec] = report.inverse_drift[q];
  j["inverse_drift"] = drift;
  os << j.dump(2) << '\n';
}

void write_report_csv(std::ostream& os, const SpectralReport& report) {
  os << "W,quantity,matrix,inverse,exponent_matrix,exponent_inverse,super_polynomial_inverse,residual\n";
  for (const auto& c : report.cells) {
    for (const auto& n : c.norms) {
      os << c.half_width << ",\"" << n.spec << "\"," << format_number(n.matrix) << ',' << format_number(n.inverse)
         << ',' << format_number(c.matrix_profile.exponent) << ',' << format_number(c.inverse_profile.exponent) << ','
         << (c.inverse_profile.super_polynomial ? 1 : 0) << ',' << format_number(c.residual) << '\n';
    }
  }
}

}  // namespace odd
