#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "odd/lattice_matrix.hpp"
#include "odd/norms.hpp"

namespace odd {

/// Envelope model |A(k, l)| <= c (1 + |k - l|_2)^{-r}.
struct DecayModel {
  enum class Kind { Deterministic, RandomPhase, RandomMagnitude };
  Kind kind = Kind::Deterministic;
  double r = 2.0;
  double c = 1.0;
  std::uint64_t seed = 0;

  friend bool operator==(const DecayModel&, const DecayModel&) = default;
};

std::string to_string(DecayModel::Kind k);
/// "det", "phase", "mag" (long forms "deterministic-envelope", "random-phase",
/// "random-magnitude" also accepted). Throws ParseError.
DecayModel::Kind parse_decay_kind(const std::string& text);

/// Entry (k, l) draws from a hash of (seed, k, l), so a larger window extends
/// a smaller one without changing shared entries.
///   det:   c (1 + |k - l|)^{-r}
///   phase: c (1 + |k - l|)^{-r} e^{2 pi i theta}, theta uniform
///   mag:   c (1 + |k - l|)^{-r} u, u uniform in [0, 1)
/// Throws InvalidArgument for r < 0, c <= 0 or W < 1.
LatticeMatrix generate(const DecayModel& model, int dim, int half_width);

/// `count` seeded models cycling through the three kinds, with r in [2, 4]
/// and c in [1/2, 2]; the models depend on (seed, index) only, not on W.
std::vector<DecayModel> decay_models(std::size_t count, std::uint64_t seed);
std::vector<LatticeMatrix> decay_corpus(int dim, int half_width, std::size_t count, std::uint64_t seed);

/// B = lambda ||A||_op I + A. Throws InvalidArgument for the zero matrix or lambda <= 1.
LatticeMatrix make_invertible(const LatticeMatrix& a, double lambda = 2.0);

/// Dense LU inverse of the window. Throws SingularSection when the smallest
/// singular value is below 1e-10 times the largest, NonConvergence when the
/// residual ||B X - I||_op exceeds 1e-8. `residual` receives ||B X - I||_F.
LatticeMatrix invert_finite_section(const LatticeMatrix& b, double* residual = nullptr);

struct DecayProfile {
  /// envelope[n] = max over |m|_inf = n and interior rows |k|_inf <= W/2 of |A(k, k - m)|.
  std::vector<double> envelope;
  int fit_lo = 0;
  int fit_hi = 0;
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the log-log fit.
  double residual = 0.0;
  double exponent = 0.0;
  /// Exponents fitted on the two halves of the fit window.
  double exponent_near = 0.0;
  double exponent_far = 0.0;
  /// Decay visibly faster than any fixed power (far exponent well above the near one).
  bool super_polynomial = false;
};

/// Fits log envelope(n) against log(1 + n) over n = fit_lo..fit_hi. The
/// default window (fit_hi = 0) is 1..floor(0.75 S) with S = floor(3W/2), the
/// largest shell with interior data. Zero envelope values are floored at
/// 1e-300. Throws InsufficientData with fewer than 8 nonzero shells in the window.
DecayProfile decay_profile(const LatticeMatrix& a, int fit_lo = 1, int fit_hi = 0);

void write_profile_csv(std::ostream& os, const DecayProfile& profile);

struct NormPair {
  std::string spec;
  double matrix = 0.0;
  double inverse = 0.0;
};

struct ReportCell {
  int half_width = 0;
  double op_norm = 0.0;
  double residual = 0.0;
  DecayProfile matrix_profile;
  DecayProfile inverse_profile;
  std::vector<NormPair> norms;
};

struct ReportOptions {
  double lambda = 2.0;
  int dim = 1;
  /// Quantity specs understood by evaluate_quantity (norm, besov, approx or bessel).
  std::vector<std::string> quantities;
};

struct SpectralReport {
  DecayModel model;
  ReportOptions options;
  std::vector<ReportCell> cells;
  /// Per quantity: relative change of the inverse's value between the two largest windows.
  std::vector<double> inverse_drift;
};

/// Default quantity list for a model: Jaffard(r), a Besov and a Bessel norm
/// of smoothness r - 1/2 over Jaffard(0).
std::vector<std::string> default_report_quantities(const DecayModel& model);

/// Runs generate / make_invertible / invert / profile per window. Windows must be
/// strictly increasing and at least 16.
SpectralReport spectral_invariance_report(const DecayModel& model, const std::vector<int>& windows,
                                          const ReportOptions& options);

void write_report_json(std::ostream& os, const SpectralReport& report, const std::string& config_json = "{}");
/// One row per (window, quantity):
/// W,quantity,matrix,inverse,exponent_matrix,exponent_inverse,super_polynomial_inverse,residual
void write_report_csv(std::ostream& os, const SpectralReport& report);

}  // namespace odd
