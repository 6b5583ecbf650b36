#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "odd/grammar.hpp"
#include "odd/norms.hpp"

namespace odd {

/// (1 + |2 pi m|^2)^{-r/2} per offset slot.
std::vector<double> bessel_multiplier(const Window& w, double r);

/// G_r * A: diagonal m scaled by (1 + |2 pi m|^2)^{-r/2}. Throws for r <= 0.
LatticeMatrix bessel_convolve(const LatticeMatrix& a, double r);

/// Norm of P_r(base): the base norm with diagonal m weighted by v*_r(m).
double bessel_norm(const LatticeMatrix& a, double r, const NormSpec& base);

/// mu_eps(m) = int_{eps <= |t|_2 <= 1} (e^{2 pi i m.t} - 1) |t|_2^{-r} dt / |t|^d, real
/// and even in m. d = 1 combines a Taylor series near eps with adaptive
/// Gauss-Kronrod panels; d = 2 integrates the angular part in closed form
/// (2 pi J0) and the radial part the same way.
double hypersingular_multiplier(const LatticeIndex& m, double r, double eps);

/// Quadrature setup: the epsilon grid 2^-first .. 2^-last, extended by
/// halving until the last three seminorm values agree within `tolerance`
/// (relative), up to 2^-max_exponent.
struct HypersingularQuadrature {
  int first_exponent = 1;
  int last_exponent = 12;
  int max_exponent = 40;
  double tolerance = 0.005;
};

/// Per-slot multiplier table for one epsilon.
struct HypersingularTable {
  Window window;
  double r = 0.0;
  std::vector<double> eps;
  /// values[e][slot]
  std::vector<std::vector<double>> values;
};

HypersingularTable hypersingular_table(const Window& w, double r, const std::vector<double>& eps);

/// CSV with header m,eps,re,im (m written as "m1" or "m1;m2"), one row per slot and epsilon.
void write_multiplier_csv(std::ostream& os, const HypersingularTable& table);

struct HypersingularResult {
  double value = 0.0;
  double base_norm = 0.0;
  /// sup over the grid of the seminorm part.
  double seminorm = 0.0;
  std::vector<double> eps;
  std::vector<double> seminorms;
  bool converged = false;
};

/// ||A||_base + max_eps ||A o mu_eps||_base. Reports convergence instead of throwing;
/// see hypersingular_norm_checked. Throws InvalidArgument unless 0 < r < 2.
HypersingularResult hypersingular_norm(const LatticeMatrix& a, double r, const NormSpec& base,
                                       const HypersingularQuadrature& quad = {});
/// As above but throws NonConvergence when the epsilon grid does not stabilize.
double hypersingular_norm_checked(const LatticeMatrix& a, double r, const NormSpec& base,
                                  const HypersingularQuadrature& quad = {});

struct EmbeddingReport {
  double besov_1 = 0.0;     // Lambda^1_r, solid-LP form
  double bessel = 0.0;      // P_r
  double besov_inf = 0.0;   // Lambda^inf_r, solid-LP form
  double lower_ratio = 0.0; // bessel / besov_1
  double upper_ratio = 0.0; // besov_inf / bessel
  std::optional<HypersingularResult> hypersingular;
  std::optional<double> hypersingular_ratio;  // hypersingular / bessel
  double s = 0.0;
  double p = 0.0;
  double smoothed = 0.0;    // Lambda^p_{r+s}(G_r * A)
  double unsmoothed = 0.0;  // Lambda^p_s(A)
  double smoothing_ratio = 0.0;
};

struct EmbeddingOptions {
  double s = 0.5;
  double p = kInf;
  bool hypersingular = true;
  HypersingularQuadrature quadrature{};
};

/// Throws NonSolidBase for the operator norm and InvalidArgument for r <= 0.
/// The hypersingular leg runs only for r < 2.
EmbeddingReport embedding_check(const LatticeMatrix& a, double r, const NormSpec& base,
                                const EmbeddingOptions& options = {});

/// Bessel quantity for the CLI: "bessel:base=jaffard:r=0,r=0.5,method=weighted|hypersingular".
struct BesselSpec {
  enum class Method { Weighted, Hypersingular };
  NormSpec base = NormSpec::jaffard(0.0);
  double r = 1.0;
  Method method = Method::Weighted;

  void validate() const;
  std::string to_string() const;
  friend bool operator==(const BesselSpec&, const BesselSpec&) = default;
};

BesselSpec parse_bessel_spec(const std::string& text);
BesselSpec parse_bessel_spec(grammar::Cursor& cursor);

}  // namespace odd
