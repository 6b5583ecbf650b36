#pragma once

#include <memory>
#include <string>
#include <vector>

#include "odd/grammar.hpp"
#include "odd/norms.hpp"

namespace odd {

/// Besov norm Lambda^p_r over a base norm, in one of three computable forms.
struct BesovSpec {
  enum class Method { Modulus, SolidLP, PhiLP };

  NormSpec base;
  double r = 1.0;
  double p = kInf;
  /// Difference order; 0 selects floor(r) + 1.
  int order = 0;
  Method method = Method::Modulus;
  int level_min = 0;
  /// -1 selects ceil(log2(2W)) + 2.
  int level_max = -1;
  /// t-grid points per axis; 0 selects 64 for d = 1 and 32 for d = 2.
  int grid = 0;

  int resolved_order() const;
  int resolved_level_max(const Window& w) const;
  int resolved_grid(int dim) const;
  /// Throws InvalidArgument when r <= 0, p < 1, order <= floor(r) or grid < 8.
  void validate() const;

  std::string to_string() const;
  friend bool operator==(const BesovSpec&, const BesovSpec&) = default;
};

std::string to_string(BesovSpec::Method m);

/// "besov:base=jaffard:r=0,r=1.5,p=inf,method=solidlp". Optional keys:
/// k (order), lmin, lmax, grid. Methods: modulus, solidlp, philp.
BesovSpec parse_besov_spec(const std::string& text);
BesovSpec parse_besov_spec(grammar::Cursor& cursor);

/// Sampled dyadic partition of unity on the integer frequencies of a window.
/// phi(w) = g(|w|_inf) / sum_j g(2^-j |w|_inf) with g a C-infinity bump
/// supported on (1/2, 2); block k >= 0 samples phi(2^-k l), block -1 is
/// 1 minus the sum of the others.
class DyadicPartition {
 public:
  explicit DyadicPartition(const Window& w);

  /// The bump g on (1/2, 2), centred at 5/4.
  static double bump(double u);
  /// phi at |w|_inf = u.
  static double profile(double u);

  const Window& window() const { return window_; }
  /// Highest block index K; blocks run -1..K.
  int top_level() const { return int(blocks_.size()) - 2; }
  const std::vector<double>& block(int k) const { return blocks_.at(std::size_t(k + 1)); }
  double value(int k, const LatticeIndex& l) const { return block(k)[window_.slot(l)]; }
  /// max_l |sum_k phi_k(l) - 1| over the window offsets.
  double identity_residual() const;

 private:
  Window window_;
  std::vector<std::vector<double>> blocks_;
};

/// omega^k_h(A): max over the G^d grid points t in [-h, h]^d of ||Delta^k_t A||_base.
double modulus(const LatticeMatrix& a, const NormSpec& base, int order, double h, int grid);

/// Modulus-form Besov norm over an arbitrary prepared inner norm:
/// ||A|| + ( sum_{l = lmin..lmax} (2^{rl} omega^k_{2^-l})^p )^{1/p}.
/// Level moduli are accumulated from the finest level outwards so the
/// sequence is nondecreasing in h. Solid inner norms use |mu| only.
std::unique_ptr<MatrixNorm> modulus_besov_norm(std::shared_ptr<const MatrixNorm> inner, double r, double p,
                                               int order, int level_min, int level_max, int grid);

/// Prepared evaluator for any BesovSpec (mu -> ||A o mu||_Besov).
std::unique_ptr<MatrixNorm> prepare_besov(const BesovSpec& spec, const LatticeMatrix& a);

double besov_norm(const LatticeMatrix& a, const BesovSpec& spec);
double besov_norm_modulus(const LatticeMatrix& a, const BesovSpec& spec);
/// ( sum_{k=-1..ceil(log2 2W)} (2^{kr} ||sum_{floor(2^k) <= |l|_inf < 2^{k+1}} A(l)||)^p )^{1/p}.
/// Throws NonSolidBase for the operator norm.
double besov_norm_solid_lp(const LatticeMatrix& a, const NormSpec& base, double r, double p);
double besov_norm_phi_lp(const LatticeMatrix& a, const NormSpec& base, double r, double p);

/// Iterated modulus norm Lambda^p_s(Lambda^p_r) divided by Lambda^p_{r+s}.
/// Throws InvalidArgument for the zero matrix or r, s <= 0.
double reiteration_ratio(const LatticeMatrix& a, const NormSpec& base, double r, double s, double p = kInf);

struct ContinuityDefect {
  std::vector<double> h;
  std::vector<double> modulus;
  /// tail[N] = sup_{|m|_inf > N} v_r(m) sup_k |A(k, k - m)| for N = 0..2W.
  std::vector<double> tail;
};

/// First-order moduli along a decreasing h sequence plus the weighted tail profile.
ContinuityDefect continuity_defect(const LatticeMatrix& a, const NormSpec& base, const std::vector<double>& hs,
                                   double tail_r, int grid = 0);

}  // namespace odd
