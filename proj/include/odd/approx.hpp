#pragma once

#include <optional>
#include <string>
#include <vector>

#include "odd/grammar.hpp"
#include "odd/norms.hpp"

namespace odd {

/// Approximation space E^p_r over the banded scheme T_N.
struct ApproxSpaceSpec {
  enum class Form { IntegralSum, Dyadic };

  NormSpec base;
  double r = 1.0;
  double p = kInf;
  Form form = Form::IntegralSum;

  void validate() const;
  std::string to_string() const;
  friend bool operator==(const ApproxSpaceSpec&, const ApproxSpaceSpec&) = default;
};

std::string to_string(ApproxSpaceSpec::Form f);

/// "approx:base=jaffard:r=0,r=1,p=inf,form=sum" (form: sum or dyadic).
ApproxSpaceSpec parse_approx_spec(const std::string& text);
ApproxSpaceSpec parse_approx_spec(grammar::Cursor& cursor);

/// E_N(A) = ||A - T_N(A)||_base. Equal to the best-approximation error for
/// diagonal-separable bases; an upper bound (truncation as near-best
/// approximant) for the Schur and operator norms. Throws for N < 0.
double approx_error(const LatticeMatrix& a, int bandwidth, const NormSpec& base);

/// Whether approx_error is the exact infimum for this base.
inline bool approx_error_is_exact(const NormSpec& base) { return base.is_diagonal_separable(); }

/// E_0 .. E_{2W+1}; the last entry is always 0.
std::vector<double> approx_errors(const LatticeMatrix& a, const NormSpec& base);

/// Continuous-parameter error E_sigma = E_{ceil(sigma)}.
double approx_error_at(const std::vector<double>& errors, double sigma);

struct ApproxNorms {
  /// ( sum_{k=0}^{2W} E_k^p (k+1)^{rp} / (k+1) )^{1/p}.
  double integral_sum = 0.0;
  /// ( E_0^p + sum_{j >= 0, 2^j <= 2W} (2^{jr} E_{2^j})^p )^{1/p}.
  double dyadic = 0.0;
};

ApproxNorms approx_space_norms(const std::vector<double>& errors, double r, double p);
ApproxNorms approx_space_norms(const LatticeMatrix& a, const NormSpec& base, double r, double p);
double approx_space_norm(const LatticeMatrix& a, const ApproxSpaceSpec& spec);

/// Integral-sum approximation norm over the solid-LP Besov norm. Throws
/// InvalidArgument for the zero matrix or r <= 0.
double jackson_bernstein_ratio(const LatticeMatrix& a, const NormSpec& base, double r, double p);

struct CprShiftReport {
  /// E^q_s(C^p_r)
  double lhs = 0.0;
  /// E^q_{r+s}(C^p_0)
  double rhs = 0.0;
  double ratio = 0.0;
  /// For p == q: C^p_{r+s} norm and lhs over it.
  std::optional<double> direct;
  std::optional<double> direct_ratio;
};

CprShiftReport cpr_shift_identity_check(const LatticeMatrix& a, double p, double q, double r, double s);

}  // namespace odd
