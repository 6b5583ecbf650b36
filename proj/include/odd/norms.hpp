#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "odd/grammar.hpp"
#include "odd/lattice_matrix.hpp"
#include "odd/ops.hpp"

namespace odd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Diagonal weight m -> v(m).
///   polynomial(r): v_r(m)  = (1 + |m|_2)^r
///   bessel(r):     v*_r(m) = (1 + |2 pi m|_2^2)^{r/2}
struct WeightSpec {
  enum class Kind { Polynomial, Bessel };
  Kind kind = Kind::Polynomial;
  double r = 0.0;

  static WeightSpec polynomial(double r) { return {Kind::Polynomial, r}; }
  static WeightSpec bessel(double r) { return {Kind::Bessel, r}; }

  double operator()(const LatticeIndex& m) const;
  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

double polynomial_weight(const LatticeIndex& m, double r);
double bessel_weight(const LatticeIndex& m, double r);

class NormSpec;

namespace norm_kind {
struct OperatorL2 {
  friend bool operator==(const OperatorL2&, const OperatorL2&) = default;
};
/// sup_m v_r(m) sup_k |A(k, k - m)|.
struct Jaffard {
  double r = 0.0;
  friend bool operator==(const Jaffard&, const Jaffard&) = default;
};
/// max of the weighted row and column l^p norms.
struct Schur {
  double p = 1.0;
  double r = 0.0;
  friend bool operator==(const Schur&, const Schur&) = default;
};
/// ( sum_m (v_r(m) sup_k |A(k, k - m)|)^p )^{1/p}. With `literal` the inner
/// sup is replaced by the l^p sum over the diagonal (double-sum reading).
struct CpDiag {
  double p = 1.0;
  double r = 0.0;
  bool literal = false;
  friend bool operator==(const CpDiag&, const CpDiag&) = default;
};
struct Weighted {
  std::shared_ptr<const NormSpec> base;
  WeightSpec weight;
  friend bool operator==(const Weighted& a, const Weighted& b);
};
}  // namespace norm_kind

/// One of the base algebra norms. Value type; Weighted shares its immutable base.
class NormSpec {
 public:
  using Kind = std::variant<norm_kind::OperatorL2, norm_kind::Jaffard, norm_kind::Schur, norm_kind::CpDiag,
                            norm_kind::Weighted>;

  NormSpec() : kind_(norm_kind::OperatorL2{}) {}
  NormSpec(Kind kind) : kind_(std::move(kind)) {}  // NOLINT(google-explicit-constructor)

  static NormSpec op() { return Kind(norm_kind::OperatorL2{}); }
  static NormSpec jaffard(double r) { return Kind(norm_kind::Jaffard{r}); }
  static NormSpec schur(double p, double r) { return Kind(norm_kind::Schur{p, r}); }
  static NormSpec cpr(double p, double r, bool literal = false) { return Kind(norm_kind::CpDiag{p, r, literal}); }
  static NormSpec weighted(const NormSpec& base, WeightSpec w) {
    return Kind(norm_kind::Weighted{std::make_shared<const NormSpec>(base), w});
  }

  const Kind& kind() const { return kind_; }
  /// Every kind except the operator norm depends only on |A(k, l)|.
  bool is_solid() const;
  /// Truncation is a best approximant for these (Jaffard, CpDiag and weighted forms of them).
  bool is_diagonal_separable() const;

  std::string to_string() const;
  friend bool operator==(const NormSpec& a, const NormSpec& b) { return a.kind_ == b.kind_; }

 private:
  Kind kind_;
};

/// Parses the compact grammar: "op", "jaffard:r=2", "schur:p=1,r=0",
/// "cpr:p=2,r=1.5", "cpr:p=2,r=1,literal=1", "w[bessel:r=1]jaffard:r=0",
/// "w[poly:r=1]schur:p=1,r=0". p accepts "inf". Throws ParseError.
NormSpec parse_norm_spec(const std::string& text);
/// Parses a norm spec embedded in a larger spec; stops before the first
/// parameter that does not belong to the norm (e.g. the ",r=1.5" in
/// "besov:base=jaffard:r=0,r=1.5").
NormSpec parse_norm_spec(grammar::Cursor& cursor);

/// Warning text when (p, r) lies outside the range where the class is an
/// algebra (p > 1 needs r > d(1 - 1/p)); empty when admissible.
std::string parameter_warning(double p, double r, int dim);

// --- evaluators ---------------------------------------------------------------

/// Norm of a fixed matrix composed with any diagonal multiplier, i.e. the
/// map mu -> ||A o mu|| where diagonal m of A is scaled by mu(m). Construction
/// precomputes what the norm needs from A; evaluation is then cheap for the
/// diagonal-separable and Schur kinds.
class MatrixNorm {
 public:
  virtual ~MatrixNorm() = default;

  virtual double operator()(std::span<const cplx> mult) const = 0;
  /// Solid evaluators depend on |mu| only; they accept magnitudes directly.
  virtual bool is_solid() const = 0;
  virtual double evaluate_abs(std::span<const double> mag) const;

  double value() const;
  const Window& window() const { return window_; }

 protected:
  explicit MatrixNorm(Window w) : window_(w) {}
  Window window_;
};

std::unique_ptr<MatrixNorm> prepare_norm(const NormSpec& spec, const LatticeMatrix& a);

/// Dense-window size above which op_norm_l2 switches from SVD to power iteration.
inline constexpr std::size_t kDenseSvdLimit = 2048;

double op_norm_l2(const LatticeMatrix& a);
/// Power-iteration estimate of the largest singular value (used above kDenseSvdLimit).
double op_norm_l2_power(const LatticeMatrix& a, double rel_tol = 1e-12, int max_iter = 20000);
double jaffard_norm(const LatticeMatrix& a, double r);
double schur_norm(const LatticeMatrix& a, double p, double r);
double cpr_norm(const LatticeMatrix& a, double p, double r);
double cpr_norm_literal(const LatticeMatrix& a, double p, double r);
/// Throws NonSolidBase when base is the operator norm.
double weighted_norm(const LatticeMatrix& a, const NormSpec& base, const WeightSpec& w);
double norm(const LatticeMatrix& a, const NormSpec& spec);

/// l^p accumulator with p = inf as the limit (running max).
class PNormAccumulator {
 public:
  explicit PNormAccumulator(double p) : p_(p), inf_(std::isinf(p)) {}
  void add(double x) {
    if (inf_)
      acc_ = std::max(acc_, x);
    else
      acc_ += std::pow(x, p_);
  }
  double result() const { return inf_ ? acc_ : std::pow(acc_, 1.0 / p_); }

 private:
  double p_;
  bool inf_;
  double acc_ = 0.0;
};

std::string format_p(double p);

}  // namespace odd
