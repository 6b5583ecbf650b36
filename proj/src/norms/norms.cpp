#include "odd/norms.hpp"

#include <numbers>
#include <set>

#include <Eigen/SVD>

#include "odd/errors.hpp"
#include "odd/kernels.hpp"

namespace odd {

using grammar::Cursor;
using grammar::format_number;

double polynomial_weight(const LatticeIndex& m, double r) { return std::pow(1.0 + m.norm2(), r); }

double bessel_weight(const LatticeIndex& m, double r) {
  const double x = 2.0 * std::numbers::pi * m.norm2();
  return std::pow(1.0 + x * x, r / 2.0);
}

double WeightSpec::operator()(const LatticeIndex& m) const {
  return kind == Kind::Polynomial ? polynomial_weight(m, r) : bessel_weight(m, r);
}

namespace norm_kind {
bool operator==(const Weighted& a, const Weighted& b) {
  if (!(a.weight == b.weight)) return false;
  if (!a.base || !b.base) return a.base == b.base;
  return *a.base == *b.base;
}
}  // namespace norm_kind

bool NormSpec::is_solid() const {
  return std::visit(
      [](const auto& k) -> bool {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, norm_kind::OperatorL2>)
          return false;
        else if constexpr (std::is_same_v<T, norm_kind::Weighted>)
          return k.base && k.base->is_solid();
        else
          return true;
      },
      kind_);
}

bool NormSpec::is_diagonal_separable() const {
  return std::visit(
      [](const auto& k) -> bool {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, norm_kind::Jaffard> || std::is_same_v<T, norm_kind::CpDiag>)
          return true;
        else if constexpr (std::is_same_v<T, norm_kind::Weighted>)
          return k.base && k.base->is_diagonal_separable();
        else
          return false;
      },
      kind_);
}

std::string format_p(double p) { return format_number(p); }

std::string NormSpec::to_string() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, norm_kind::OperatorL2>) {
          return "op";
        } else if constexpr (std::is_same_v<T, norm_kind::Jaffard>) {
          return "jaffard:r=" + format_number(k.r);
        } else if constexpr (std::is_same_v<T, norm_kind::Schur>) {
          return "schur:p=" + format_number(k.p) + ",r=" + format_number(k.r);
        } else if constexpr (std::is_same_v<T, norm_kind::CpDiag>) {
          return "cpr:p=" + format_number(k.p) + ",r=" + format_number(k.r) + (k.literal ? ",literal=1" : "");
        } else {
          const char* wk = k.weight.kind == WeightSpec::Kind::Bessel ? "bessel" : "poly";
          return std::string("w[") + wk + ":r=" + format_number(k.weight.r) + "]" + k.base->to_string();
        }
      },
      kind_);
}

namespace {

// Reads "key=value" items belonging to a norm: the first directly, the rest
// after commas, stopping at a key that is foreign or already seen.
template <typename Apply>
void parse_params(Cursor& cur, const std::set<std::string>& allowed, Apply apply) {
  std::set<std::string> seen;
  bool first = true;
  for (;;) {
    const std::string key = cur.peek_item_key(!first);
    if (key.empty() || !allowed.count(key) || seen.count(key)) {
      if (first) cur.fail("expected one of the parameters of this norm");
      return;
    }
    if (!first) cur.expect(",");
    cur.expect(key);
    cur.expect("=");
    apply(key, cur);
    seen.insert(key);
    first = false;
  }
}

void check_p(double p, Cursor& cur) {
  if (!(p >= 1.0)) cur.fail("p must lie in [1, inf]");
}

void check_r(double r, Cursor& cur) {
  if (!(r >= 0.0) || std::isinf(r)) cur.fail("r must be a finite value >= 0");
}

}  // namespace

NormSpec parse_norm_spec(Cursor& cur) {
  const std::string kind = cur.identifier();
  if (kind == "op") return NormSpec::op();
  if (kind == "jaffard") {
    cur.expect(":");
    double r = 0.0;
    parse_params(cur, {"r"}, [&](const std::string&, Cursor& c) { r = c.number(); });
    check_r(r, cur);
    return NormSpec::jaffard(r);
  }
  if (kind == "schur" || kind == "cpr") {
    cur.expect(":");
    double p = 1.0, r = 0.0;
    bool literal = false;
    std::set<std::string> keys{"p", "r"};
    if (kind == "cpr") keys.insert("literal");
    parse_params(cur, keys, [&](const std::string& key, Cursor& c) {
      if (key == "p") p = c.number();
      if (key == "r") r = c.number();
      if (key == "literal") {
        const std::string v = c.value();
        if (v == "1" || v == "true")
          literal = true;
        else if (v == "0" || v == "false")
          literal = false;
        else
          c.fail("literal expects 0/1");
      }
    });
    check_p(p, cur);
    check_r(r, cur);
    return kind == "schur" ? NormSpec::schur(p, r) : NormSpec::cpr(p, r, literal);
  }
  if (kind == "w") {
    cur.expect("[");
    const std::string wk = cur.identifier();
    WeightSpec w;
    if (wk == "bessel")
      w.kind = WeightSpec::Kind::Bessel;
    else if (wk == "poly" || wk == "polynomial")
      w.kind = WeightSpec::Kind::Polynomial;
    else
      cur.fail("unknown weight kind '" + wk + "'");
    cur.expect(":");
    cur.expect("r=");
    w.r = cur.number();
    check_r(w.r, cur);
    cur.expect("]");
    const NormSpec base = parse_norm_spec(cur);
    if (!base.is_solid()) throw NonSolidBase("weighted norms need a solid base, got '" + base.to_string() + "'");
    return NormSpec::weighted(base, w);
  }
  cur.fail("unknown norm kind '" + kind + "'");
}

NormSpec parse_norm_spec(const std::string& text) {
  Cursor cur(text);
  NormSpec spec = parse_norm_spec(cur);
  if (!cur.done()) cur.fail("unexpected trailing text");
  return spec;
}

std::string parameter_warning(double p, double r, int dim) {
  if (p == 1.0) return r >= 0.0 ? std::string() : "r must be >= 0 for p = 1";
  const double threshold = std::isinf(p) ? double(dim) : double(dim) * (1.0 - 1.0 / p);
  if (r > threshold) return {};
  return "r = " + format_number(r) + " <= d(1-1/p) = " + format_number(threshold) + " for p = " + format_p(p) +
         ": not an algebra norm on all of Z^d";
}

// --- evaluators -----------------------------------------------------------------

double MatrixNorm::evaluate_abs(std::span<const double>) const {
  throw NonSolidBase("this norm is not solid; it needs the full complex multiplier");
}

double MatrixNorm::value() const {
  const Multiplier ones = ones_multiplier(window_);
  return (*this)(ones);
}

namespace {

std::vector<double> abs_of(std::span<const cplx> mult) {
  std::vector<double> mag(mult.size());
  for (std::size_t i = 0; i < mult.size(); ++i) mag[i] = std::abs(mult[i]);
  return mag;
}

class SolidNorm : public MatrixNorm {
 public:
  using MatrixNorm::MatrixNorm;
  bool is_solid() const override { return true; }
  double operator()(std::span<const cplx> mult) const override {
    const auto mag = abs_of(mult);
    return evaluate_abs(mag);
  }
};

// ( sum_m (|mu(m)| profile(m))^p )^{1/p}
class SeparableNorm final : public SolidNorm {
 public:
  SeparableNorm(Window w, std::vector<double> profile, double p)
      : SolidNorm(w), profile_(std::move(profile)), p_(p) {
    for (std::size_t s = 0; s < profile_.size(); ++s)
      if (profile_[s] != 0.0) support_.push_back(s);
  }
  double evaluate_abs(std::span<const double> mag) const override {
    PNormAccumulator acc(p_);
    for (const std::size_t s : support_) acc.add(mag[s] * profile_[s]);
    return acc.result();
  }

 private:
  std::vector<double> profile_;
  std::vector<std::size_t> support_;
  double p_;
};

class SchurNorm final : public SolidNorm {
 public:
  SchurNorm(const LatticeMatrix& a, double p, std::vector<double> weight)
      : SolidNorm(a.window()), table_(a, p), weight_(std::move(weight)), p_(p) {}
  double evaluate_abs(std::span<const double> mag) const override {
    std::vector<double> coeff(mag.size());
    const bool inf = std::isinf(p_);
    for (std::size_t s = 0; s < coeff.size(); ++s) {
      const double c = mag[s] * weight_[s];
      coeff[s] = inf ? c : std::pow(c, p_);
    }
    const double line = table_.max_weighted_line(coeff);
    return inf ? line : std::pow(line, 1.0 / p_);
  }

 private:
  kernels::RowColumnTable table_;
  std::vector<double> weight_;
  double p_;
};

class OperatorNorm final : public MatrixNorm {
 public:
  explicit OperatorNorm(const LatticeMatrix& a) : MatrixNorm(a.window()), a_(a), envelope_(kernels::diagonal_envelope(a)) {}
  bool is_solid() const override { return false; }
  double operator()(std::span<const cplx> mult) const override {
    // A single side diagonal has one entry per row and column: its norm is its largest entry.
    std::size_t nonzero = 0, last = 0;
    for (std::size_t s = 0; s < mult.size(); ++s) {
      if (mult[s] != cplx(0.0) && envelope_[s] != 0.0) {
        ++nonzero;
        last = s;
      }
    }
    if (nonzero == 0) return 0.0;
    if (nonzero == 1) return std::abs(mult[last]) * envelope_[last];
    return op_norm_l2(kernels::apply_multiplier(a_, mult));
  }

 private:
  LatticeMatrix a_;
  std::vector<double> envelope_;
};

std::unique_ptr<MatrixNorm> prepare_weighted(const NormSpec& spec, const LatticeMatrix& a, std::vector<double> weight) {
  const Window& w = a.window();
  return std::visit(
      [&](const auto& k) -> std::unique_ptr<MatrixNorm> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, norm_kind::OperatorL2>) {
          for (double x : weight)
            if (x != 1.0) throw NonSolidBase("weighted norms need a solid base");
          return std::make_unique<OperatorNorm>(a);
        } else if constexpr (std::is_same_v<T, norm_kind::Jaffard>) {
          auto profile = kernels::diagonal_envelope(a);
          for (std::size_t s = 0; s < profile.size(); ++s)
            profile[s] *= weight[s] * polynomial_weight(w.offset(s), k.r);
          return std::make_unique<SeparableNorm>(w, std::move(profile), kInf);
        } else if constexpr (std::is_same_v<T, norm_kind::CpDiag>) {
          auto profile = k.literal ? kernels::diagonal_pnorm(a, k.p) : kernels::diagonal_envelope(a);
          for (std::size_t s = 0; s < profile.size(); ++s)
            profile[s] *= weight[s] * polynomial_weight(w.offset(s), k.r);
          return std::make_unique<SeparableNorm>(w, std::move(profile), k.p);
        } else if constexpr (std::is_same_v<T, norm_kind::Schur>) {
          for (std::size_t s = 0; s < weight.size(); ++s) weight[s] *= polynomial_weight(w.offset(s), k.r);
          return std::make_unique<SchurNorm>(a, k.p, std::move(weight));
        } else {
          if (!k.base || !k.base->is_solid()) throw NonSolidBase("weighted norms need a solid base");
          for (std::size_t s = 0; s < weight.size(); ++s) weight[s] *= k.weight(w.offset(s));
          return prepare_weighted(*k.base, a, std::move(weight));
        }
      },
      spec.kind());
}

}  // namespace

std::unique_ptr<MatrixNorm> prepare_norm(const NormSpec& spec, const LatticeMatrix& a) {
  return prepare_weighted(spec, a, std::vector<double>(a.window().offset_count(), 1.0));
}

double op_norm_l2(const LatticeMatrix& a) {
  if (a.is_zero()) return 0.0;
  if (a.window().size() > kDenseSvdLimit) return op_norm_l2_power(a);
  const Eigen::MatrixXcd dense = a.to_dense();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(dense);
  return svd.singularValues()(0);
}

double op_norm_l2_power(const LatticeMatrix& a, double rel_tol, int max_iter) {
  if (a.is_zero()) return 0.0;
  const auto n = Eigen::Index(a.window().size());
  // Deterministic start with all components nonzero.
  Eigen::VectorXcd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = cplx(1.0 + 0.37 * std::sin(double(i)), 0.11 * std::cos(3.0 * double(i)));
  x.normalize();
  double sigma = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXcd y = kernels::matvec(a, x);
    const double next = y.norm();
    Eigen::VectorXcd z = kernels::matvec_adjoint(a, y);
    const double zn = z.norm();
    if (zn == 0.0) return next;
    x = z / zn;
    if (it > 2 && std::abs(next - sigma) <= rel_tol * next) return next;
    sigma = next;
  }
  throw NonConvergence("power iteration for the operator norm did not converge");
}

double jaffard_norm(const LatticeMatrix& a, double r) { return prepare_norm(NormSpec::jaffard(r), a)->value(); }

double schur_norm(const LatticeMatrix& a, double p, double r) {
  return prepare_norm(NormSpec::schur(p, r), a)->value();
}

double cpr_norm(const LatticeMatrix& a, double p, double r) { return prepare_norm(NormSpec::cpr(p, r), a)->value(); }

double cpr_norm_literal(const LatticeMatrix& a, double p, double r) {
  return prepare_norm(NormSpec::cpr(p, r, true), a)->value();
}

double weighted_norm(const LatticeMatrix& a, const NormSpec& base, const WeightSpec& w) {
  if (!base.is_solid()) throw NonSolidBase("weighted norms need a solid base, got '" + base.to_string() + "'");
  return prepare_norm(NormSpec::weighted(base, w), a)->value();
}

double norm(const LatticeMatrix& a, const NormSpec& spec) { return prepare_norm(spec, a)->value(); }

}  // namespace odd
