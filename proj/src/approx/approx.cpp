#include "odd/approx.hpp"

#include <cmath>
#include <set>

#include "odd/errors.hpp"
#include "odd/smoothness.hpp"

namespace odd {

using grammar::Cursor;
using grammar::format_number;

void ApproxSpaceSpec::validate() const {
  if (!(r > 0.0) || std::isinf(r)) throw InvalidArgument("approximation order r must be finite and > 0");
  if (!(p >= 1.0)) throw InvalidArgument("summability p must lie in [1, inf]");
}

std::string to_string(ApproxSpaceSpec::Form f) { return f == ApproxSpaceSpec::Form::Dyadic ? "dyadic" : "sum"; }

std::string ApproxSpaceSpec::to_string() const {
  return "approx:base=" + base.to_string() + ",r=" + format_number(r) + ",p=" + format_number(p) +
         ",form=" + odd::to_string(form);
}

ApproxSpaceSpec parse_approx_spec(Cursor& cur) {
  if (cur.identifier() != "approx") cur.fail("expected 'approx'");
  cur.expect(":");
  static const std::set<std::string> allowed{"base", "r", "p", "form"};
  ApproxSpaceSpec spec;
  std::set<std::string> seen;
  for (bool first = true;; first = false) {
    const std::string key = cur.peek_item_key(!first);
    if (key.empty() || !allowed.count(key) || seen.count(key)) {
      if (first) cur.fail("expected an approximation-space parameter");
      break;
    }
    if (!first) cur.expect(",");
    cur.expect(key);
    cur.expect("=");
    if (key == "base") {
      spec.base = parse_norm_spec(cur);
    } else if (key == "r") {
      spec.r = cur.number();
    } else if (key == "p") {
      spec.p = cur.number();
    } else {
      const std::string f = cur.value();
      if (f == "sum")
        spec.form = ApproxSpaceSpec::Form::IntegralSum;
      else if (f == "dyadic")
        spec.form = ApproxSpaceSpec::Form::Dyadic;
      else
        cur.fail("unknown form '" + f + "'");
    }
    seen.insert(key);
  }
  if (!seen.count("base")) cur.fail("approximation spec needs base=");
  if (!seen.count("r")) cur.fail("approximation spec needs r=");
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    cur.fail(e.what());
  }
  return spec;
}

ApproxSpaceSpec parse_approx_spec(const std::string& text) {
  Cursor cur(text);
  ApproxSpaceSpec spec = parse_approx_spec(cur);
  if (!cur.done()) cur.fail("unexpected trailing text");
  return spec;
}

namespace {

Multiplier tail_multiplier(const Window& w, int bandwidth) {
  Multiplier mult(w.offset_count());
  for (std::size_t s = 0; s < mult.size(); ++s) mult[s] = w.offset(s).norm_inf() >= bandwidth ? 1.0 : 0.0;
  return mult;
}

}  // namespace

double approx_error(const LatticeMatrix& a, int bandwidth, const NormSpec& base) {
  if (bandwidth < 0) throw InvalidArgument("bandwidth must be >= 0");
  if (bandwidth > a.bandwidth_inf()) return 0.0;
  return (*prepare_norm(base, a))(tail_multiplier(a.window(), bandwidth));
}

std::vector<double> approx_errors(const LatticeMatrix& a, const NormSpec& base) {
  const Window& w = a.window();
  const int count = w.max_offset() + 2;
  std::vector<double> out(std::size_t(count), 0.0);
  const int band = a.bandwidth_inf();
  const auto norm = prepare_norm(base, a);
#pragma omp parallel for schedule(dynamic)
  for (int n = 0; n <= band; ++n) out[std::size_t(n)] = (*norm)(tail_multiplier(w, n));
  return out;
}

double approx_error_at(const std::vector<double>& errors, double sigma) {
  if (!(sigma >= 0.0)) throw InvalidArgument("sigma must be >= 0");
  const double n = std::ceil(sigma);
  if (n >= double(errors.size())) return 0.0;
  return errors[std::size_t(n)];
}

ApproxNorms approx_space_norms(const std::vector<double>& errors, double r, double p) {
  ApproxNorms out;
  const std::size_t top = errors.empty() ? 0 : errors.size() - 1;  // k = 0 .. 2W
  const bool inf = std::isinf(p);
  PNormAccumulator sum(p);
  for (std::size_t k = 0; k < top; ++k) {
    const double k1 = double(k + 1);
    sum.add(inf ? errors[k] * std::pow(k1, r) : errors[k] * std::pow(k1, r - 1.0 / p));
  }
  out.integral_sum = sum.result();
  PNormAccumulator dyadic(p);
  if (!errors.empty()) dyadic.add(errors[0]);
  for (std::size_t n = 1; n < top; n *= 2) dyadic.add(std::pow(double(n), r) * errors[n]);
  out.dyadic = dyadic.result();
  return out;
}

ApproxNorms approx_space_norms(const LatticeMatrix& a, const NormSpec& base, double r, double p) {
  return approx_space_norms(approx_errors(a, base), r, p);
}

double approx_space_norm(const LatticeMatrix& a, const ApproxSpaceSpec& spec) {
  spec.validate();
  const ApproxNorms n = approx_space_norms(a, spec.base, spec.r, spec.p);
  return spec.form == ApproxSpaceSpec::Form::Dyadic ? n.dyadic : n.integral_sum;
}

double jackson_bernstein_ratio(const LatticeMatrix& a, const NormSpec& base, double r, double p) {
  if (!(r > 0.0)) throw InvalidArgument("r must be > 0");
  if (a.is_zero()) throw InvalidArgument("Jackson-Bernstein ratio of the zero matrix is undefined");
  return approx_space_norms(a, base, r, p).integral_sum / besov_norm_solid_lp(a, base, r, p);
}

CprShiftReport cpr_shift_identity_check(const LatticeMatrix& a, double p, double q, double r, double s) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw InvalidArgument("p, q must lie in [1, inf]");
  if (!(r >= 0.0) || !(s > 0.0)) throw InvalidArgument("need r >= 0 and s > 0");
  CprShiftReport out;
  out.lhs = approx_space_norms(a, NormSpec::cpr(p, r), s, q).integral_sum;
  out.rhs = approx_space_norms(a, NormSpec::cpr(p, 0.0), r + s, q).integral_sum;
  out.ratio = out.rhs == 0.0 ? (out.lhs == 0.0 ? 1.0 : kInf) : out.lhs / out.rhs;
  if (p == q) {
    out.direct = cpr_norm(a, p, r + s);
    out.direct_ratio = *out.direct == 0.0 ? 1.0 : out.lhs / *out.direct;
  }
  return out;
}

}  // namespace odd
