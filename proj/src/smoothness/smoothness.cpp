#include "odd/smoothness.hpp"

#include <cmath>
#include <set>

#include "odd/errors.hpp"
#include "odd/kernels.hpp"

namespace odd {

using grammar::Cursor;
using grammar::format_number;

// --- spec -------------------------------------------------------------------------

int BesovSpec::resolved_order() const { return order > 0 ? order : int(std::floor(r)) + 1; }

int BesovSpec::resolved_level_max(const Window& w) const {
  if (level_max >= 0) return level_max;
  return int(std::ceil(std::log2(double(w.max_offset())))) + 2;
}

int BesovSpec::resolved_grid(int dim) const {
  if (grid > 0) return grid;
  return dim == 1 ? 64 : 32;
}

void BesovSpec::validate() const {
  if (!(r > 0.0) || std::isinf(r)) throw InvalidArgument("Besov smoothness r must be finite and > 0");
  if (!(p >= 1.0)) throw InvalidArgument("Besov summability p must lie in [1, inf]");
  if (order != 0 && order <= int(std::floor(r))) throw InvalidArgument("difference order k must exceed floor(r)");
  if (grid != 0 && grid < 8) throw InvalidArgument("t-grid needs at least 8 points per axis");
  if (level_min < 0) throw InvalidArgument("lmin must be >= 0");
  if (level_max >= 0 && level_max < level_min) throw InvalidArgument("lmax must be >= lmin");
  if (method == Method::SolidLP && !base.is_solid())
    throw NonSolidBase("the solid-LP form needs a solid base, got '" + base.to_string() + "'");
}

std::string to_string(BesovSpec::Method m) {
  switch (m) {
    case BesovSpec::Method::Modulus:
      return "modulus";
    case BesovSpec::Method::SolidLP:
      return "solidlp";
    case BesovSpec::Method::PhiLP:
      return "philp";
  }
  return "?";
}

std::string BesovSpec::to_string() const {
  std::string s = "besov:base=" + base.to_string() + ",r=" + format_number(r) + ",p=" + format_number(p) +
                  ",method=" + odd::to_string(method);
  if (order != 0) s += ",k=" + std::to_string(order);
  if (level_min != 0) s += ",lmin=" + std::to_string(level_min);
  if (level_max != -1) s += ",lmax=" + std::to_string(level_max);
  if (grid != 0) s += ",grid=" + std::to_string(grid);
  return s;
}

namespace {

int integer_value(Cursor& cur) {
  const double v = cur.number();
  if (v != std::floor(v) || std::abs(v) > 1e6) cur.fail("expected an integer");
  return int(v);
}

}  // namespace

BesovSpec parse_besov_spec(Cursor& cur) {
  if (cur.identifier() != "besov") cur.fail("expected 'besov'");
  cur.expect(":");
  static const std::set<std::string> allowed{"base", "r", "p", "method", "k", "lmin", "lmax", "grid"};
  BesovSpec spec;
  std::set<std::string> seen;
  for (bool first = true;; first = false) {
    const std::string key = cur.peek_item_key(!first);
    if (key.empty() || !allowed.count(key) || seen.count(key)) {
      if (first) cur.fail("expected a Besov parameter");
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
    } else if (key == "method") {
      const std::string m = cur.value();
      if (m == "modulus")
        spec.method = BesovSpec::Method::Modulus;
      else if (m == "solidlp")
        spec.method = BesovSpec::Method::SolidLP;
      else if (m == "philp")
        spec.method = BesovSpec::Method::PhiLP;
      else
        cur.fail("unknown Besov method '" + m + "'");
    } else if (key == "k") {
      spec.order = integer_value(cur);
    } else if (key == "lmin") {
      spec.level_min = integer_value(cur);
    } else if (key == "lmax") {
      spec.level_max = integer_value(cur);
    } else if (key == "grid") {
      spec.grid = integer_value(cur);
    }
    seen.insert(key);
  }
  if (!seen.count("base")) cur.fail("Besov spec needs base=");
  if (!seen.count("r")) cur.fail("Besov spec needs r=");
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    cur.fail(e.what());
  }
  return spec;
}

BesovSpec parse_besov_spec(const std::string& text) {
  Cursor cur(text);
  BesovSpec spec = parse_besov_spec(cur);
  if (!cur.done()) cur.fail("unexpected trailing text");
  return spec;
}

// --- partition --------------------------------------------------------------------

double DyadicPartition::bump(double u) {
  const double x = (u - 1.25) / 0.75;
  if (!(std::abs(x) < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

double DyadicPartition::profile(double u) {
  if (!(u > 0.0)) return 0.0;
  const double g = bump(u);
  if (g == 0.0) return 0.0;
  // Only u0 and 2 u0 with u0 in [1/2, 1) on the orbit 2^j u meet the support.
  int e = 0;
  const double u0 = std::frexp(u, &e);
  return g / (bump(u0) + bump(2.0 * u0));
}

DyadicPartition::DyadicPartition(const Window& w) : window_(w) {
  const int top = int(std::ceil(std::log2(double(w.max_offset()))));
  const std::size_t n = w.offset_count();
  blocks_.assign(std::size_t(top + 2), std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    const double u = double(w.offset(s).norm_inf());
    double sum = 0.0;
    for (int k = 0; k <= top; ++k) {
      const double v = profile(std::ldexp(u, -k));
      blocks_[std::size_t(k + 1)][s] = v;
      sum += v;
    }
    blocks_[0][s] = 1.0 - sum;
  }
}

double DyadicPartition::identity_residual() const {
  double worst = 0.0;
  for (std::size_t s = 0; s < window_.offset_count(); ++s) {
    double sum = 0.0;
    for (const auto& b : blocks_) sum += b[s];
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

// --- moduli -----------------------------------------------------------------------

namespace {

std::vector<double> abs_of(std::span<const cplx> mult) {
  std::vector<double> mag(mult.size());
  for (std::size_t i = 0; i < mult.size(); ++i) mag[i] = std::abs(mult[i]);
  return mag;
}

// Uniform grid of G points per axis on [-h, h]^d, both ends included.
class TGrid {
 public:
  TGrid(int dim, int points, double h) : dim_(dim), g_(points), h_(h) {
    count_ = dim == 1 ? std::size_t(points) : std::size_t(points) * std::size_t(points);
  }
  std::size_t count() const { return count_; }
  // Points n and count - 1 - n are negatives of each other.
  std::size_t half_count() const { return (count_ + 1) / 2; }
  Vec operator[](std::size_t n) const {
    Vec t{0.0, 0.0};
    for (int j = 0; j < dim_; ++j) {
      const std::size_t i = n % std::size_t(g_);
      n /= std::size_t(g_);
      t[std::size_t(j)] = -h_ + 2.0 * h_ * double(i) / double(g_ - 1);
    }
    return t;
  }

 private:
  int dim_;
  int g_;
  double h_;
  std::size_t count_;
};

std::vector<double> difference_magnitude(const Window& w, const Vec& t, int order) {
  std::vector<double> out(w.offset_count());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = std::pow(phase_difference_magnitude(reduced_phase(w.offset(s), t)), order);
  return out;
}

std::vector<double> product(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

std::vector<cplx> product(std::span<const cplx> a, std::span<const cplx> b) {
  std::vector<cplx> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

std::vector<cplx> product(std::span<const cplx> a, std::span<const double> b) {
  std::vector<cplx> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

// sup over the grid of ||A o mult o (e^{2 pi i m.t} - 1)^k||.
double grid_modulus(const MatrixNorm& inner, std::span<const cplx> mult, int order, const TGrid& grid) {
  const Window& w = inner.window();
  if (inner.is_solid()) {
    const auto mag = abs_of(mult);
    return kernels::max_over(grid.half_count(), [&](std::size_t n) {
      return inner.evaluate_abs(product(mag, difference_magnitude(w, grid[n], order)));
    });
  }
  return kernels::max_over(grid.count(), [&](std::size_t n) {
    return inner(product(mult, difference_multiplier(w, grid[n], order)));
  });
}

class ModulusBesovNorm final : public MatrixNorm {
 public:
  ModulusBesovNorm(std::shared_ptr<const MatrixNorm> inner, double r, double p, int order, int lmin, int lmax,
                   int grid)
      : MatrixNorm(inner->window()),
        inner_(std::move(inner)),
        r_(r),
        p_(p),
        order_(order),
        lmin_(lmin),
        lmax_(lmax),
        grid_(grid) {
    const Window& w = window_;
    const std::size_t per_level = TGrid(w.dim(), grid_, 1.0).half_count() * w.offset_count();
    if (inner_->is_solid() && per_level * std::size_t(lmax_ - lmin_ + 1) <= (std::size_t(1) << 23)) {
      for (int l = lmin_; l <= lmax_; ++l) {
        const TGrid g(w.dim(), grid_, std::ldexp(1.0, -l));
        std::vector<std::vector<double>> level(g.half_count());
        for (std::size_t n = 0; n < level.size(); ++n) level[n] = difference_magnitude(w, g[n], order_);
        cache_.push_back(std::move(level));
      }
    }
  }

  bool is_solid() const override { return inner_->is_solid(); }

  double operator()(std::span<const cplx> mult) const override {
    if (inner_->is_solid()) return evaluate_abs(abs_of(mult));
    std::vector<double> moduli(std::size_t(lmax_ - lmin_ + 1));
    for (int l = lmin_; l <= lmax_; ++l)
      moduli[std::size_t(l - lmin_)] = grid_modulus(*inner_, mult, order_, TGrid(window_.dim(), grid_, std::ldexp(1.0, -l)));
    return (*inner_)(mult) + combine(moduli);
  }

  double evaluate_abs(std::span<const double> mag) const override {
    std::vector<double> moduli(std::size_t(lmax_ - lmin_ + 1));
    for (int l = lmin_; l <= lmax_; ++l) {
      double best = 0.0;
      if (!cache_.empty()) {
        const auto& level = cache_[std::size_t(l - lmin_)];
        best = kernels::max_over(level.size(), [&](std::size_t n) { return inner_->evaluate_abs(product(mag, level[n])); });
      } else {
        const TGrid g(window_.dim(), grid_, std::ldexp(1.0, -l));
        best = kernels::max_over(g.half_count(), [&](std::size_t n) {
          return inner_->evaluate_abs(product(mag, difference_magnitude(window_, g[n], order_)));
        });
      }
      moduli[std::size_t(l - lmin_)] = best;
    }
    return inner_->evaluate_abs(mag) + combine(moduli);
  }

 private:
  // moduli[l - lmin] at h = 2^-l; made nondecreasing in h before summing.
  double combine(std::vector<double>& moduli) const {
    for (std::size_t i = moduli.size(); i-- > 1;) moduli[i - 1] = std::max(moduli[i - 1], moduli[i]);
    PNormAccumulator acc(p_);
    for (int l = lmin_; l <= lmax_; ++l) acc.add(std::exp2(r_ * l) * moduli[std::size_t(l - lmin_)]);
    return acc.result();
  }

  std::shared_ptr<const MatrixNorm> inner_;
  double r_, p_;
  int order_, lmin_, lmax_, grid_;
  std::vector<std::vector<std::vector<double>>> cache_;
};

// ( sum_k (weight_k ||A o mult o mask_k||)^p )^{1/p}.
class BlockBesovNorm final : public MatrixNorm {
 public:
  BlockBesovNorm(std::shared_ptr<const MatrixNorm> inner, double p, std::vector<double> weights,
                 std::vector<std::vector<double>> masks)
      : MatrixNorm(inner->window()),
        inner_(std::move(inner)),
        p_(p),
        weights_(std::move(weights)),
        masks_(std::move(masks)) {}

  bool is_solid() const override { return inner_->is_solid(); }

  double operator()(std::span<const cplx> mult) const override {
    if (inner_->is_solid()) return evaluate_abs(abs_of(mult));
    PNormAccumulator acc(p_);
    for (std::size_t b = 0; b < masks_.size(); ++b) acc.add(weights_[b] * (*inner_)(product(mult, masks_[b])));
    return acc.result();
  }

  double evaluate_abs(std::span<const double> mag) const override {
    PNormAccumulator acc(p_);
    for (std::size_t b = 0; b < masks_.size(); ++b) acc.add(weights_[b] * inner_->evaluate_abs(product(mag, masks_[b])));
    return acc.result();
  }

 private:
  std::shared_ptr<const MatrixNorm> inner_;
  double p_;
  std::vector<double> weights_;
  std::vector<std::vector<double>> masks_;
};

std::unique_ptr<MatrixNorm> solid_lp_norm(std::shared_ptr<const MatrixNorm> inner, double r, double p) {
  const Window& w = inner->window();
  const int top = int(std::ceil(std::log2(double(w.max_offset()))));
  std::vector<double> weights;
  std::vector<std::vector<double>> masks;
  for (int k = -1; k <= top; ++k) {
    const int lo = k < 0 ? 0 : (1 << k);
    const int hi = k < 0 ? 1 : (2 << k);
    std::vector<double> mask(w.offset_count(), 0.0);
    for (std::size_t s = 0; s < mask.size(); ++s) {
      const int n = w.offset(s).norm_inf();
      if (n >= lo && n < hi) mask[s] = 1.0;
    }
    weights.push_back(std::exp2(r * k));
    masks.push_back(std::move(mask));
  }
  return std::make_unique<BlockBesovNorm>(std::move(inner), p, std::move(weights), std::move(masks));
}

std::unique_ptr<MatrixNorm> phi_lp_norm(std::shared_ptr<const MatrixNorm> inner, double r, double p) {
  const DyadicPartition part(inner->window());
  std::vector<double> weights;
  std::vector<std::vector<double>> masks;
  for (int k = -1; k <= part.top_level(); ++k) {
    weights.push_back(std::exp2(r * k));
    masks.push_back(part.block(k));
  }
  return std::make_unique<BlockBesovNorm>(std::move(inner), p, std::move(weights), std::move(masks));
}

}  // namespace

double modulus(const LatticeMatrix& a, const NormSpec& base, int order, double h, int grid) {
  if (order < 1) throw InvalidArgument("difference order must be >= 1");
  if (grid < 8) throw InvalidArgument("t-grid needs at least 8 points per axis");
  if (!(h > 0.0)) throw InvalidArgument("step h must be > 0");
  const auto inner = prepare_norm(base, a);
  const Multiplier ones = ones_multiplier(a.window());
  return grid_modulus(*inner, ones, order, TGrid(a.dim(), grid, h));
}

std::unique_ptr<MatrixNorm> modulus_besov_norm(std::shared_ptr<const MatrixNorm> inner, double r, double p,
                                               int order, int level_min, int level_max, int grid) {
  return std::make_unique<ModulusBesovNorm>(std::move(inner), r, p, order, level_min, level_max, grid);
}

std::unique_ptr<MatrixNorm> prepare_besov(const BesovSpec& spec, const LatticeMatrix& a) {
  spec.validate();
  std::shared_ptr<const MatrixNorm> inner = prepare_norm(spec.base, a);
  switch (spec.method) {
    case BesovSpec::Method::Modulus:
      return modulus_besov_norm(std::move(inner), spec.r, spec.p, spec.resolved_order(), spec.level_min,
                                spec.resolved_level_max(a.window()), spec.resolved_grid(a.dim()));
    case BesovSpec::Method::SolidLP:
      return solid_lp_norm(std::move(inner), spec.r, spec.p);
    case BesovSpec::Method::PhiLP:
      return phi_lp_norm(std::move(inner), spec.r, spec.p);
  }
  throw InvalidArgument("unknown Besov method");
}

double besov_norm(const LatticeMatrix& a, const BesovSpec& spec) { return prepare_besov(spec, a)->value(); }

double besov_norm_modulus(const LatticeMatrix& a, const BesovSpec& spec) {
  BesovSpec s = spec;
  s.method = BesovSpec::Method::Modulus;
  return besov_norm(a, s);
}

double besov_norm_solid_lp(const LatticeMatrix& a, const NormSpec& base, double r, double p) {
  BesovSpec s{.base = base, .r = r, .p = p, .method = BesovSpec::Method::SolidLP};
  return besov_norm(a, s);
}

double besov_norm_phi_lp(const LatticeMatrix& a, const NormSpec& base, double r, double p) {
  BesovSpec s{.base = base, .r = r, .p = p, .method = BesovSpec::Method::PhiLP};
  return besov_norm(a, s);
}

double reiteration_ratio(const LatticeMatrix& a, const NormSpec& base, double r, double s, double p) {
  if (!(r > 0.0) || !(s > 0.0)) throw InvalidArgument("reiteration needs r, s > 0");
  if (a.is_zero()) throw InvalidArgument("reiteration ratio of the zero matrix is undefined");
  const Window& w = a.window();
  BesovSpec probe{.base = base, .r = r, .p = p};
  const int lmax = probe.resolved_level_max(w);
  const int grid = probe.resolved_grid(a.dim());
  std::shared_ptr<const MatrixNorm> b = prepare_norm(base, a);
  std::shared_ptr<const MatrixNorm> inner = modulus_besov_norm(b, r, p, int(std::floor(r)) + 1, 0, lmax, grid);
  const auto outer = modulus_besov_norm(inner, s, p, int(std::floor(s)) + 1, 0, lmax, grid);
  const auto direct = modulus_besov_norm(b, r + s, p, int(std::floor(r + s)) + 1, 0, lmax, grid);
  return outer->value() / direct->value();
}

ContinuityDefect continuity_defect(const LatticeMatrix& a, const NormSpec& base, const std::vector<double>& hs,
                                   double tail_r, int grid) {
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!(hs[i] > 0.0)) throw InvalidArgument("h values must be > 0");
    if (i > 0 && !(hs[i] < hs[i - 1])) throw InvalidArgument("h sequence must be decreasing");
  }
  const Window& w = a.window();
  if (grid == 0) grid = w.dim() == 1 ? 64 : 32;
  ContinuityDefect out;
  out.h = hs;
  const auto inner = prepare_norm(base, a);
  const Multiplier ones = ones_multiplier(w);
  for (const double h : hs) out.modulus.push_back(grid_modulus(*inner, ones, 1, TGrid(w.dim(), grid, h)));

  const auto env = kernels::diagonal_envelope(a);
  std::vector<double> shell(std::size_t(w.max_offset()) + 1, 0.0);
  for (std::size_t s = 0; s < env.size(); ++s) {
    const LatticeIndex m = w.offset(s);
    double& v = shell[std::size_t(m.norm_inf())];
    v = std::max(v, polynomial_weight(m, tail_r) * env[s]);
  }
  out.tail.assign(shell.size(), 0.0);
  double suffix = 0.0;
  for (std::size_t n = shell.size(); n-- > 0;) {
    out.tail[n] = suffix;  // sup over |m|_inf > n
    suffix = std::max(suffix, shell[n]);
  }
  return out;
}

}  // namespace odd
