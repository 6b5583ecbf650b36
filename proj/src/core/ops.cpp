#include "odd/ops.hpp"

#include <cmath>
#include <numbers>

#include "odd/errors.hpp"
#include "odd/kernels.hpp"

namespace odd {
namespace {

constexpr double kPi = std::numbers::pi;

cplx unit_phase(double x) { return {std::cos(2.0 * kPi * x), std::sin(2.0 * kPi * x)}; }

// e^{2 pi i x} - 1 = 2i sin(pi x) e^{i pi x}, free of cancellation near x = 0.
cplx phase_minus_one(double x) {
  const double s = std::sin(kPi * x);
  const double c = std::cos(kPi * x);
  return {-2.0 * s * s, 2.0 * s * c};
}

}  // namespace

double reduced_phase(const LatticeIndex& m, const Vec& t) {
  double x = 0.0;
  for (int j = 0; j < m.dim; ++j) {
    const double tj = t[std::size_t(j)] - std::floor(t[std::size_t(j)]);
    double prod = double(m.c[j]) * tj;
    prod -= std::round(prod);
    x += prod;
  }
  return x - std::round(x);
}

Multiplier modulation_multiplier(const Window& w, const Vec& t) {
  Multiplier mult(w.offset_count());
  for (std::size_t s = 0; s < mult.size(); ++s) mult[s] = unit_phase(reduced_phase(w.offset(s), t));
  return mult;
}

Multiplier difference_multiplier(const Window& w, const Vec& t, int order) {
  if (order < 1) throw InvalidArgument("difference order must be >= 1");
  Multiplier mult(w.offset_count());
  for (std::size_t s = 0; s < mult.size(); ++s) {
    const cplx base = phase_minus_one(reduced_phase(w.offset(s), t));
    cplx v = base;
    for (int i = 1; i < order; ++i) v *= base;
    mult[s] = v;
  }
  return mult;
}

double phase_difference_magnitude(double x) {
  x -= std::round(x);
  return 2.0 * std::abs(std::sin(kPi * x));
}

Multiplier derivation_multiplier(const Window& w, const std::array<int, kMaxDim>& alpha) {
  for (int j = 0; j < w.dim(); ++j)
    if (alpha[std::size_t(j)] < 0) throw InvalidArgument("multi-index entries must be >= 0");
  Multiplier mult(w.offset_count());
  for (std::size_t s = 0; s < mult.size(); ++s) {
    const LatticeIndex m = w.offset(s);
    cplx v(1.0);
    for (int j = 0; j < w.dim(); ++j) {
      const cplx g(0.0, 2.0 * kPi * m.c[j]);
      for (int i = 0; i < alpha[std::size_t(j)]; ++i) v *= g;
    }
    mult[s] = v;
  }
  return mult;
}

Multiplier band_multiplier(const Window& w, int bandwidth) {
  Multiplier mult(w.offset_count());
  for (std::size_t s = 0; s < mult.size(); ++s) mult[s] = w.offset(s).norm_inf() < bandwidth ? 1.0 : 0.0;
  return mult;
}

Multiplier ones_multiplier(const Window& w) { return Multiplier(w.offset_count(), cplx(1.0)); }

std::vector<cplx> side_diagonal(const LatticeMatrix& a, const LatticeIndex& m) { return a.side_diagonal(m); }

LatticeMatrix band_truncate(const LatticeMatrix& a, int bandwidth) {
  if (bandwidth < 0) throw InvalidArgument("bandwidth must be >= 0");
  const Window& w = a.window();
  std::vector<std::vector<cplx>> out(w.offset_count());
  for (std::size_t s = 0; s < out.size(); ++s)
    if (a.has_slot(s) && w.offset(s).norm_inf() < bandwidth) out[s] = a.slots()[s];
  return LatticeMatrix(w, std::move(out));
}

LatticeMatrix multiply(const LatticeMatrix& a, const LatticeMatrix& b) { return kernels::multiply(a, b); }

LatticeMatrix add(const LatticeMatrix& a, const LatticeMatrix& b) { return kernels::combine(a, 1.0, b, 1.0); }

LatticeMatrix subtract(const LatticeMatrix& a, const LatticeMatrix& b) { return kernels::combine(a, 1.0, b, -1.0); }

LatticeMatrix scale(const LatticeMatrix& a, cplx c) {
  return kernels::apply_multiplier(a, Multiplier(a.window().offset_count(), c));
}

LatticeMatrix adjoint(const LatticeMatrix& a) {
  const Window& w = a.window();
  std::vector<std::vector<cplx>> out(w.offset_count());
  for (std::size_t s = 0; s < out.size(); ++s) {
    if (!a.has_slot(s)) continue;
    auto& o = out[w.slot(-w.offset(s))];
    const auto d = a.slot_data(s);
    o.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) o[i] = std::conj(d[i]);
  }
  return LatticeMatrix(w, std::move(out));
}

LatticeMatrix abs(const LatticeMatrix& a) {
  const Window& w = a.window();
  std::vector<std::vector<cplx>> out(w.offset_count());
  for (std::size_t s = 0; s < out.size(); ++s) {
    if (!a.has_slot(s)) continue;
    const auto d = a.slot_data(s);
    out[s].resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[s][i] = std::abs(d[i]);
  }
  return LatticeMatrix(w, std::move(out));
}

LatticeMatrix apply(const LatticeMatrix& a, const Multiplier& mult) { return kernels::apply_multiplier(a, mult); }

LatticeMatrix modulate(const LatticeMatrix& a, const Vec& t) {
  return kernels::apply_multiplier(a, modulation_multiplier(a.window(), t));
}

LatticeMatrix difference(const LatticeMatrix& a, const Vec& t, int order) {
  return kernels::apply_multiplier(a, difference_multiplier(a.window(), t, order));
}

LatticeMatrix derivation(const LatticeMatrix& a, const std::array<int, kMaxDim>& alpha) {
  return kernels::apply_multiplier(a, derivation_multiplier(a.window(), alpha));
}

double max_abs_difference(const LatticeMatrix& a, const LatticeMatrix& b) {
  require_same_window(a, b);
  const Window& w = a.window();
  double worst = 0.0;
  for (std::size_t s = 0; s < w.offset_count(); ++s) {
    const auto x = a.slot_data(s);
    const auto y = b.slot_data(s);
    if (x.empty() && y.empty()) continue;
    const std::size_t len = x.empty() ? y.size() : x.size();
    for (std::size_t i = 0; i < len; ++i) {
      const cplx xv = x.empty() ? cplx(0.0) : x[i];
      const cplx yv = y.empty() ? cplx(0.0) : y[i];
      worst = std::max(worst, std::norm(xv - yv));
    }
  }
  return std::sqrt(worst);
}

double max_abs_entry(const LatticeMatrix& a) {
  double worst = 0.0;
  for (const auto& d : a.slots())
    for (const cplx& v : d) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace odd
