#include "odd/kernels.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

#include "odd/errors.hpp"

namespace odd {

void set_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

namespace kernels {
namespace {

double pnorm_of(std::span<const cplx> v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0.0;
  for (const cplx& x : v) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

void require_multiplier_size(const LatticeMatrix& a, std::span<const cplx> mult) {
  if (mult.size() != a.window().offset_count()) throw InvalidArgument("multiplier size does not match window");
}

}  // namespace

LatticeMatrix apply_multiplier(const LatticeMatrix& a, std::span<const cplx> mult) {
  require_multiplier_size(a, mult);
  const auto& src = a.slots();
  std::vector<std::vector<cplx>> out(src.size());
  const auto count = static_cast<std::ptrdiff_t>(src.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t s = 0; s < count; ++s) {
    const auto& d = src[std::size_t(s)];
    const cplx f = mult[std::size_t(s)];
    if (d.empty() || f == cplx(0.0)) continue;
    auto& o = out[std::size_t(s)];
    o.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) o[i] = d[i] * f;
  }
  return LatticeMatrix(a.window(), std::move(out));
}

std::vector<double> diagonal_envelope(const LatticeMatrix& a) {
  return diagonal_pnorm(a, std::numeric_limits<double>::infinity());
}

std::vector<double> diagonal_pnorm(const LatticeMatrix& a, double p) {
  const auto& src = a.slots();
  std::vector<double> out(src.size(), 0.0);
  const auto count = static_cast<std::ptrdiff_t>(src.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t s = 0; s < count; ++s) out[std::size_t(s)] = pnorm_of(src[std::size_t(s)], p);
  return out;
}

LatticeMatrix multiply(const LatticeMatrix& a, const LatticeMatrix& b) {
  require_same_window(a, b);
  const Eigen::MatrixXcd prod = a.to_dense() * b.to_dense();
  return LatticeMatrix::from_dense(a.window(), prod);
}

LatticeMatrix combine(const LatticeMatrix& a, cplx alpha, const LatticeMatrix& b, cplx beta) {
  require_same_window(a, b);
  const Window& w = a.window();
  std::vector<std::vector<cplx>> out(w.offset_count());
  const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t si = 0; si < count; ++si) {
    const auto s = std::size_t(si);
    const auto& x = a.slots()[s];
    const auto& y = b.slots()[s];
    if (x.empty() && y.empty()) continue;
    const std::size_t len = x.empty() ? y.size() : x.size();
    auto& o = out[s];
    o.assign(len, cplx(0.0));
    if (!x.empty())
      for (std::size_t i = 0; i < len; ++i) o[i] += alpha * x[i];
    if (!y.empty())
      for (std::size_t i = 0; i < len; ++i) o[i] += beta * y[i];
  }
  return LatticeMatrix(w, std::move(out));
}

namespace {

// Walks the stored diagonals; each thread accumulates into its own vector.
template <bool Adjoint>
Eigen::VectorXcd diagonal_matvec(const LatticeMatrix& a, const Eigen::VectorXcd& x) {
  const Window& w = a.window();
  if (x.size() != Eigen::Index(w.size())) throw WindowMismatch("vector length does not match window");
  const auto& src = a.slots();
  const auto count = static_cast<std::ptrdiff_t>(src.size());
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
#pragma omp parallel
  {
    Eigen::VectorXcd local = Eigen::VectorXcd::Zero(x.size());
#pragma omp for schedule(dynamic, 16) nowait
    for (std::ptrdiff_t s = 0; s < count; ++s) {
      const auto& d = src[std::size_t(s)];
      if (d.empty()) continue;
      w.for_each_diagonal_entry(w.offset(std::size_t(s)), [&](std::size_t i, std::size_t r, std::size_t c) {
        if constexpr (Adjoint)
          local(Eigen::Index(c)) += std::conj(d[i]) * x(Eigen::Index(r));
        else
          local(Eigen::Index(r)) += d[i] * x(Eigen::Index(c));
      });
    }
#pragma omp critical
    y += local;
  }
  return y;
}

}  // namespace

Eigen::VectorXcd matvec(const LatticeMatrix& a, const Eigen::VectorXcd& x) { return diagonal_matvec<false>(a, x); }

Eigen::VectorXcd matvec_adjoint(const LatticeMatrix& a, const Eigen::VectorXcd& x) { return diagonal_matvec<true>(a, x); }

double max_over(std::size_t count, const std::function<double(std::size_t)>& f) {
  double best = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(guided) reduction(max : best)
  for (std::ptrdiff_t i = 0; i < n; ++i) best = std::max(best, f(std::size_t(i)));
  return best;
}

RowColumnTable::RowColumnTable(const LatticeMatrix& a, double p) : p_(p) {
  const Window& w = a.window();
  const std::size_t n = w.size();
  const bool inf = std::isinf(p);
  std::vector<std::size_t> row_count(n, 0), col_count(n, 0);
  for (std::size_t s = 0; s < w.offset_count(); ++s) {
    if (!a.has_slot(s)) continue;
    w.for_each_diagonal_entry(w.offset(s), [&](std::size_t, std::size_t r, std::size_t c) {
      ++row_count[r];
      ++col_count[c];
    });
  }
  auto init = [n](Csr& csr, const std::vector<std::size_t>& counts) {
    csr.ptr.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) csr.ptr[i + 1] = csr.ptr[i] + counts[i];
    csr.slot.resize(csr.ptr[n]);
    csr.value.resize(csr.ptr[n]);
  };
  init(rows_, row_count);
  init(cols_, col_count);
  std::vector<std::size_t> row_fill(rows_.ptr.begin(), rows_.ptr.end() - 1);
  std::vector<std::size_t> col_fill(cols_.ptr.begin(), cols_.ptr.end() - 1);
  for (std::size_t s = 0; s < w.offset_count(); ++s) {
    if (!a.has_slot(s)) continue;
    const auto data = a.slot_data(s);
    w.for_each_diagonal_entry(w.offset(s), [&](std::size_t i, std::size_t row, std::size_t col) {
      const double mag = std::abs(data[i]);
      const double v = inf ? mag : std::pow(mag, p);
      const std::size_t r = row_fill[row]++;
      rows_.slot[r] = s;
      rows_.value[r] = v;
      const std::size_t c = col_fill[col]++;
      cols_.slot[c] = s;
      cols_.value[c] = v;
    });
  }
}

double RowColumnTable::line_max(const Csr& csr, std::span<const double> coeff) const {
  const bool inf = std::isinf(p_);
  const auto n = static_cast<std::ptrdiff_t>(csr.ptr.size() - 1);
  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    double acc = 0.0;
    for (std::size_t e = csr.ptr[std::size_t(r)]; e < csr.ptr[std::size_t(r) + 1]; ++e) {
      const double term = coeff[csr.slot[e]] * csr.value[e];
      acc = inf ? std::max(acc, term) : acc + term;
    }
    best = std::max(best, acc);
  }
  return best;
}

double RowColumnTable::max_weighted_line(std::span<const double> coeff) const {
  return std::max(line_max(rows_, coeff), line_max(cols_, coeff));
}

namespace serial {

LatticeMatrix apply_multiplier(const LatticeMatrix& a, std::span<const cplx> mult) {
  require_multiplier_size(a, mult);
  const Window& w = a.window();
  std::vector<std::vector<cplx>> out(w.offset_count());
  for (std::size_t s = 0; s < out.size(); ++s) {
    if (!a.has_slot(s) || mult[s] == cplx(0.0)) continue;
    for (const cplx& v : a.slot_data(s)) out[s].push_back(v * mult[s]);
  }
  return LatticeMatrix(w, std::move(out));
}

std::vector<double> diagonal_envelope(const LatticeMatrix& a) {
  const Window& w = a.window();
  const Eigen::MatrixXcd dense = a.to_dense();
  std::vector<double> out(w.offset_count(), 0.0);
  for (std::size_t r = 0; r < w.size(); ++r) {
    for (std::size_t c = 0; c < w.size(); ++c) {
      const LatticeIndex m = w.point(r) - w.point(c);
      double& e = out[w.slot(m)];
      e = std::max(e, std::abs(dense(Eigen::Index(r), Eigen::Index(c))));
    }
  }
  return out;
}

std::vector<double> diagonal_pnorm(const LatticeMatrix& a, double p) {
  std::vector<double> out(a.window().offset_count(), 0.0);
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = pnorm_of(a.slot_data(s), p);
  return out;
}

LatticeMatrix multiply(const LatticeMatrix& a, const LatticeMatrix& b) {
  require_same_window(a, b);
  const Window& w = a.window();
  std::vector<std::vector<cplx>> out(w.offset_count());
  for (std::size_t sa = 0; sa < w.offset_count(); ++sa) {
    if (!a.has_slot(sa)) continue;
    const LatticeIndex j = w.offset(sa);
    const auto ad = a.slot_data(sa);
    for (std::size_t sb = 0; sb < w.offset_count(); ++sb) {
      if (!b.has_slot(sb)) continue;
      const LatticeIndex q = w.offset(sb);
      const LatticeIndex m = j + q;
      if (!w.contains_offset(m)) continue;
      const auto bd = b.slot_data(sb);
      auto& o = out[w.slot(m)];
      for (std::size_t i = 0; i < ad.size(); ++i) {
        const LatticeIndex k = w.diagonal_row(j, i);
        const LatticeIndex mid = k - j;
        if (!w.contains(mid - q)) continue;
        if (o.empty()) o.assign(w.diagonal_length(m), cplx(0.0));
        o[w.diagonal_position(m, k)] += ad[i] * bd[w.diagonal_position(q, mid)];
      }
    }
  }
  return LatticeMatrix(w, std::move(out));
}

Eigen::VectorXcd matvec(const LatticeMatrix& a, const Eigen::VectorXcd& x) { return a.to_dense() * x; }

double max_over(std::size_t count, const std::function<double(std::size_t)>& f) {
  double best = 0.0;
  for (std::size_t i = 0; i < count; ++i) best = std::max(best, f(i));
  return best;
}

double max_weighted_line(const LatticeMatrix& a, double p, std::span<const double> coeff) {
  const Window& w = a.window();
  const Eigen::MatrixXcd dense = a.to_dense();
  const bool inf = std::isinf(p);
  const auto n = Eigen::Index(w.size());
  double best = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double acc = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index r = pass == 0 ? i : j;
        const Eigen::Index c = pass == 0 ? j : i;
        const cplx v = dense(r, c);
        if (v == cplx(0.0)) continue;
        const LatticeIndex m = w.point(std::size_t(r)) - w.point(std::size_t(c));
        const double mag = std::abs(v);
        const double term = coeff[w.slot(m)] * (inf ? mag : std::pow(mag, p));
        acc = inf ? std::max(acc, term) : acc + term;
      }
      best = std::max(best, acc);
    }
  }
  return best;
}

}  // namespace serial
}  // namespace kernels
}  // namespace odd
