#include "odd/lattice_matrix.hpp"

#include "odd/errors.hpp"

namespace odd {

LatticeMatrix::LatticeMatrix(Window window) : window_(window), slots_(window.offset_count()) {}

LatticeMatrix::LatticeMatrix(Window window, std::vector<std::vector<cplx>> slots)
    : window_(window), slots_(std::move(slots)) {
  if (slots_.size() != window_.offset_count())
    throw InvalidArgument("slot count does not match window");
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    if (slots_[s].empty()) continue;
    if (slots_[s].size() != window_.diagonal_length(window_.offset(s)))
      throw InvalidArgument("diagonal " + window_.offset(s).to_string() + " has wrong length");
  }
}

LatticeMatrix LatticeMatrix::identity(Window window) {
  std::vector<std::vector<cplx>> slots(window.offset_count());
  const LatticeIndex zero = LatticeIndex::zero(window.dim());
  slots[window.slot(zero)].assign(window.size(), cplx(1.0, 0.0));
  return LatticeMatrix(window, std::move(slots));
}

LatticeMatrix LatticeMatrix::single_diagonal(Window window, const LatticeIndex& m, cplx value) {
  if (!window.contains_offset(m)) throw IndexOutOfRange("offset " + m.to_string() + " outside window");
  std::vector<std::vector<cplx>> slots(window.offset_count());
  slots[window.slot(m)].assign(window.diagonal_length(m), value);
  return LatticeMatrix(window, std::move(slots));
}

LatticeMatrix LatticeMatrix::from_dense(Window window, const Eigen::MatrixXcd& dense) {
  const auto n = Eigen::Index(window.size());
  if (dense.rows() != n || dense.cols() != n) throw WindowMismatch("dense matrix size does not match window");
  std::vector<std::vector<cplx>> slots(window.offset_count());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const LatticeIndex m = window.offset(s);
    const std::size_t len = window.diagonal_length(m);
    std::vector<cplx> diag(len);
    bool nonzero = false;
    window.for_each_diagonal_entry(m, [&](std::size_t i, std::size_t r, std::size_t c) {
      diag[i] = dense(Eigen::Index(r), Eigen::Index(c));
      nonzero = nonzero || diag[i] != cplx(0.0);
    });
    if (nonzero) slots[s] = std::move(diag);
  }
  return LatticeMatrix(window, std::move(slots));
}

LatticeMatrix LatticeMatrix::from_function(
    Window window, const std::function<cplx(const LatticeIndex&, const LatticeIndex&)>& entry) {
  std::vector<std::vector<cplx>> slots(window.offset_count());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const LatticeIndex m = window.offset(s);
    const std::size_t len = window.diagonal_length(m);
    std::vector<cplx> diag(len);
    bool nonzero = false;
    for (std::size_t i = 0; i < len; ++i) {
      const LatticeIndex k = window.diagonal_row(m, i);
      diag[i] = entry(k, k - m);
      nonzero = nonzero || diag[i] != cplx(0.0);
    }
    if (nonzero) slots[s] = std::move(diag);
  }
  return LatticeMatrix(window, std::move(slots));
}

std::vector<cplx> LatticeMatrix::side_diagonal(const LatticeIndex& m) const {
  if (!window_.contains_offset(m))
    throw IndexOutOfRange("offset " + m.to_string() + " exceeds 2W = " + std::to_string(window_.max_offset()));
  const std::size_t s = window_.slot(m);
  if (slots_[s].empty()) return std::vector<cplx>(window_.diagonal_length(m), cplx(0.0));
  return slots_[s];
}

cplx LatticeMatrix::at(const LatticeIndex& k, const LatticeIndex& l) const {
  if (!window_.contains(k) || !window_.contains(l)) throw IndexOutOfRange("entry index outside window");
  const LatticeIndex m = k - l;
  const auto& diag = slots_[window_.slot(m)];
  if (diag.empty()) return cplx(0.0);
  return diag[window_.diagonal_position(m, k)];
}

std::vector<LatticeIndex> LatticeMatrix::stored_offsets() const {
  std::vector<LatticeIndex> out;
  for (std::size_t s = 0; s < slots_.size(); ++s)
    if (!slots_[s].empty()) out.push_back(window_.offset(s));
  return out;
}

std::size_t LatticeMatrix::stored_count() const {
  std::size_t n = 0;
  for (const auto& d : slots_) n += d.empty() ? 0 : 1;
  return n;
}

int LatticeMatrix::bandwidth_inf() const {
  int band = -1;
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    for (const cplx& v : slots_[s]) {
      if (v != cplx(0.0)) {
        band = std::max(band, window_.offset(s).norm_inf());
        break;
      }
    }
  }
  return band;
}

bool LatticeMatrix::is_zero() const { return bandwidth_inf() < 0; }

Eigen::MatrixXcd LatticeMatrix::to_dense() const {
  const auto n = Eigen::Index(window_.size());
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    if (slots_[s].empty()) continue;
    const auto& d = slots_[s];
    window_.for_each_diagonal_entry(window_.offset(s), [&](std::size_t i, std::size_t r, std::size_t c) {
      dense(Eigen::Index(r), Eigen::Index(c)) = d[i];
    });
  }
  return dense;
}

bool operator==(const LatticeMatrix& a, const LatticeMatrix& b) {
  if (!(a.window_ == b.window_)) return false;
  for (std::size_t s = 0; s < a.slots_.size(); ++s) {
    const auto& x = a.slots_[s];
    const auto& y = b.slots_[s];
    if (x.empty() && y.empty()) continue;
    const std::size_t len = a.window_.diagonal_length(a.window_.offset(s));
    for (std::size_t i = 0; i < len; ++i) {
      const cplx xv = x.empty() ? cplx(0.0) : x[i];
      const cplx yv = y.empty() ? cplx(0.0) : y[i];
      if (xv != yv) return false;
    }
  }
  return true;
}

void require_same_window(const LatticeMatrix& a, const LatticeMatrix& b) {
  if (!(a.window() == b.window())) throw WindowMismatch("matrices live on different windows");
}

}  // namespace odd
