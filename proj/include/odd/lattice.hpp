#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace odd {

inline constexpr int kMaxDim = 2;

/// Point of Z^d, d in {1, 2}. Used both for row/column indices and for
/// diagonal offsets m = k - l.
struct LatticeIndex {
  int dim = 1;
  std::array<int, kMaxDim> c{0, 0};

  static LatticeIndex d1(int m) { return {1, {m, 0}}; }
  static LatticeIndex d2(int a, int b) { return {2, {a, b}}; }
  static LatticeIndex zero(int dim) { return {dim, {0, 0}}; }

  int operator[](int axis) const { return c[static_cast<std::size_t>(axis)]; }

  int norm_inf() const {
    int v = 0;
    for (int j = 0; j < dim; ++j) v = std::max(v, std::abs(c[j]));
    return v;
  }
  double norm2() const {
    double s = 0.0;
    for (int j = 0; j < dim; ++j) s += double(c[j]) * double(c[j]);
    return std::sqrt(s);
  }
  bool is_zero() const { return c[0] == 0 && c[1] == 0; }

  friend LatticeIndex operator+(LatticeIndex a, const LatticeIndex& b) {
    for (int j = 0; j < a.dim; ++j) a.c[j] += b.c[j];
    return a;
  }
  friend LatticeIndex operator-(LatticeIndex a, const LatticeIndex& b) {
    for (int j = 0; j < a.dim; ++j) a.c[j] -= b.c[j];
    return a;
  }
  friend LatticeIndex operator-(LatticeIndex a) {
    for (int j = 0; j < a.dim; ++j) a.c[j] = -a.c[j];
    return a;
  }
  friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;

  std::string to_string() const;
};

/// Box [-W, W]^d of lattice points. Points are laid out row-major (axis 0
/// slowest); offsets |m|_inf <= 2W are enumerated the same way in a box of
/// side 4W + 1 and addressed by a "slot".
class Window {
 public:
  Window() = default;
  Window(int dim, int half_width);

  int dim() const { return dim_; }
  int half_width() const { return half_; }
  int side() const { return 2 * half_ + 1; }
  std::size_t size() const { return size_; }

  bool contains(const LatticeIndex& k) const {
    for (int j = 0; j < dim_; ++j)
      if (k.c[j] < -half_ || k.c[j] > half_) return false;
    return true;
  }
  std::size_t position(const LatticeIndex& k) const {
    std::size_t pos = 0;
    for (int j = 0; j < dim_; ++j) pos = pos * side() + std::size_t(k.c[j] + half_);
    return pos;
  }
  LatticeIndex point(std::size_t pos) const;

  int max_offset() const { return 2 * half_; }
  int offset_side() const { return 4 * half_ + 1; }
  std::size_t offset_count() const { return offset_count_; }
  bool contains_offset(const LatticeIndex& m) const { return m.dim == dim_ && m.norm_inf() <= max_offset(); }
  std::size_t slot(const LatticeIndex& m) const {
    std::size_t s = 0;
    for (int j = 0; j < dim_; ++j) s = s * offset_side() + std::size_t(m.c[j] + max_offset());
    return s;
  }
  LatticeIndex offset(std::size_t slot) const;

  /// Rows k with both k and k - m inside the window, per axis [lo, hi].
  int row_lo(const LatticeIndex& m, int axis) const { return std::max(-half_, -half_ + m.c[axis]); }
  int row_hi(const LatticeIndex& m, int axis) const { return std::min(half_, half_ + m.c[axis]); }
  std::size_t diagonal_length(const LatticeIndex& m) const;
  /// Position of row k inside the stored diagonal m (k must be a valid row).
  std::size_t diagonal_position(const LatticeIndex& m, const LatticeIndex& k) const {
    std::size_t pos = 0;
    for (int j = 0; j < dim_; ++j)
      pos = pos * std::size_t(side() - std::abs(m.c[j])) + std::size_t(k.c[j] - row_lo(m, j));
    return pos;
  }
  /// Row index of the i-th entry of diagonal m.
  LatticeIndex diagonal_row(const LatticeIndex& m, std::size_t i) const;

  /// Calls f(i, row position, column position) for each entry of diagonal m, in storage order.
  template <class F>
  void for_each_diagonal_entry(const LatticeIndex& m, F&& f) const {
    std::size_t i = 0;
    if (dim_ == 1) {
      const int lo = row_lo(m, 0), hi = row_hi(m, 0);
      for (int k = lo; k <= hi; ++k, ++i) f(i, std::size_t(k + half_), std::size_t(k - m.c[0] + half_));
      return;
    }
    const std::size_t n = std::size_t(side());
    const int lo1 = row_lo(m, 1), hi1 = row_hi(m, 1);
    for (int k0 = row_lo(m, 0); k0 <= row_hi(m, 0); ++k0) {
      const std::size_t rbase = std::size_t(k0 + half_) * n;
      const std::size_t cbase = std::size_t(k0 - m.c[0] + half_) * n;
      for (int k1 = lo1; k1 <= hi1; ++k1, ++i)
        f(i, rbase + std::size_t(k1 + half_), cbase + std::size_t(k1 - m.c[1] + half_));
    }
  }

  friend bool operator==(const Window& a, const Window& b) { return a.dim_ == b.dim_ && a.half_ == b.half_; }

 private:
  int dim_ = 1;
  int half_ = 0;
  std::size_t size_ = 1;
  std::size_t offset_count_ = 1;
};

}  // namespace odd
