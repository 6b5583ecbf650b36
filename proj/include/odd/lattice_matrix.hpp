#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "odd/lattice.hpp"

namespace odd {

using cplx = std::complex<double>;

/// Finite section of a matrix over Z^d, stored by side diagonals.
///
/// Diagonal m holds the entries A(k, k - m) for every k with k and k - m in
/// the window, ordered row-major over k. Diagonals that were never set are
/// absent and read as zero. Instances are immutable; every operation returns
/// a new matrix.
class LatticeMatrix {
 public:
  LatticeMatrix() : LatticeMatrix(Window(1, 0)) {}
  explicit LatticeMatrix(Window window);
  /// Takes ownership of one vector per offset slot. Empty vectors mark absent
  /// diagonals; non-empty vectors must have the diagonal's exact length.
  LatticeMatrix(Window window, std::vector<std::vector<cplx>> slots);

  static LatticeMatrix zero(Window window) { return LatticeMatrix(window); }
  static LatticeMatrix identity(Window window);
  static LatticeMatrix from_dense(Window window, const Eigen::MatrixXcd& dense);
  /// Builds every diagonal from entry(k, l); diagonals that come out all-zero stay absent.
  static LatticeMatrix from_function(Window window,
                                     const std::function<cplx(const LatticeIndex&, const LatticeIndex&)>& entry);
  /// Single side diagonal m filled with `value`.
  static LatticeMatrix single_diagonal(Window window, const LatticeIndex& m, cplx value);

  const Window& window() const { return window_; }
  int dim() const { return window_.dim(); }

  bool has_slot(std::size_t slot) const { return !slots_[slot].empty(); }
  std::span<const cplx> slot_data(std::size_t slot) const { return slots_[slot]; }
  const std::vector<std::vector<cplx>>& slots() const { return slots_; }

  /// Entries A(k, k - m); zeros when the diagonal is absent.
  /// Throws IndexOutOfRange when |m|_inf > 2W.
  std::vector<cplx> side_diagonal(const LatticeIndex& m) const;
  cplx at(const LatticeIndex& k, const LatticeIndex& l) const;

  std::vector<LatticeIndex> stored_offsets() const;
  std::size_t stored_count() const;
  /// Largest |m|_inf over stored diagonals with a nonzero entry; -1 for the zero matrix.
  int bandwidth_inf() const;
  bool is_zero() const;

  Eigen::MatrixXcd to_dense() const;

  friend bool operator==(const LatticeMatrix& a, const LatticeMatrix& b);

 private:
  Window window_;
  std::vector<std::vector<cplx>> slots_;
};

/// Throws WindowMismatch unless a and b live on the same window.
void require_same_window(const LatticeMatrix& a, const LatticeMatrix& b);

}  // namespace odd
