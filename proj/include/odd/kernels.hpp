#pragma once

// Data-parallel building blocks. Each OpenMP kernel has a plainly written
// serial counterpart in odd::kernels::serial with the same contract; tests
// compare the two and bench/ times them against each other.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "odd/lattice_matrix.hpp"

namespace odd {

/// Sets the OpenMP thread count used by all kernels (<= 0 keeps the runtime default).
void set_threads(int threads);
int max_threads();

namespace kernels {

/// Diagonal m scaled by mult[slot(m)].
LatticeMatrix apply_multiplier(const LatticeMatrix& a, std::span<const cplx> mult);

/// sup_k |A(k, k - m)| per offset slot (0 for absent diagonals).
std::vector<double> diagonal_envelope(const LatticeMatrix& a);

/// l^p norm of each stored diagonal; p = inf gives the envelope.
std::vector<double> diagonal_pnorm(const LatticeMatrix& a, double p);

/// Finite-section product through dense GEMM.
LatticeMatrix multiply(const LatticeMatrix& a, const LatticeMatrix& b);

/// alpha * a + beta * b.
LatticeMatrix combine(const LatticeMatrix& a, cplx alpha, const LatticeMatrix& b, cplx beta);

Eigen::VectorXcd matvec(const LatticeMatrix& a, const Eigen::VectorXcd& x);
Eigen::VectorXcd matvec_adjoint(const LatticeMatrix& a, const Eigen::VectorXcd& x);

/// max_{i < count} f(i), 0 for count == 0. f must be safe to call concurrently.
double max_over(std::size_t count, const std::function<double(std::size_t)>& f);

/// Row and column access to |A(k, l)|^p (or |A(k, l)| for p = inf), grouped
/// by diagonal slot so weighted row/column sums can be re-evaluated for any
/// per-diagonal coefficient vector without touching the matrix again.
class RowColumnTable {
 public:
  RowColumnTable(const LatticeMatrix& a, double p);

  double p() const { return p_; }
  /// max over rows and columns of sum_m coeff[slot(m)] * |A|^p (max for p = inf).
  double max_weighted_line(std::span<const double> coeff) const;

 private:
  struct Csr {
    std::vector<std::size_t> ptr;
    std::vector<std::size_t> slot;
    std::vector<double> value;
  };
  double p_;
  Csr rows_;
  Csr cols_;

  double line_max(const Csr& csr, std::span<const double> coeff) const;
};

namespace serial {

LatticeMatrix apply_multiplier(const LatticeMatrix& a, std::span<const cplx> mult);
std::vector<double> diagonal_envelope(const LatticeMatrix& a);
std::vector<double> diagonal_pnorm(const LatticeMatrix& a, double p);
/// (AB)(k, k - m) = sum_j A(k, k - j) B(k - j, k - m), accumulated diagonal by diagonal.
LatticeMatrix multiply(const LatticeMatrix& a, const LatticeMatrix& b);
Eigen::VectorXcd matvec(const LatticeMatrix& a, const Eigen::VectorXcd& x);
double max_over(std::size_t count, const std::function<double(std::size_t)>& f);
/// Weighted row/column line maximum computed straight from the dense window.
double max_weighted_line(const LatticeMatrix& a, double p, std::span<const double> coeff);

}  // namespace serial
}  // namespace kernels
}  // namespace odd
