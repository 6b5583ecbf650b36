#pragma once

#include <array>
#include <vector>

#include "odd/lattice_matrix.hpp"

namespace odd {

/// Point t of R^d for the modulation action (only the first `dim` entries matter).
using Vec = std::array<double, kMaxDim>;

/// Per-slot scalar applied to each side diagonal. Everything the modulation
/// group does to a matrix is of this form.
using Multiplier = std::vector<cplx>;

// --- multipliers ---------------------------------------------------------

/// e^{2 pi i m.t}; t is reduced mod 1 per axis before forming the phase.
Multiplier modulation_multiplier(const Window& w, const Vec& t);
/// (e^{2 pi i m.t} - 1)^order.
Multiplier difference_multiplier(const Window& w, const Vec& t, int order);
/// prod_j (2 pi i m_j)^alpha_j.
Multiplier derivation_multiplier(const Window& w, const std::array<int, kMaxDim>& alpha);
/// 1 for |m|_inf < bandwidth, 0 otherwise.
Multiplier band_multiplier(const Window& w, int bandwidth);
Multiplier ones_multiplier(const Window& w);

/// m.t reduced to [-1/2, 1/2), each t_j first reduced to [0, 1).
double reduced_phase(const LatticeIndex& m, const Vec& t);
/// |e^{2 pi i x} - 1| for real x, accurate for small x.
double phase_difference_magnitude(double x);

// --- side diagonals and the banded scheme --------------------------------

std::vector<cplx> side_diagonal(const LatticeMatrix& a, const LatticeIndex& m);

/// T_N(A): keeps the diagonals with |m|_inf < N (strict), so T_0(A) = 0 and
/// T_1(A) is the main diagonal. Throws InvalidArgument for N < 0.
LatticeMatrix band_truncate(const LatticeMatrix& a, int bandwidth);

// --- algebra --------------------------------------------------------------

LatticeMatrix multiply(const LatticeMatrix& a, const LatticeMatrix& b);
LatticeMatrix add(const LatticeMatrix& a, const LatticeMatrix& b);
LatticeMatrix subtract(const LatticeMatrix& a, const LatticeMatrix& b);
LatticeMatrix scale(const LatticeMatrix& a, cplx c);
/// Conjugate transpose: diagonal -m of A^* holds conj(A(k, k - m)).
LatticeMatrix adjoint(const LatticeMatrix& a);
/// Entrywise modulus |A|.
LatticeMatrix abs(const LatticeMatrix& a);
LatticeMatrix apply(const LatticeMatrix& a, const Multiplier& mult);

// --- modulation group -----------------------------------------------------

/// chi_t(A) = M_t A M_{-t}: diagonal m scaled by e^{2 pi i m.t}.
LatticeMatrix modulate(const LatticeMatrix& a, const Vec& t);
/// Delta_t^k(A) = (chi_t - id)^k (A). Throws InvalidArgument for order < 1.
LatticeMatrix difference(const LatticeMatrix& a, const Vec& t, int order);
/// delta^alpha(A): the generator derivatives of chi at t = 0.
LatticeMatrix derivation(const LatticeMatrix& a, const std::array<int, kMaxDim>& alpha);

/// Largest absolute entrywise difference; throws WindowMismatch.
double max_abs_difference(const LatticeMatrix& a, const LatticeMatrix& b);
/// Largest absolute entry.
double max_abs_entry(const LatticeMatrix& a);

}  // namespace odd
