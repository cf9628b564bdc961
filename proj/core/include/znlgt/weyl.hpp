#pragma once

#include <iosfwd>

#include "znlgt/numeric.hpp"

namespace znlgt {

// Schwinger-Weyl pair on a single n-dimensional link. Field-basis states are
// indexed k = 0,...,n-1; k = 0 is the zero-field state.

// Cyclic shift U, U e_k = e_{(k+1) mod n}.
Eigen::MatrixXcd shift_operator(int n);

// Clock V = diag(e^{-2πik/n}), diagonal in the field basis.
Eigen::MatrixXcd clock_operator(int n);

// Unitary whose column k is the Fourier vector u_k = n^{-1/2} Σ_l e^{2πikl/n} e_l,
// an eigenvector of U with eigenvalue e^{-2πik/n}.
Eigen::MatrixXcd fourier_eigenbasis(int n);

// max-norm of V^{-k} U^l V^k - e^{2πikl/n} U^l; zero up to rounding for all
// integers k, l.
double weyl_relation_residual(int n, int k, int ell);

// Field energy f(V) = (V - I)(V† - I)/4, diagonal with eigenvalues
// sin²(πk/n). The chiral variant substitutes V -> e^{-iπ/n} V, which moves the
// eigenvalues to sin²(π(k+1/2)/n) and produces two degenerate minima at k = 0
// and k = n-1.
Eigen::MatrixXcd field_energy_operator(int n, bool chiral = false);

// Closed-form eigenvalue S(k) of field_energy_operator.
double field_energy_eigenvalue(int n, int k, bool chiral = false);

// Relative error |S(k) - (πk/n)²| / (πk/n)² of the quadratic approximation
// near the spectrum minimum. Requires 0 < k < n/4.
double quadratic_approximation_error(int n, int k);

// Builds Σ_i c†_{i+1} c_i on an n-site fermionic ring, restricts it to the
// one-particle sector, and returns the max-norm distance from shift_operator(n).
double ring_hopping_equivalence(int n);

// Debug pretty-printer: one row per line, entries as "re+imi" with 6
// significant digits.
void print_operator(std::ostream& os, const Eigen::MatrixXcd& m);

}  // namespace znlgt
