#pragma once

#include <optional>

#include "znlgt/lattice.hpp"
#include "znlgt/sparse_operator.hpp"

namespace znlgt {

// Couplings of the gauge-invariant chain Hamiltonian.
struct ModelParams {
  double t = 1.0;
  double m = 0.0;
  double g2 = 0.0;
  bool chiral = false;
};

enum class CountertermMode { Auto, Off, Manual };

// Couplings of the uncorrelated implementation Hamiltonian and its penalty.
// Auto counterterms cancel the bond-density term generated at second order:
// the coefficient is +t̃²/(2u) on Σ_bonds [n_x(1-n_{x+1}) + n_{x+1}(1-n_x)].
struct PenaltyParams {
  double t_tilde = 0.0;
  double w_tilde = 0.0;
  double u = 1.0;
  CountertermMode counterterms = CountertermMode::Auto;
  double manual_density = 0.0;  // Manual-mode bond-density coefficient
  std::optional<double> field_coupling;  // overrides ModelParams::g2 in H_d
};

// First excited eigenvalue γ_n = 2(1 - cos(2π/n)) of a single Γ_x.
double penalty_gap(int n);

// H_n = -t Σ (ψ†_x U ψ_{x+1} + h.c.) + m Σ (-1)^x n_x + (g²/2) Σ f(V).
SparseOperator build_gauge_hamiltonian(const ModelParams& params,
                                       const LatticeSpec& spec);

// Reference-basis diagonal part H_d: mass, field energy, and (optionally) the
// density counterterms selected by the penalty parameters.
SparseOperator build_diagonal_hamiltonian(const PenaltyParams& pp,
                                          const ModelParams& params,
                                          const LatticeSpec& spec,
                                          bool with_counterterms);

// H_(0) = -t̃ Σ (ψ†_x ψ_{x+1} + h.c.) - w̃ Σ (U + U†) + H_d.
SparseOperator build_uncoupled_hamiltonian(const PenaltyParams& pp,
                                           const ModelParams& params,
                                           const LatticeSpec& spec);

// Γ = Σ_x (T_x - 1)(T†_x - 1), diagonal and positive semidefinite; its kernel
// is the physical sector.
SparseOperator build_gamma(const LatticeSpec& spec);
SparseOperator build_gamma_site(int x, const LatticeSpec& spec);

// H_(1) = H_(0) + γ_n^{-1} u Γ.
SparseOperator build_penalized(const SparseOperator& h0,
                               const SparseOperator& gamma,
                               const PenaltyParams& pp, int n);

// Closed-form second-order effective Hamiltonian on the physical sector,
// assembled directly (no projector machinery): H_d plus the correlated hopping
// -c·Σ (ψ†_x U ψ_{x+1} + h.c.) with c = t̃w̃/u (doubled at n = 2, where
// U = U†) and the emergent bond-density term
// -(t̃²/2u)·Σ_bonds [n_x(1-n_{x+1}) + n_{x+1}(1-n_x)].
// Counterterm modes act on the H_d part; Auto cancels the density term.
SparseOperator build_target_effective(const PenaltyParams& pp,
                                      const ModelParams& params,
                                      const LatticeSpec& spec);

}  // namespace znlgt
