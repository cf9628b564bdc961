#pragma once

#include <iosfwd>

#include "znlgt/hamiltonians.hpp"

namespace znlgt {

// Projector onto the physical (Gauss-law) sector, stored as the sorted list
// of reference-basis indices it keeps. An empty sector is a valid value, not
// an error.
struct SectorProjector {
  std::vector<StateIndex> indices;
  std::size_t dim_full = 0;

  std::size_t dim_sector() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

SectorProjector physical_projector(const LatticeSpec& spec);

// P M P written in the sector basis.
SparseOperator restrict_to_sector(const SparseOperator& op,
                                  const SectorProjector& proj);

// Embeds a sector-basis vector into the full space (zero off the sector).
Eigen::VectorXcd embed_sector_vector(const Eigen::VectorXcd& v,
                                     const SectorProjector& proj);

// P H0 P - P H0 Q (γ_n^{-1} u Γ)^{-1} Q H0 P on the sector basis. Γ is
// diagonal, so the resolvent is the entrywise reciprocal on its range.
SparseOperator second_order_effective(const SparseOperator& h0,
                                      const SparseOperator& gamma,
                                      const PenaltyParams& pp, int n,
                                      const SectorProjector& proj);

// P H_d P - (2u)^{-1} P H0 Q H0 P: the uniform-denominator simplification,
// exact because Q H0 P lives entirely in the 2γ_n eigenspace of Γ.
SparseOperator second_order_simplified(const SparseOperator& h0,
                                       const SparseOperator& hd,
                                       const PenaltyParams& pp,
                                       const SectorProjector& proj);

// Largest normalized residual of (Γ - 2γ_n) on the columns of Q H0 P; zero up
// to rounding certifies that every off-sector image is a 2γ_n eigenvector.
double coupling_support_check(const SparseOperator& h0,
                              const SparseOperator& gamma,
                              const SectorProjector& proj, int n);

// max-norm of (a - b) - c·I with c = trace(a - b)/dim, i.e. the discrepancy
// after removing the best constant offset.
double compare_effective(const SparseOperator& a, const SparseOperator& b);

// One certification line "L,n,t_tilde,w_tilde,u,residual".
void write_certification_row(std::ostream& os, const LatticeSpec& spec,
                             const PenaltyParams& pp, double residual);

}  // namespace znlgt
