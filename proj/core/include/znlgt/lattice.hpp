#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "znlgt/fock.hpp"
#include "znlgt/sparse_operator.hpp"

namespace znlgt {

enum class Boundary { Open, Periodic };

// Geometry of the chain: `sites` staggered fermion sites (site 0 is even) and
// n-dimensional links between neighbours. Open chains carry fixed background
// field indices beyond both ends; periodic chains close through link
// sites-1 -> 0.
struct LatticeSpec {
  int sites = 2;
  int link_dim = 2;
  Boundary boundary = Boundary::Open;
  int left_background = 0;
  int right_background = 0;

  static LatticeSpec open(int sites, int link_dim, int left_background = 0,
                          int right_background = 0);
  static LatticeSpec periodic(int sites, int link_dim);

  bool periodic() const { return boundary == Boundary::Periodic; }
  int links() const { return periodic() ? sites : sites - 1; }
  int parity(int x) const { return (x % 2 == 0) ? 1 : -1; }
  std::uint64_t fermion_dim() const { return std::uint64_t{1} << sites; }
  std::uint64_t dim() const;

  void validate() const;
};

// Reference-basis state: one occupation bit per site, one field index per link.
struct BasisState {
  std::vector<int> occupations;
  std::vector<int> links;

  bool operator==(const BasisState&) const = default;
};

// Mixed-radix encoding with digits (n_0,...,n_{L-1}, k_0,...,k_{links-1});
// n_0 is least significant, sites in radix 2 followed by links in radix n.
StateIndex encode(const BasisState& state, const LatticeSpec& spec);
BasisState decode(StateIndex idx, const LatticeSpec& spec);

// "occ_bits,link_digits": occupations as a 0/1 string (site 0 leftmost),
// link digits in base n, '.'-separated when n > 10.
std::string format_state(const BasisState& state, const LatticeSpec& spec);

// One "idx,occ_bits,link_digits" line per listed state.
void write_basis_dump(std::ostream& os, const std::vector<StateIndex>& indices,
                      const LatticeSpec& spec);

// ψ_x with the Jordan-Wigner string over site factors 0..x-1; link factors
// carry no string.
SparseOperator fermion_annihilation(int x, const LatticeSpec& spec);
SparseOperator fermion_creation(int x, const LatticeSpec& spec);
SparseOperator number_operator(int x, const LatticeSpec& spec);

// op acting on the chosen link factor, identity elsewhere.
SparseOperator link_operator_embed(int link, const Eigen::MatrixXcd& op,
                                   const LatticeSpec& spec);

// Integer Gauss offset j in 0..n-1 at site x: T_x eigenvalue is e^{2πij/n}.
// Open ends substitute the background indices for the missing link.
int gauss_offset(const LatticeSpec& spec, FermionWord occupations,
                 const int* link_digits, int x);

// Generalized Gauss generator T_x = e^{(2πi/n)(n_x + ((-1)^x - 1)/2)}
// V_{x,x+1} V†_{x-1,x}; unitary and diagonal in the reference basis.
SparseOperator gauss_operator(int x, const LatticeSpec& spec);

// All reference-basis states with T_x eigenvalue 1 at every site, by direct
// diagonal evaluation (no operator assembly). Output ascending.
std::vector<StateIndex> physical_filter(const LatticeSpec& spec);

// States with T_x eigenvalue e^{2πi q_x/n}; all-zero charges reproduces
// physical_filter.
std::vector<StateIndex> sector_filter(const std::vector<int>& charges,
                                      const LatticeSpec& spec);

// Odd sites occupied, even sites empty, every link at index k0.
BasisState dirac_sea_state(const LatticeSpec& spec, int k0);

// Dirac sea with the fermion moved from x_odd to x_even and the links between
// them stepped one unit so the state stays physical. Open boundary only.
BasisState string_state(const LatticeSpec& spec, int x_even, int x_odd);

}  // namespace znlgt
