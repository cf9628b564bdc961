#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "znlgt/effective.hpp"

namespace znlgt {

inline constexpr std::size_t default_dense_cap = 4096;

// Raised when a dense solve would exceed the configured dimension cap.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(std::size_t dim, std::size_t cap);
  std::size_t dim;
  std::size_t cap;
};

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXcd eigenvectors; // orthonormal columns
};

SpectralDecomposition dense_eigensolve(const SparseOperator& h,
                                       std::size_t cap = default_dense_cap);

// ψ(t_j) = e^{-iHt_j} ψ0 for every listed time, as columns.
Eigen::MatrixXcd evolve_states(const SpectralDecomposition& decomp,
                               const Eigen::VectorXcd& psi0,
                               const std::vector<double>& times);

// Labels the coordinates of a state vector: either the full reference basis
// or a sector listed by full-space indices.
struct MeasurementBasis {
  LatticeSpec spec;
  bool chiral = false;
  std::vector<StateIndex> index_map;  // empty means the identity map

  static MeasurementBasis full(const LatticeSpec& spec, bool chiral = false);
  static MeasurementBasis sector(const LatticeSpec& spec,
                                 std::vector<StateIndex> indices,
                                 bool chiral = false);

  std::size_t dim() const;
  StateIndex full_index(std::size_t i) const;

  Eigen::VectorXd charge_density(const Eigen::VectorXcd& psi) const;
  Eigen::VectorXd field_proxy(const Eigen::VectorXcd& psi) const;
  double field_proxy(const Eigen::VectorXcd& psi, int link) const;
  Eigen::VectorXd field_energy(const Eigen::VectorXcd& psi) const;
  double gamma_expectation(const Eigen::VectorXcd& psi) const;
};

// Symmetric winding representative of a cyclic link index: k for k <= n/2,
// k - n otherwise.
int winding_representative(int k, int n);

struct ObservableSeries {
  std::vector<double> times;
  Eigen::MatrixXd charge_density;  // times x sites
  Eigen::MatrixXd field_proxy;     // times x links
  Eigen::MatrixXd field_energy;    // times x links
  Eigen::VectorXd gamma_expectation;
  std::optional<Eigen::VectorXd> fidelity;
};

// Spectral time evolution plus per-time diagonal observables. psi0 must be
// normalized to 1e-8.
ObservableSeries evolve(const SparseOperator& h, const Eigen::VectorXcd& psi0,
                        const std::vector<double>& times,
                        const MeasurementBasis& basis,
                        std::size_t cap = default_dense_cap);

// <ψ|Γ|ψ>; zero exactly when ψ lies in the physical sector.
double gauge_violation(const Eigen::VectorXcd& psi, const SparseOperator& gamma);

struct FidelityPoint {
  double u = 0.0;
  double epsilon = 0.0;  // max over sampled t of 1 - |<ψ_eff|ψ_full>|²
};

// Evolves the same physical initial state under H_(1) (full space) and under
// the sector-restricted second-order effective Hamiltonian, for each penalty
// strength in u_values.
std::vector<FidelityPoint> fidelity_scan(const LatticeSpec& spec,
                                         const ModelParams& params,
                                         const PenaltyParams& pp,
                                         const std::vector<double>& u_values,
                                         double t_max, double dt,
                                         const BasisState& initial,
                                         std::size_t cap = default_dense_cap);

// Ground-state energy of H_n restricted to the physical sector; empty when
// the sector itself is empty.
std::optional<double> sector_ground_energy(const LatticeSpec& spec,
                                           const ModelParams& params,
                                           std::size_t cap = default_dense_cap);

std::vector<double> sample_times(double t_max, double dt);

}  // namespace znlgt
