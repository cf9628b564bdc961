#include "znlgt/solver.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "znlgt/weyl.hpp"

namespace znlgt {

namespace {

std::string capacity_message(std::size_t dim, std::size_t cap) {
  return "dense solve of dimension " + std::to_string(dim) +
         " exceeds the cap " + std::to_string(cap) +
         "; restrict to a symmetry sector or raise the cap";
}

void require_normalized(const Eigen::VectorXcd& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("state vector is not normalized");
}

}  // namespace

CapacityError::CapacityError(std::size_t dim_, std::size_t cap_)
    : std::runtime_error(capacity_message(dim_, cap_)), dim(dim_), cap(cap_) {}

SpectralDecomposition dense_eigensolve(const SparseOperator& h,
                                       std::size_t cap) {
  if (h.dim() > cap) throw CapacityError(h.dim(), cap);
  const Eigen::MatrixXcd dense = h.dense();
  if (hermiticity_gap(dense) > 1e-10 * std::max(1.0, max_abs(dense)))
    throw std::invalid_argument("dense_eigensolve needs a Hermitian operator");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXcd evolve_states(const SpectralDecomposition& decomp,
                               const Eigen::VectorXcd& psi0,
                               const std::vector<double>& times) {
  require_normalized(psi0);
  const Eigen::VectorXcd modes = decomp.eigenvectors.adjoint() * psi0;
  Eigen::MatrixXcd states(psi0.size(), Eigen::Index(times.size()));
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double t = times[j];
    if (t == 0.0) {  // e^{-iH·0} is the identity, bypass the basis round-trip
      states.col(Eigen::Index(j)) = psi0;
      continue;
    }
    Eigen::VectorXcd phased(modes.size());
    for (Eigen::Index k = 0; k < modes.size(); ++k)
      phased(k) = modes(k) * std::polar(1.0, -decomp.eigenvalues(k) * t);
    states.col(Eigen::Index(j)) = decomp.eigenvectors * phased;
  }
  return states;
}

MeasurementBasis MeasurementBasis::full(const LatticeSpec& spec, bool chiral) {
  return {spec, chiral, {}};
}

MeasurementBasis MeasurementBasis::sector(const LatticeSpec& spec,
                                          std::vector<StateIndex> indices,
                                          bool chiral) {
  return {spec, chiral, std::move(indices)};
}

std::size_t MeasurementBasis::dim() const {
  return index_map.empty() ? std::size_t(spec.dim()) : index_map.size();
}

StateIndex MeasurementBasis::full_index(std::size_t i) const {
  return index_map.empty() ? StateIndex(i) : index_map[i];
}

int winding_representative(int k, int n) {
  return (2 * k <= n) ? k : k - n;
}

Eigen::VectorXd MeasurementBasis::charge_density(
    const Eigen::VectorXcd& psi) const {
  Eigen::VectorXd density = Eigen::VectorXd::Zero(spec.sites);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const double w = std::norm(psi(i));
    if (w == 0.0) continue;
    const StateIndex idx = full_index(std::size_t(i));
    for (int x = 0; x < spec.sites; ++x)
      density(x) += w * double((idx >> x) & 1);
  }
  return density;
}

Eigen::VectorXd MeasurementBasis::field_proxy(const Eigen::VectorXcd& psi) const {
  Eigen::VectorXd proxy = Eigen::VectorXd::Zero(spec.links());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const double w = std::norm(psi(i));
    if (w == 0.0) continue;
    StateIndex rest = full_index(std::size_t(i)) >> spec.sites;
    for (int j = 0; j < spec.links(); ++j) {
      const int k = int(rest % StateIndex(spec.link_dim));
      rest /= StateIndex(spec.link_dim);
      proxy(j) += w * winding_representative(k, spec.link_dim);
    }
  }
  return proxy;
}

double MeasurementBasis::field_proxy(const Eigen::VectorXcd& psi,
                                     int link) const {
  if (link < 0 || link >= spec.links())
    throw std::out_of_range("link index outside lattice");
  return field_proxy(psi)(link);
}

Eigen::VectorXd MeasurementBasis::field_energy(
    const Eigen::VectorXcd& psi) const {
  Eigen::VectorXd energy = Eigen::VectorXd::Zero(spec.links());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const double w = std::norm(psi(i));
    if (w == 0.0) continue;
    StateIndex rest = full_index(std::size_t(i)) >> spec.sites;
    for (int j = 0; j < spec.links(); ++j) {
      const int k = int(rest % StateIndex(spec.link_dim));
      rest /= StateIndex(spec.link_dim);
      energy(j) += w * field_energy_eigenvalue(spec.link_dim, k, chiral);
    }
  }
  return energy;
}

double MeasurementBasis::gamma_expectation(const Eigen::VectorXcd& psi) const {
  const double two_pi = 2.0 * std::numbers::pi;
  double total = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const double w = std::norm(psi(i));
    if (w == 0.0) continue;
    const StateIndex idx = full_index(std::size_t(i));
    const FermionWord word = FermionWord(idx & (spec.fermion_dim() - 1));
    int digits[24];
    StateIndex rest = idx >> spec.sites;
    for (int j = 0; j < spec.links(); ++j) {
      digits[j] = int(rest % StateIndex(spec.link_dim));
      rest /= StateIndex(spec.link_dim);
    }
    for (int x = 0; x < spec.sites; ++x) {
      const int off = gauss_offset(spec, word, digits, x);
      total += w * 2.0 * (1.0 - std::cos(two_pi * off / spec.link_dim));
    }
  }
  return total;
}

ObservableSeries evolve(const SparseOperator& h, const Eigen::VectorXcd& psi0,
                        const std::vector<double>& times,
                        const MeasurementBasis& basis, std::size_t cap) {
  require_normalized(psi0);
  if (std::size_t(psi0.size()) != basis.dim())
    throw std::invalid_argument("state length does not match basis labels");
  for (std::size_t j = 1; j < times.size(); ++j)
    if (times[j] <= times[j - 1])
      throw std::invalid_argument("sample times must be strictly increasing");

  const SpectralDecomposition decomp = dense_eigensolve(h, cap);
  const Eigen::MatrixXcd states = evolve_states(decomp, psi0, times);

  ObservableSeries series;
  series.times = times;
  series.charge_density.resize(Eigen::Index(times.size()), basis.spec.sites);
  series.field_proxy.resize(Eigen::Index(times.size()), basis.spec.links());
  series.field_energy.resize(Eigen::Index(times.size()), basis.spec.links());
  series.gamma_expectation.resize(Eigen::Index(times.size()));
  for (std::size_t j = 0; j < times.size(); ++j) {
    const Eigen::VectorXcd psi = states.col(Eigen::Index(j));
    series.charge_density.row(Eigen::Index(j)) = basis.charge_density(psi);
    series.field_proxy.row(Eigen::Index(j)) = basis.field_proxy(psi);
    series.field_energy.row(Eigen::Index(j)) = basis.field_energy(psi);
    series.gamma_expectation(Eigen::Index(j)) = basis.gamma_expectation(psi);
  }
  return series;
}

double gauge_violation(const Eigen::VectorXcd& psi,
                       const SparseOperator& gamma) {
  require_normalized(psi);
  if (std::size_t(psi.size()) != gamma.dim())
    throw std::invalid_argument("state and Γ dimensions differ");
  const cplx value = psi.dot(gamma.apply(psi));
  return value.real();
}

std::vector<double> sample_times(double t_max, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("time step must be positive");
  if (t_max < dt) throw std::invalid_argument("t_max must be at least dt");
  std::vector<double> times;
  times.push_back(0.0);
  for (int j = 1; double(j) * dt <= t_max * (1.0 + 1e-12); ++j)
    times.push_back(double(j) * dt);
  return times;
}

std::vector<FidelityPoint> fidelity_scan(const LatticeSpec& spec,
                                         const ModelParams& params,
                                         const PenaltyParams& pp,
                                         const std::vector<double>& u_values,
                                         double t_max, double dt,
                                         const BasisState& initial,
                                         std::size_t cap) {
  const std::vector<double> times = sample_times(t_max, dt);
  const SectorProjector proj = physical_projector(spec);
  const StateIndex idx0 = encode(initial, spec);

  // Sector coordinate of the initial state; it must be physical.
  Eigen::Index sector0 = -1;
  for (std::size_t j = 0; j < proj.indices.size(); ++j)
    if (proj.indices[j] == idx0) sector0 = Eigen::Index(j);
  if (sector0 < 0)
    throw std::invalid_argument("fidelity scan needs a physical initial state");

  const SparseOperator gamma = build_gamma(spec);
  std::vector<FidelityPoint> table;
  table.reserve(u_values.size());
  for (const double u : u_values) {
    if (u <= 0.0) throw std::invalid_argument("penalty u must be positive");
    PenaltyParams local = pp;
    local.u = u;

    const SparseOperator h0 = build_uncoupled_hamiltonian(local, params, spec);
    const SparseOperator h1 =
        build_penalized(h0, gamma, local, spec.link_dim);
    const SparseOperator heff =
        second_order_effective(h0, gamma, local, spec.link_dim, proj);

    Eigen::VectorXcd full0 = Eigen::VectorXcd::Zero(Eigen::Index(spec.dim()));
    full0(Eigen::Index(idx0)) = 1.0;
    Eigen::VectorXcd sec0 =
        Eigen::VectorXcd::Zero(Eigen::Index(proj.dim_sector()));
    sec0(sector0) = 1.0;

    const Eigen::MatrixXcd full_states =
        evolve_states(dense_eigensolve(h1, cap), full0, times);
    const Eigen::MatrixXcd eff_states =
        evolve_states(dense_eigensolve(heff, cap), sec0, times);

    double eps = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j) {
      const Eigen::VectorXcd eff_full =
          embed_sector_vector(eff_states.col(Eigen::Index(j)), proj);
      const double overlap =
          std::norm(eff_full.dot(full_states.col(Eigen::Index(j))));
      eps = std::max(eps, 1.0 - overlap);
    }
    table.push_back({u, eps});
  }
  return table;
}

std::optional<double> sector_ground_energy(const LatticeSpec& spec,
                                           const ModelParams& params,
                                           std::size_t cap) {
  const SectorProjector proj = physical_projector(spec);
  if (proj.empty()) return std::nullopt;
  const SparseOperator h = build_gauge_hamiltonian(params, spec);
  const SparseOperator sector = restrict_to_sector(h, proj);
  const SpectralDecomposition decomp = dense_eigensolve(sector, cap);
  return decomp.eigenvalues(0);
}

}  // namespace znlgt
