#include "znlgt/hamiltonians.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "znlgt/weyl.hpp"

namespace znlgt {

namespace {

constexpr double pi = std::numbers::pi;

struct Bond {
  int left;   // site x
  int right;  // site x+1 (mod L)
  int link;   // connecting link index
};

std::vector<Bond> bonds(const LatticeSpec& spec) {
  std::vector<Bond> out;
  const int count = spec.periodic() ? spec.sites : spec.sites - 1;
  out.reserve(count);
  for (int x = 0; x < count; ++x)
    out.push_back({x, (x + 1) % spec.sites, x});
  return out;
}

void require_chain(const LatticeSpec& spec) {
  spec.validate();
  if (spec.sites < 2)
    throw std::invalid_argument("Hamiltonians need at least two sites");
}

// Walks every reference-basis state once and hands the decoded digits to the
// per-state assembler.
template <typename Fn>
void for_each_state(const LatticeSpec& spec, Fn&& fn) {
  const StateIndex dim = spec.dim();
  std::array<int, 24> digits{};
  for (StateIndex idx = 0; idx < dim; ++idx) {
    const FermionWord word = FermionWord(idx & (spec.fermion_dim() - 1));
    StateIndex rest = idx >> spec.sites;
    for (int j = 0; j < spec.links(); ++j) {
      digits[j] = int(rest % StateIndex(spec.link_dim));
      rest /= StateIndex(spec.link_dim);
    }
    fn(idx, word, digits.data());
  }
}

StateIndex link_stride(const LatticeSpec& spec, int link) {
  StateIndex stride = spec.fermion_dim();
  for (int j = 0; j < link; ++j) stride *= StateIndex(spec.link_dim);
  return stride;
}

// Hop a fermion from `from` to `to` with Jordan-Wigner signs; false when
// blocked by occupations.
bool hop_word(FermionWord word, int from, int to, FermionWord& out, int& sign) {
  sign = 1;
  out = word;
  if (!apply_annihilate(out, from, sign)) return false;
  if (!apply_create(out, to, sign)) return false;
  return true;
}

double bond_density(FermionWord word, const Bond& b) {
  const int nl = int((word >> b.left) & 1);
  const int nr = int((word >> b.right) & 1);
  return double(nl * (1 - nr) + nr * (1 - nl));
}

double density_counterterm_coefficient(const PenaltyParams& pp) {
  switch (pp.counterterms) {
    case CountertermMode::Off:
      return 0.0;
    case CountertermMode::Manual:
      return pp.manual_density;
    case CountertermMode::Auto:
      if (pp.u <= 0.0)
        throw std::invalid_argument("auto counterterms need a positive penalty u");
      return pp.t_tilde * pp.t_tilde / (2.0 * pp.u);
  }
  return 0.0;
}

double diagonal_energy(const LatticeSpec& spec, const ModelParams& params,
                       double g2, FermionWord word, const int* digits,
                       double density_coeff) {
  double e = 0.0;
  for (int x = 0; x < spec.sites; ++x)
    e += params.m * spec.parity(x) * double((word >> x) & 1);
  for (int j = 0; j < spec.links(); ++j)
    e += 0.5 * g2 *
         field_energy_eigenvalue(spec.link_dim, digits[j], params.chiral);
  if (density_coeff != 0.0)
    for (const Bond& b : bonds(spec)) e += density_coeff * bond_density(word, b);
  return e;
}

// Emits -amp (ψ†_{to} ψ_{from}) with an optional link step on the bond's link.
void emit_hop(std::vector<Triplet>& trips, const LatticeSpec& spec,
              StateIndex idx, FermionWord word, const int* digits,
              const Bond& b, int from, int to, int link_step, double amp) {
  FermionWord hopped;
  int sign;
  if (!hop_word(word, from, to, hopped, sign)) return;
  StateIndex target = idx + StateIndex(hopped) - StateIndex(word);
  if (link_step != 0) {
    const int k = digits[b.link];
    const int k2 = (k + link_step + spec.link_dim) % spec.link_dim;
    target += (StateIndex(k2) - StateIndex(k)) * link_stride(spec, b.link);
  }
  trips.emplace_back(int(target), int(idx), -amp * sign);
}

}  // namespace

double penalty_gap(int n) {
  if (n < 2)
    throw std::invalid_argument("link dimension must be at least 2");
  return 2.0 * (1.0 - std::cos(2.0 * pi / n));
}

SparseOperator build_gauge_hamiltonian(const ModelParams& params,
                                       const LatticeSpec& spec) {
  require_chain(spec);
  const auto bond_list = bonds(spec);
  std::vector<Triplet> trips;
  trips.reserve(std::size_t(spec.dim()) * (2 * bond_list.size() + 1));
  for_each_state(spec, [&](StateIndex idx, FermionWord word, const int* digits) {
    const double diag =
        diagonal_energy(spec, params, params.g2, word, digits, 0.0);
    if (diag != 0.0) trips.emplace_back(int(idx), int(idx), diag);
    for (const Bond& b : bond_list) {
      // ψ†_x U_{x,x+1} ψ_{x+1}: the fermion moves right-to-left and the link
      // index is raised; the conjugate lowers it.
      emit_hop(trips, spec, idx, word, digits, b, b.right, b.left, +1, params.t);
      emit_hop(trips, spec, idx, word, digits, b, b.left, b.right, -1, params.t);
    }
  });
  return SparseOperator(spec.dim(), trips, true);
}

SparseOperator build_diagonal_hamiltonian(const PenaltyParams& pp,
                                          const ModelParams& params,
                                          const LatticeSpec& spec,
                                          bool with_counterterms) {
  require_chain(spec);
  const double g2 = pp.field_coupling.value_or(params.g2);
  const double ct =
      with_counterterms ? density_counterterm_coefficient(pp) : 0.0;
  std::vector<Triplet> trips;
  trips.reserve(spec.dim());
  for_each_state(spec, [&](StateIndex idx, FermionWord word, const int* digits) {
    const double diag = diagonal_energy(spec, params, g2, word, digits, ct);
    if (diag != 0.0) trips.emplace_back(int(idx), int(idx), diag);
  });
  return SparseOperator(spec.dim(), trips, true);
}

SparseOperator build_uncoupled_hamiltonian(const PenaltyParams& pp,
                                           const ModelParams& params,
                                           const LatticeSpec& spec) {
  require_chain(spec);
  const auto bond_list = bonds(spec);
  const double g2 = pp.field_coupling.value_or(params.g2);
  const double ct = density_counterterm_coefficient(pp);
  std::vector<Triplet> trips;
  trips.reserve(std::size_t(spec.dim()) *
                (2 * bond_list.size() + 2 * spec.links() + 1));
  for_each_state(spec, [&](StateIndex idx, FermionWord word, const int* digits) {
    const double diag = diagonal_energy(spec, params, g2, word, digits, ct);
    if (diag != 0.0) trips.emplace_back(int(idx), int(idx), diag);
    for (const Bond& b : bond_list) {
      emit_hop(trips, spec, idx, word, digits, b, b.right, b.left, 0,
               pp.t_tilde);
      emit_hop(trips, spec, idx, word, digits, b, b.left, b.right, 0,
               pp.t_tilde);
    }
    // Rabi transitions -w̃ (U + U†) on every link.
    if (pp.w_tilde != 0.0) {
      for (int j = 0; j < spec.links(); ++j) {
        const StateIndex stride = link_stride(spec, j);
        const int k = digits[j];
        for (const int step : {+1, -1}) {
          const int k2 = (k + step + spec.link_dim) % spec.link_dim;
          const StateIndex target =
              idx + (StateIndex(k2) - StateIndex(k)) * stride;
          trips.emplace_back(int(target), int(idx), -pp.w_tilde);
        }
      }
    }
  });
  return SparseOperator(spec.dim(), trips, true);
}

SparseOperator build_gamma(const LatticeSpec& spec) {
  spec.validate();
  const int n = spec.link_dim;
  std::vector<Triplet> trips;
  trips.reserve(spec.dim());
  for_each_state(spec, [&](StateIndex idx, FermionWord word, const int* digits) {
    double value = 0.0;
    for (int x = 0; x < spec.sites; ++x) {
      const int j = gauss_offset(spec, word, digits, x);
      value += 2.0 * (1.0 - std::cos(2.0 * pi * j / n));
    }
    if (value != 0.0) trips.emplace_back(int(idx), int(idx), value);
  });
  return SparseOperator(spec.dim(), trips, true);
}

SparseOperator build_gamma_site(int x, const LatticeSpec& spec) {
  spec.validate();
  if (x < 0 || x >= spec.sites)
    throw std::out_of_range("site index outside chain");
  const int n = spec.link_dim;
  std::vector<Triplet> trips;
  for_each_state(spec, [&](StateIndex idx, FermionWord word, const int* digits) {
    const int j = gauss_offset(spec, word, digits, x);
    const double value = 2.0 * (1.0 - std::cos(2.0 * pi * j / n));
    if (value != 0.0) trips.emplace_back(int(idx), int(idx), value);
  });
  return SparseOperator(spec.dim(), trips, true);
}

SparseOperator build_penalized(const SparseOperator& h0,
                               const SparseOperator& gamma,
                               const PenaltyParams& pp, int n) {
  if (h0.dim() != gamma.dim())
    throw std::invalid_argument("H_(0) and Γ dimensions differ");
  return h0 + (pp.u / penalty_gap(n)) * gamma;
}

SparseOperator build_target_effective(const PenaltyParams& pp,
                                      const ModelParams& params,
                                      const LatticeSpec& spec) {
  require_chain(spec);
  if (pp.u <= 0.0)
    throw std::invalid_argument("penalty scale u must be positive");
  const auto bond_list = bonds(spec);
  const double g2 = pp.field_coupling.value_or(params.g2);
  const double ct = density_counterterm_coefficient(pp);
  // U = U† collapses the two Rabi directions onto each other at n = 2, which
  // doubles the induced hopping amplitude.
  const double hop_coeff =
      (spec.link_dim == 2 ? 2.0 : 1.0) * pp.t_tilde * pp.w_tilde / pp.u;
  const double density_coeff = -pp.t_tilde * pp.t_tilde / (2.0 * pp.u) + ct;

  std::vector<Triplet> trips;
  for_each_state(spec, [&](StateIndex idx, FermionWord word, const int* digits) {
    double diag = diagonal_energy(spec, params, g2, word, digits, 0.0);
    for (const Bond& b : bond_list)
      diag += density_coeff * bond_density(word, b);
    if (diag != 0.0) trips.emplace_back(int(idx), int(idx), diag);
    for (const Bond& b : bond_list) {
      emit_hop(trips, spec, idx, word, digits, b, b.right, b.left, +1,
               hop_coeff);
      emit_hop(trips, spec, idx, word, digits, b, b.left, b.right, -1,
               hop_coeff);
    }
  });
  const SparseOperator full(spec.dim(), trips, true);
  return full.restricted(physical_filter(spec));
}

}  // namespace znlgt
