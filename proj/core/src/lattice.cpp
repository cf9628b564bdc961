#include "znlgt/lattice.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace znlgt {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int max_sites = 24;

// Scratch decode of the link digits for one full-space index.
using LinkDigits = std::array<int, max_sites>;

void split_index(StateIndex idx, const LatticeSpec& spec, FermionWord& word,
                 LinkDigits& digits) {
  word = FermionWord(idx & (spec.fermion_dim() - 1));
  StateIndex rest = idx >> spec.sites;
  for (int j = 0; j < spec.links(); ++j) {
    digits[j] = int(rest % StateIndex(spec.link_dim));
    rest /= StateIndex(spec.link_dim);
  }
}

StateIndex join_index(const LatticeSpec& spec, FermionWord word,
                      const LinkDigits& digits) {
  StateIndex idx = 0;
  for (int j = spec.links() - 1; j >= 0; --j)
    idx = idx * StateIndex(spec.link_dim) + StateIndex(digits[j]);
  return (idx << spec.sites) | StateIndex(word);
}

void require_site(int x, const LatticeSpec& spec) {
  if (x < 0 || x >= spec.sites)
    throw std::out_of_range("site index " + std::to_string(x) +
                            " outside chain of length " +
                            std::to_string(spec.sites));
}

}  // namespace

LatticeSpec LatticeSpec::open(int sites, int link_dim, int left_background,
                              int right_background) {
  LatticeSpec spec{sites, link_dim, Boundary::Open, left_background,
                   right_background};
  spec.validate();
  return spec;
}

LatticeSpec LatticeSpec::periodic(int sites, int link_dim) {
  LatticeSpec spec{sites, link_dim, Boundary::Periodic, 0, 0};
  spec.validate();
  return spec;
}

std::uint64_t LatticeSpec::dim() const {
  std::uint64_t d = fermion_dim();
  for (int j = 0; j < links(); ++j) d *= std::uint64_t(link_dim);
  return d;
}

void LatticeSpec::validate() const {
  if (sites < 1)
    throw std::invalid_argument("chain needs at least one site");
  if (sites > max_sites)
    throw std::invalid_argument("chain length exceeds supported maximum " +
                                std::to_string(max_sites));
  if (link_dim < 2)
    throw std::invalid_argument("link dimension must be at least 2, got " +
                                std::to_string(link_dim));
  if (!periodic()) {
    if (left_background < 0 || left_background >= link_dim ||
        right_background < 0 || right_background >= link_dim)
      throw std::invalid_argument("background field index outside 0..n-1");
  }
  if (periodic() && sites < 2)
    throw std::invalid_argument("periodic chain needs at least two sites");
}

StateIndex encode(const BasisState& state, const LatticeSpec& spec) {
  if (int(state.occupations.size()) != spec.sites ||
      int(state.links.size()) != spec.links())
    throw std::invalid_argument("basis state shape does not match lattice");
  FermionWord word = 0;
  for (int x = 0; x < spec.sites; ++x) {
    const int n = state.occupations[x];
    if (n != 0 && n != 1)
      throw std::invalid_argument("occupation digit outside {0,1}");
    word |= FermionWord(n) << x;
  }
  LinkDigits digits{};
  for (int j = 0; j < spec.links(); ++j) {
    const int k = state.links[j];
    if (k < 0 || k >= spec.link_dim)
      throw std::invalid_argument("link digit outside 0..n-1");
    digits[j] = k;
  }
  return join_index(spec, word, digits);
}

BasisState decode(StateIndex idx, const LatticeSpec& spec) {
  if (idx >= spec.dim())
    throw std::out_of_range("state index outside Hilbert space");
  FermionWord word;
  LinkDigits digits;
  split_index(idx, spec, word, digits);
  BasisState state;
  state.occupations.resize(spec.sites);
  state.links.resize(spec.links());
  for (int x = 0; x < spec.sites; ++x)
    state.occupations[x] = int((word >> x) & 1);
  for (int j = 0; j < spec.links(); ++j) state.links[j] = digits[j];
  return state;
}

std::string format_state(const BasisState& state, const LatticeSpec& spec) {
  std::string out;
  for (int x = 0; x < spec.sites; ++x)
    out += state.occupations[x] ? '1' : '0';
  out += ',';
  for (int j = 0; j < spec.links(); ++j) {
    if (j > 0 && spec.link_dim > 10) out += '.';
    out += std::to_string(state.links[j]);
  }
  return out;
}

void write_basis_dump(std::ostream& os, const std::vector<StateIndex>& indices,
                      const LatticeSpec& spec) {
  for (const StateIndex idx : indices)
    os << idx << ',' << format_state(decode(idx, spec), spec) << '\n';
}

SparseOperator fermion_annihilation(int x, const LatticeSpec& spec) {
  require_site(x, spec);
  const StateIndex dim = spec.dim();
  std::vector<Triplet> trips;
  trips.reserve(dim / 2);
  const FermionWord bit = FermionWord{1} << x;
  for (StateIndex idx = 0; idx < dim; ++idx) {
    const FermionWord word = FermionWord(idx & (spec.fermion_dim() - 1));
    if (!(word & bit)) continue;
    const int sign = jw_sign(word, x);
    trips.emplace_back(int(idx - StateIndex(bit)), int(idx), double(sign));
  }
  return SparseOperator(dim, trips, false);
}

SparseOperator fermion_creation(int x, const LatticeSpec& spec) {
  require_site(x, spec);
  const StateIndex dim = spec.dim();
  std::vector<Triplet> trips;
  trips.reserve(dim / 2);
  const FermionWord bit = FermionWord{1} << x;
  for (StateIndex idx = 0; idx < dim; ++idx) {
    const FermionWord word = FermionWord(idx & (spec.fermion_dim() - 1));
    if (word & bit) continue;
    const int sign = jw_sign(word, x);
    trips.emplace_back(int(idx + StateIndex(bit)), int(idx), double(sign));
  }
  return SparseOperator(dim, trips, false);
}

SparseOperator number_operator(int x, const LatticeSpec& spec) {
  require_site(x, spec);
  const StateIndex dim = spec.dim();
  std::vector<Triplet> trips;
  const FermionWord bit = FermionWord{1} << x;
  for (StateIndex idx = 0; idx < dim; ++idx)
    if (idx & StateIndex(bit)) trips.emplace_back(int(idx), int(idx), 1.0);
  return SparseOperator(dim, trips, true);
}

SparseOperator link_operator_embed(int link, const Eigen::MatrixXcd& op,
                                   const LatticeSpec& spec) {
  if (link < 0 || link >= spec.links())
    throw std::out_of_range("link index outside lattice");
  if (op.rows() != spec.link_dim || op.cols() != spec.link_dim)
    throw std::invalid_argument("link operator dimension mismatch");

  StateIndex stride = spec.fermion_dim();
  for (int j = 0; j < link; ++j) stride *= StateIndex(spec.link_dim);

  const StateIndex dim = spec.dim();
  std::vector<Triplet> trips;
  for (StateIndex idx = 0; idx < dim; ++idx) {
    const int k = int((idx / stride) % StateIndex(spec.link_dim));
    for (int r = 0; r < spec.link_dim; ++r) {
      const cplx amp = op(r, k);
      if (amp == cplx(0.0, 0.0)) continue;
      const StateIndex target =
          idx + (StateIndex(r) - StateIndex(k)) * stride;
      trips.emplace_back(int(target), int(idx), amp);
    }
  }
  return SparseOperator(dim, trips, false);
}

int gauss_offset(const LatticeSpec& spec, FermionWord occupations,
                 const int* link_digits, int x) {
  const int n = spec.link_dim;
  const int occ = int((occupations >> x) & 1);
  const int parity_term = (spec.parity(x) - 1) / 2;  // 0 even, -1 odd
  int right, left;
  if (spec.periodic()) {
    right = link_digits[x];
    left = link_digits[(x + spec.sites - 1) % spec.sites];
  } else {
    right = (x == spec.sites - 1) ? spec.right_background : link_digits[x];
    left = (x == 0) ? spec.left_background : link_digits[x - 1];
  }
  const int raw = occ + parity_term - right + left;
  return ((raw % n) + n) % n;
}

SparseOperator gauss_operator(int x, const LatticeSpec& spec) {
  require_site(x, spec);
  const StateIndex dim = spec.dim();
  std::vector<Triplet> trips;
  trips.reserve(dim);
  FermionWord word;
  LinkDigits digits;
  for (StateIndex idx = 0; idx < dim; ++idx) {
    split_index(idx, spec, word, digits);
    const int j = gauss_offset(spec, word, digits.data(), x);
    trips.emplace_back(int(idx), int(idx),
                       std::polar(1.0, 2.0 * pi * j / spec.link_dim));
  }
  return SparseOperator(dim, trips, false);
}

std::vector<StateIndex> sector_filter(const std::vector<int>& charges,
                                      const LatticeSpec& spec) {
  if (int(charges.size()) != spec.sites)
    throw std::invalid_argument("charge vector length must equal site count");
  const StateIndex dim = spec.dim();
  std::vector<StateIndex> kept;
  FermionWord word;
  LinkDigits digits;
  for (StateIndex idx = 0; idx < dim; ++idx) {
    split_index(idx, spec, word, digits);
    bool ok = true;
    for (int x = 0; x < spec.sites && ok; ++x) {
      const int want = ((charges[x] % spec.link_dim) + spec.link_dim) %
                       spec.link_dim;
      ok = gauss_offset(spec, word, digits.data(), x) == want;
    }
    if (ok) kept.push_back(idx);
  }
  return kept;
}

std::vector<StateIndex> physical_filter(const LatticeSpec& spec) {
  return sector_filter(std::vector<int>(spec.sites, 0), spec);
}

BasisState dirac_sea_state(const LatticeSpec& spec, int k0) {
  if (k0 < 0 || k0 >= spec.link_dim)
    throw std::invalid_argument("link index k0 outside 0..n-1");
  BasisState state;
  state.occupations.resize(spec.sites);
  state.links.assign(spec.links(), k0);
  for (int x = 0; x < spec.sites; ++x)
    state.occupations[x] = (x % 2 == 1) ? 1 : 0;
  return state;
}

BasisState string_state(const LatticeSpec& spec, int x_even, int x_odd) {
  if (spec.periodic())
    throw std::invalid_argument("string states are defined on open chains");
  require_site(x_even, spec);
  require_site(x_odd, spec);
  if (x_even % 2 != 0 || x_odd % 2 != 1)
    throw std::invalid_argument("string endpoints need even/odd parities");

  BasisState state = dirac_sea_state(spec, 0);
  state.occupations[x_odd] = 0;
  state.occupations[x_even] = 1;
  // Raising by one step keeps Gauss's law when the particle sits left of the
  // antiparticle; the mirrored orientation lowers instead.
  const int step = (x_even < x_odd) ? 1 : spec.link_dim - 1;
  const int lo = std::min(x_even, x_odd);
  const int hi = std::max(x_even, x_odd);
  for (int j = lo; j < hi; ++j)
    state.links[j] = (state.links[j] + step) % spec.link_dim;
  return state;
}

}  // namespace znlgt
