#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "znlgt/effective.hpp"

using namespace znlgt;

namespace {

constexpr double tol = 1e-12;

SparseOperator projector_matrix(const SectorProjector& proj) {
  std::vector<Triplet> trips;
  for (const StateIndex idx : proj.indices)
    trips.emplace_back(int(idx), int(idx), 1.0);
  return SparseOperator(proj.dim_full, trips, true);
}

}  // namespace

TEST_CASE("physical projector obeys the projector algebra") {
  const auto spec = LatticeSpec::open(2, 3);
  const auto proj = physical_projector(spec);
  CHECK(proj.dim_full == 12);
  CHECK(proj.dim_sector() == 2);

  const auto p = projector_matrix(proj);
  const auto id = SparseOperator::identity(proj.dim_full);
  const SparseMatrixXcd q = id.matrix() - p.matrix();
  CHECK(max_abs(SparseMatrixXcd(SparseMatrixXcd(p.matrix() * p.matrix()) -
                                p.matrix())) <= tol);
  CHECK(p.hermiticity_gap() <= tol);
  CHECK(max_abs(SparseMatrixXcd(p.matrix() * q)) <= tol);
  CHECK(max_abs(SparseMatrixXcd(q * p.matrix())) <= tol);

  // P keeps the Dirac sea and kills a Gauss-violating state
  Eigen::VectorXcd sea = Eigen::VectorXcd::Zero(12);
  sea(Eigen::Index(encode(dirac_sea_state(spec, 0), spec))) = 1.0;
  CHECK((p.apply(sea) - sea).norm() <= tol);
  Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(12);
  bad(0) = 1.0;  // empty chain at zero field violates the odd site
  CHECK(p.apply(bad).norm() <= tol);
}

TEST_CASE("empty sector is a value, not an error") {
  const auto spec = LatticeSpec::open(2, 5, 0, 2);
  const auto proj = physical_projector(spec);
  CHECK(proj.empty());
  CHECK(proj.dim_sector() == 0);

  PenaltyParams pp;
  pp.t_tilde = 1.0;
  pp.u = 10.0;
  pp.counterterms = CountertermMode::Off;
  const auto h0 = build_uncoupled_hamiltonian(pp, {}, spec);
  const auto gamma = build_gamma(spec);
  const auto eff = second_order_effective(h0, gamma, pp, spec.link_dim, proj);
  CHECK(eff.dim() == 0);
}

TEST_CASE("resolvent route equals the uniform-denominator simplification") {
  const ModelParams p{0.0, 0.5, 1.0, false};
  for (const auto& spec :
       {LatticeSpec::open(2, 3), LatticeSpec::open(3, 3),
        LatticeSpec::open(3, 4), LatticeSpec::periodic(4, 2)}) {
    for (const double u : {10.0, 50.0}) {
      PenaltyParams pp;
      pp.t_tilde = 1.0;
      pp.w_tilde = 0.7;
      pp.u = u;
      pp.counterterms = CountertermMode::Off;
      const auto h0 = build_uncoupled_hamiltonian(pp, p, spec);
      const auto hd = build_diagonal_hamiltonian(pp, p, spec, true);
      const auto gamma = build_gamma(spec);
      const auto proj = physical_projector(spec);

      const auto eff = second_order_effective(h0, gamma, pp, spec.link_dim, proj);
      const auto simplified = second_order_simplified(h0, hd, pp, proj);
      CHECK(eff.hermiticity_gap() <= tol);
      CHECK(max_abs(SparseMatrixXcd(eff.matrix() - simplified.matrix())) <= tol);
    }
  }
}

TEST_CASE("zero off-diagonal couplings give back the projected diagonal") {
  const auto spec = LatticeSpec::open(3, 3);
  PenaltyParams pp;
  pp.t_tilde = 0.0;
  pp.w_tilde = 0.0;
  pp.u = 20.0;
  pp.counterterms = CountertermMode::Off;
  const ModelParams p{0.0, 0.5, 1.0, false};
  const auto h0 = build_uncoupled_hamiltonian(pp, p, spec);
  const auto hd = build_diagonal_hamiltonian(pp, p, spec, true);
  const auto proj = physical_projector(spec);
  const auto eff =
      second_order_effective(h0, build_gamma(spec), pp, spec.link_dim, proj);
  CHECK(max_abs(SparseMatrixXcd(eff.matrix() -
                                restrict_to_sector(hd, proj).matrix())) == 0.0);
}

TEST_CASE("off-sector images live exactly in the doubled-gap eigenspace") {
  for (const auto& spec :
       {LatticeSpec::open(2, 2), LatticeSpec::open(3, 3),
        LatticeSpec::open(4, 4), LatticeSpec::open(4, 2),
        LatticeSpec::periodic(4, 3)}) {
    PenaltyParams pp;
    pp.t_tilde = 1.0;
    pp.w_tilde = 0.7;
    pp.u = 30.0;
    pp.counterterms = CountertermMode::Off;
    const auto h0 = build_uncoupled_hamiltonian(pp, {0.0, 0.5, 1.0, false}, spec);
    const auto gamma = build_gamma(spec);
    const auto proj = physical_projector(spec);
    CHECK(coupling_support_check(h0, gamma, proj, spec.link_dim) <= tol);
  }

  // no coupling at all when both amplitudes vanish
  const auto spec = LatticeSpec::open(3, 3);
  PenaltyParams pp;
  pp.u = 30.0;
  pp.counterterms = CountertermMode::Off;
  const auto h0 = build_uncoupled_hamiltonian(pp, {0.0, 0.5, 1.0, false}, spec);
  CHECK(coupling_support_check(h0, build_gamma(spec), physical_projector(spec),
                               spec.link_dim) == 0.0);
}

TEST_CASE("compare_effective removes constant offsets") {
  const auto spec = LatticeSpec::open(2, 3);
  PenaltyParams pp;
  pp.t_tilde = 1.0;
  pp.w_tilde = 0.7;
  pp.u = 25.0;
  pp.counterterms = CountertermMode::Off;
  const auto h0 = build_uncoupled_hamiltonian(pp, {0.0, 0.5, 1.0, false}, spec);
  const auto proj = physical_projector(spec);
  const auto eff =
      second_order_effective(h0, build_gamma(spec), pp, spec.link_dim, proj);

  CHECK(compare_effective(eff, eff) == 0.0);
  const auto shifted = eff + 5.0 * SparseOperator::identity(eff.dim());
  CHECK(compare_effective(eff, shifted) <= tol);

  const auto wrong = SparseOperator::identity(3);
  CHECK_THROWS_AS(compare_effective(eff, wrong), std::invalid_argument);
}

TEST_CASE("projected dynamics matches the closed-form target") {
  // central certification point
  const auto spec = LatticeSpec::open(3, 3);
  PenaltyParams pp;
  pp.t_tilde = 1.0;
  pp.w_tilde = 0.7;
  pp.u = 50.0;
  pp.counterterms = CountertermMode::Off;
  const ModelParams p{0.0, 0.5, 1.0, false};

  const auto h0 = build_uncoupled_hamiltonian(pp, p, spec);
  const auto proj = physical_projector(spec);
  const auto eff =
      second_order_effective(h0, build_gamma(spec), pp, spec.link_dim, proj);
  const auto target = build_target_effective(pp, p, spec);
  CHECK(compare_effective(eff, target) <= 1e-10);
}

TEST_CASE("closed-form target certifies across a parameter grid") {
  const ModelParams p{0.0, 0.5, 1.0, false};
  for (const int L : {2, 3}) {
    for (const int n : {2, 3, 5}) {
      for (const double tt : {0.3, 1.0}) {
        for (const double u : {10.0, 100.0}) {
          const auto spec = LatticeSpec::open(L, n);
          PenaltyParams pp;
          pp.t_tilde = tt;
          pp.w_tilde = 0.7;
          pp.u = u;
          pp.counterterms = CountertermMode::Off;
          const auto h0 = build_uncoupled_hamiltonian(pp, p, spec);
          const auto proj = physical_projector(spec);
          const auto eff = second_order_effective(h0, build_gamma(spec), pp,
                                                  spec.link_dim, proj);
          const auto target = build_target_effective(pp, p, spec);
          INFO("L=" << L << " n=" << n << " t=" << tt << " u=" << u);
          CHECK(compare_effective(eff, target) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("auto counterterms cancel the emergent density term") {
  const auto spec = LatticeSpec::open(3, 3);
  const ModelParams p{0.0, 0.5, 1.0, false};
  PenaltyParams pp;
  pp.t_tilde = 1.0;
  pp.w_tilde = 0.7;
  pp.u = 50.0;
  pp.counterterms = CountertermMode::Auto;

  const auto h0 = build_uncoupled_hamiltonian(pp, p, spec);
  const auto proj = physical_projector(spec);
  const auto eff =
      second_order_effective(h0, build_gamma(spec), pp, spec.link_dim, proj);

  // with cancellation the sector operator is plain H_d plus pure correlated
  // hopping: diagonal part equals the projected bare diagonal up to a constant
  PenaltyParams bare = pp;
  bare.counterterms = CountertermMode::Off;
  const auto hd = build_diagonal_hamiltonian(bare, p, spec, false);
  Eigen::VectorXcd diff = eff.diagonal() -
                          restrict_to_sector(hd, proj).diagonal();
  const cplx c0 = diff(0);
  for (Eigen::Index i = 0; i < diff.size(); ++i)
    CHECK(std::abs(diff(i) - c0) <= 1e-10);

  // and the full operator matches the Auto-mode target to the same tolerance
  const auto target = build_target_effective(pp, p, spec);
  CHECK(compare_effective(eff, target) <= 1e-10);
}

TEST_CASE("certification row format") {
  const auto spec = LatticeSpec::open(3, 3);
  PenaltyParams pp;
  pp.t_tilde = 1.0;
  pp.w_tilde = 0.7;
  pp.u = 50.0;
  std::ostringstream os;
  write_certification_row(os, spec, pp, 2.5e-13);
  CHECK(os.str() == "3,3,1,0.7,50,2.5e-13\n");
}
