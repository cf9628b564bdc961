// Acceptance suite: one self-contained check per criterion, each printed as a
// single [PASS]/[FAIL] line. Exits nonzero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "znlgt/solver.hpp"
#include "znlgt/weyl.hpp"

using namespace znlgt;

namespace {

constexpr double pi = std::numbers::pi;

struct Criterion {
  int number;
  std::string label;
  bool pass;
  std::string detail;
};

std::vector<Criterion> results;

void report(int number, const std::string& label, bool pass,
            const std::string& detail) {
  results.push_back({number, label, pass, detail});
  std::printf("[%s] %2d %-34s %s\n", pass ? "PASS" : "FAIL", number,
              label.c_str(), detail.c_str());
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

// 1. exhaustive discrete Weyl relation, n = 2..16
void criterion_weyl_relation() {
  double worst = 0.0;
  for (int n = 2; n <= 16; ++n)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        worst = std::max(worst, weyl_relation_residual(n, k, l));
  report(1, "discrete Weyl relation", worst <= 1e-12,
         fmt("max residual %.3e over n<=16 (tol 1e-12)", worst));
}

// 2. field-energy spectrum for n <= 64 plus the chiral double minimum
void criterion_field_spectrum() {
  double worst = 0.0;
  bool chiral_ok = true;
  for (int n = 2; n <= 64; ++n) {
    const auto f = field_energy_operator(n, false);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(f);
    std::vector<double> expect(n);
    for (int k = 0; k < n; ++k)
      expect[k] = std::pow(std::sin(pi * k / n), 2);
    std::sort(expect.begin(), expect.end());
    for (int k = 0; k < n; ++k)
      worst = std::max(worst,
                       std::abs(solver.eigenvalues()(k) - expect[std::size_t(k)]));

    const auto fc = field_energy_operator(n, true);
    double lowest = 1e300;
    for (int k = 0; k < n; ++k) lowest = std::min(lowest, fc(k, k).real());
    int hits = 0;
    for (int k = 0; k < n; ++k)
      if (std::abs(fc(k, k).real() - lowest) <= 1e-12) ++hits;
    chiral_ok = chiral_ok && hits == 2 &&
                std::abs(fc(0, 0) - fc(n - 1, n - 1)) <= 1e-12;
  }
  report(2, "field-energy spectrum", worst <= 1e-12 && chiral_ok,
         fmt("max eigenvalue gap %.3e for n<=64 (tol 1e-12); chiral double "
             "minimum %s",
             worst, chiral_ok ? "ok" : "broken"));
}

// 3. [H_n, T_x] = 0 at the stated sizes
void criterion_gauge_invariance() {
  const ModelParams p{1.0, 0.5, 1.0, false};
  double worst = 0.0;
  for (const auto [L, n] :
       std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {4, 3}, {3, 5}}) {
    const auto spec = LatticeSpec::open(L, n);
    const auto h = build_gauge_hamiltonian(p, spec);
    for (int x = 0; x < L; ++x)
      worst = std::max(worst, commutator_max_norm(h, gauss_operator(x, spec)));
  }
  report(3, "gauge invariance", worst <= 1e-12,
         fmt("max |[H_n,T_x]| %.3e over (L,n) grid (tol 1e-12)", worst));
}

// 4. physical filter == zero diagonal of Gamma == dense kernel of Gamma
void criterion_kernel_equivalence() {
  bool ok = true;
  std::string note;
  for (const auto [L, n] :
       std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {2, 2}}) {
    const auto spec = LatticeSpec::open(L, n);
    const auto phys = physical_filter(spec);
    const auto gamma = build_gamma(spec);
    const Eigen::VectorXcd diag = gamma.diagonal();

    std::vector<StateIndex> zero_diag;
    for (StateIndex idx = 0; idx < spec.dim(); ++idx)
      if (std::abs(diag(Eigen::Index(idx))) <= 1e-12) zero_diag.push_back(idx);
    ok = ok && zero_diag == phys;

    // dense kernel: the zero-eigenspace projector matches the indicator
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gamma.dense());
    Eigen::MatrixXcd kernel_proj =
        Eigen::MatrixXcd::Zero(diag.size(), diag.size());
    int zero_count = 0;
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      if (std::abs(solver.eigenvalues()(i)) <= 1e-10) {
        kernel_proj += solver.eigenvectors().col(i) *
                       solver.eigenvectors().col(i).adjoint();
        ++zero_count;
      }
    }
    Eigen::MatrixXcd indicator =
        Eigen::MatrixXcd::Zero(diag.size(), diag.size());
    for (const StateIndex idx : phys)
      indicator(Eigen::Index(idx), Eigen::Index(idx)) = 1.0;
    ok = ok && zero_count == int(phys.size()) &&
         max_abs(Eigen::MatrixXcd(kernel_proj - indicator)) <= 1e-10;
  }
  const auto small = physical_filter(LatticeSpec::open(2, 3));
  ok = ok && small == std::vector<StateIndex>{2, 5};
  report(4, "Gauss kernel equivalence", ok,
         fmt("filter/diagonal/dense kernels agree; L=2 n=3 sector dim = %zu "
             "(expected 2)",
             small.size()));
}

// 5. per-site penalty spectrum and gamma_3 = 3
void criterion_penalty_gap() {
  bool ok = true;
  for (const int n : {2, 3, 4, 5}) {
    const auto spec = LatticeSpec::open(3, n);
    std::set<long long> expect;
    for (int j = 0; j < n; ++j)
      expect.insert(std::llround(2e9 * (1.0 - std::cos(2.0 * pi * j / n))));
    for (int x = 0; x < spec.sites; ++x) {
      const Eigen::VectorXcd diag = build_gamma_site(x, spec).diagonal();
      std::set<long long> seen;
      for (Eigen::Index i = 0; i < diag.size(); ++i)
        seen.insert(std::llround(1e9 * diag(i).real()));
      ok = ok && seen == expect;
    }
  }
  const double gamma3 = penalty_gap(3);
  ok = ok && std::abs(gamma3 - 3.0) <= 1e-12;
  report(5, "penalty gap spectrum", ok,
         fmt("per-site spectra match 2(1-cos(2pi j/n)); gamma_3 = %.15g", gamma3));
}

// 6. off-sector images sit exactly in the 2*gamma_n eigenspace
void criterion_coupling_support() {
  double worst = 0.0;
  for (int L = 2; L <= 4; ++L) {
    for (int n = 2; n <= 4; ++n) {
      const auto spec = LatticeSpec::open(L, n);
      PenaltyParams pp;
      pp.t_tilde = 1.0;
      pp.w_tilde = 0.7;
      pp.u = 30.0;
      pp.counterterms = CountertermMode::Off;
      const auto h0 =
          build_uncoupled_hamiltonian(pp, {0.0, 0.5, 1.0, false}, spec);
      worst = std::max(
          worst, coupling_support_check(h0, build_gamma(spec),
                                        physical_projector(spec), n));
    }
  }
  report(6, "coupling support", worst <= 1e-12,
         fmt("max normalized residual %.3e at L<=4, n<=4 (tol 1e-12)", worst));
}

// 7. projected second-order operator vs closed-form target across the grid
void criterion_effective_identity() {
  const ModelParams p{0.0, 0.5, 1.0, false};
  double worst_off = 0.0;
  double worst_auto = 0.0;
  for (const int L : {2, 3, 4}) {
    for (const int n : {2, 3, 5}) {
      for (const double tt : {0.3, 1.0}) {
        for (const double ww : {0.3, 1.0}) {
          for (const double u : {10.0, 100.0}) {
            const auto spec = LatticeSpec::open(L, n);
            const auto gamma = build_gamma(spec);
            const auto proj = physical_projector(spec);
            for (const bool with_auto : {false, true}) {
              PenaltyParams pp;
              pp.t_tilde = tt;
              pp.w_tilde = ww;
              pp.u = u;
              pp.counterterms = with_auto ? CountertermMode::Auto
                                          : CountertermMode::Off;
              const auto h0 = build_uncoupled_hamiltonian(pp, p, spec);
              const auto eff =
                  second_order_effective(h0, gamma, pp, n, proj);
              const auto target = build_target_effective(pp, p, spec);
              const double r = compare_effective(eff, target);
              (with_auto ? worst_auto : worst_off) =
                  std::max(with_auto ? worst_auto : worst_off, r);
            }
          }
        }
      }
    }
  }
  report(7, "effective-Hamiltonian identity",
         worst_off <= 1e-10 && worst_auto <= 1e-10,
         fmt("max deviation %.3e (plain), %.3e (auto counterterms) over the "
             "grid (tol 1e-10)",
             worst_off, worst_auto));
}

// 8. infidelity between penalized and effective dynamics decreases in u
void criterion_dynamical_convergence() {
  const auto spec = LatticeSpec::open(3, 3);
  const ModelParams p{0.0, 0.5, 1.0, false};
  PenaltyParams pp;
  pp.t_tilde = 1.0;
  pp.w_tilde = 0.7;
  pp.counterterms = CountertermMode::Off;
  const std::vector<double> u_values{10.0, 20.0, 40.0, 80.0, 160.0};
  const auto table = fidelity_scan(spec, p, pp, u_values, 5.0, 0.05,
                                   dirac_sea_state(spec, 0));
  bool decreasing = true;
  for (std::size_t j = 1; j < table.size(); ++j)
    decreasing = decreasing && table[j].epsilon < table[j - 1].epsilon;
  const double tail = table.back().epsilon;
  std::ostringstream eps;
  for (const auto& row : table) eps << ' ' << fmt("%.3e", row.epsilon);
  report(8, "dynamical convergence", decreasing && tail < 1e-3,
         fmt("eps(u) =%s; strictly decreasing=%d, eps(160)=%.3e < 1e-3",
             eps.str().c_str(), int(decreasing), tail));
}

// 9. evolution under H_n keeps <Gamma> on the constraint surface
void criterion_gauge_flow() {
  const auto spec = LatticeSpec::open(4, 3);
  const ModelParams p{1.0, 0.5, 1.0, false};
  const auto h = build_gauge_hamiltonian(p, spec);
  const auto gamma = build_gamma(spec);
  const auto decomp = dense_eigensolve(h);
  const auto times = sample_times(5.0, 0.1);

  double worst = 0.0;
  for (const BasisState& initial :
       {dirac_sea_state(spec, 0), string_state(spec, 0, 3),
        string_state(spec, 2, 3)}) {
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(Eigen::Index(spec.dim()));
    psi0(Eigen::Index(encode(initial, spec))) = 1.0;
    const Eigen::MatrixXcd states = evolve_states(decomp, psi0, times);
    for (Eigen::Index j = 0; j < states.cols(); ++j)
      worst = std::max(worst, gauge_violation(states.col(j), gamma));
  }
  report(9, "gauge-flow closure", worst <= 1e-10,
         fmt("max <Gamma>(t) = %.3e from physical initial states (tol 1e-10)",
             worst));
}

// 10. ground-state energy differences shrink monotonically in n
void criterion_large_n_trend() {
  const ModelParams p{1.0, 0.5, 1.0, false};
  std::vector<double> energy;
  std::ostringstream seq;
  for (int n = 6; n <= 13; ++n) {
    const auto e0 = sector_ground_energy(LatticeSpec::open(4, n), p, 65536);
    if (!e0) {
      report(10, "large-n trend", false, fmt("empty sector at n=%d", n));
      return;
    }
    energy.push_back(*e0);
    seq << (n > 6 ? " " : "") << fmt("E0(%d)=%.9f", n, *e0);
  }
  bool decreasing = true;
  std::ostringstream deltas;
  for (std::size_t j = 1; j + 1 < energy.size(); ++j) {
    const double d1 = std::abs(energy[j] - energy[j - 1]);
    const double d2 = std::abs(energy[j + 1] - energy[j]);
    decreasing = decreasing && d2 < d1;
  }
  for (std::size_t j = 1; j < energy.size(); ++j)
    deltas << ' ' << fmt("%.3e", std::abs(energy[j] - energy[j - 1]));
  report(10, "large-n trend", decreasing,
         fmt("|dE0| =%s (monotone decreasing over n=6..12); %s",
             deltas.str().c_str(), seq.str().c_str()));
}

}  // namespace

int main() {
  criterion_weyl_relation();
  criterion_field_spectrum();
  criterion_gauge_invariance();
  criterion_kernel_equivalence();
  criterion_penalty_gap();
  criterion_coupling_support();
  criterion_effective_identity();
  criterion_dynamical_convergence();
  criterion_gauge_flow();
  criterion_large_n_trend();

  int failures = 0;
  for (const auto& c : results)
    if (!c.pass) ++failures;
  std::printf("%zu/%zu acceptance criteria passed\n", results.size() - failures,
              results.size());
  return failures == 0 ? 0 : 1;
}
