#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "output.hpp"
#include "znlgt/solver.hpp"
#include "znlgt/version.hpp"
#include "znlgt/weyl.hpp"

namespace znlgt::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::filesystem::path out_directory(const RunConfig& cfg,
                                    const CommandOptions& opt) {
  return opt.out_dir ? std::filesystem::path(*opt.out_dir)
                     : std::filesystem::path(cfg.output.directory);
}

ordered_json provenance_json(const std::string& hash) {
  ordered_json j;
  j["tool"] = "znlgt";
  j["version"] = std::string(version);
  j["config"] = hash;
  return j;
}

ordered_json boundary_json(const RunConfig& cfg) {
  ordered_json j;
  j["kind"] =
      cfg.model.boundary == Boundary::Periodic ? "periodic" : "open";
  if (cfg.model.boundary == Boundary::Open) {
    j["b_left"] = cfg.model.b_left;
    j["b_right"] = cfg.model.b_right;
  }
  return j;
}

std::vector<StateIndex> select_sector(const RunConfig& cfg,
                                      const LatticeSpec& spec) {
  return cfg.model.charges.empty() ? physical_filter(spec)
                                   : sector_filter(cfg.model.charges, spec);
}

BasisState initial_state(const RunConfig& cfg, const LatticeSpec& spec) {
  switch (cfg.evolve.initial) {
    case InitialKind::DiracSea:
      return dirac_sea_state(spec, cfg.evolve.k0);
    case InitialKind::String:
      return string_state(spec, cfg.evolve.x_even, cfg.evolve.x_odd);
    case InitialKind::Basis:
      if (cfg.evolve.index >= spec.dim())
        throw ConfigError("evolve.index outside the Hilbert space");
      return decode(cfg.evolve.index, spec);
  }
  throw ConfigError("unreachable initial-state kind");
}

struct Identity {
  std::string name;
  double residual;
  double tolerance;
  bool pass() const { return residual <= tolerance; }
};

class IdentitySuite {
 public:
  explicit IdentitySuite(std::optional<double> override_tol)
      : override_(override_tol) {}

  void record(const std::string& name, double residual,
              double default_tol = 1e-12) {
    identities_.push_back(
        {name, residual, override_.value_or(default_tol)});
  }

  const std::vector<Identity>& identities() const { return identities_; }

  bool all_pass() const {
    for (const auto& id : identities_)
      if (!id.pass()) return false;
    return true;
  }

 private:
  std::optional<double> override_;
  std::vector<Identity> identities_;
};

void run_weyl_identities(IdentitySuite& suite, int n, bool chiral) {
  const auto u = shift_operator(n);
  const auto v = clock_operator(n);
  const auto w = fourier_eigenbasis(n);
  suite.record("shift_unitarity", unitarity_gap(u));
  suite.record("clock_unitarity", unitarity_gap(v));
  suite.record("fourier_unitarity", unitarity_gap(w));

  Eigen::MatrixXcd up = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd vp = up;
  for (int i = 0; i < n; ++i) {
    up = u * up;
    vp = v * vp;
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  suite.record("shift_order", max_abs(Eigen::MatrixXcd(up - id)));
  suite.record("clock_order", max_abs(Eigen::MatrixXcd(vp - id)));

  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      worst = std::max(worst, weyl_relation_residual(n, k, l));
  suite.record("weyl_relation", worst);

  const auto f = field_energy_operator(n, chiral);
  double spectrum_gap = 0.0;
  for (int k = 0; k < n; ++k)
    spectrum_gap = std::max(
        spectrum_gap,
        std::abs(f(k, k) - field_energy_eigenvalue(n, k, chiral)));
  suite.record("field_energy_spectrum", spectrum_gap);

  suite.record("conjugate_basis",
               max_abs(Eigen::MatrixXcd(w.adjoint() * v * w - u.adjoint())));
  suite.record("ring_hopping", ring_hopping_equivalence(n));
}

void run_lattice_identities(IdentitySuite& suite, const LatticeSpec& spec) {
  std::vector<SparseOperator> ann, cre;
  for (int x = 0; x < spec.sites; ++x) {
    ann.push_back(fermion_annihilation(x, spec));
    cre.push_back(fermion_creation(x, spec));
  }
  double car = 0.0;
  for (int x = 0; x < spec.sites; ++x)
    for (int y = 0; y < spec.sites; ++y) {
      car = std::max(car, anticommutator_max_norm(ann[x], cre[y],
                                                  x == y ? 1.0 : 0.0));
      car = std::max(car, anticommutator_max_norm(ann[x], ann[y]));
    }
  suite.record("car_relations", car);

  if (spec.links() >= 2) {
    const auto a = link_operator_embed(0, shift_operator(spec.link_dim), spec);
    const auto b = link_operator_embed(1, clock_operator(spec.link_dim), spec);
    suite.record("link_embed_commute", commutator_max_norm(a, b));
  }

  const auto id = SparseOperator::identity(spec.dim());
  double unitarity = 0.0, order = 0.0, mutual = 0.0;
  std::vector<SparseOperator> gauss;
  for (int x = 0; x < spec.sites; ++x)
    gauss.push_back(gauss_operator(x, spec));
  for (int x = 0; x < spec.sites; ++x) {
    const auto& t = gauss[x];
    const SparseMatrixXcd gram =
        SparseMatrixXcd(t.matrix().adjoint()) * t.matrix();
    unitarity =
        std::max(unitarity, max_abs(SparseMatrixXcd(gram - id.matrix())));
    SparseMatrixXcd power = id.matrix();
    for (int i = 0; i < spec.link_dim; ++i)
      power = SparseMatrixXcd(t.matrix() * power);
    order = std::max(order, max_abs(SparseMatrixXcd(power - id.matrix())));
    for (int y = x + 1; y < spec.sites; ++y)
      mutual = std::max(mutual, commutator_max_norm(t, gauss[y]));
  }
  suite.record("gauss_unitarity", unitarity);
  suite.record("gauss_order", order);
  suite.record("gauss_mutual_commute", mutual);

  const auto gamma = build_gamma(spec);
  const auto phys = physical_filter(spec);
  const std::set<StateIndex> sector(phys.begin(), phys.end());
  const Eigen::VectorXcd diag = gamma.diagonal();
  double kernel_mismatch = 0.0;
  double positivity = 0.0;
  double band = 0.0;
  const double gap = penalty_gap(spec.link_dim);
  for (StateIndex idx = 0; idx < spec.dim(); ++idx) {
    const double value = diag(Eigen::Index(idx)).real();
    positivity = std::max(positivity, -value);
    if (sector.contains(idx)) {
      kernel_mismatch = std::max(kernel_mismatch, std::abs(value));
    } else {
      kernel_mismatch = std::max(kernel_mismatch, value <= 1e-12 ? 1.0 : 0.0);
      band = std::max(band, gap - value);
    }
  }
  suite.record("gamma_kernel_matches_filter", kernel_mismatch);
  suite.record("gamma_positivity", positivity);
  suite.record("gamma_band", band);
}

void run_hamiltonian_identities(IdentitySuite& suite, const RunConfig& cfg,
                                const LatticeSpec& spec) {
  const ModelParams params = cfg.model_params();
  const PenaltyParams pp = cfg.penalty_params();

  const auto hn = build_gauge_hamiltonian(params, spec);
  suite.record("gauge_hermiticity", hn.hermiticity_gap());
  double invariance = 0.0;
  for (int x = 0; x < spec.sites; ++x)
    invariance =
        std::max(invariance, commutator_max_norm(hn, gauss_operator(x, spec)));
  suite.record("gauge_invariance", invariance);

  const auto h0 = build_uncoupled_hamiltonian(pp, params, spec);
  suite.record("uncoupled_hermiticity", h0.hermiticity_gap());

  const auto gamma = build_gamma(spec);
  const auto proj = physical_projector(spec);
  suite.record("coupling_support",
               coupling_support_check(h0, gamma, proj, spec.link_dim));

  const auto eff = second_order_effective(h0, gamma, pp, spec.link_dim, proj);
  const auto hd = build_diagonal_hamiltonian(pp, params, spec, true);
  const auto simplified = second_order_simplified(h0, hd, pp, proj);
  suite.record("effective_equivalence",
               max_abs(SparseMatrixXcd(eff.matrix() - simplified.matrix())));

  const auto target = build_target_effective(pp, params, spec);
  suite.record("effective_vs_target", compare_effective(eff, target), 1e-10);
}

std::string time_series_csv(const ObservableSeries& series,
                            const LatticeSpec& spec, const std::string& hash) {
  std::ostringstream os;
  os << provenance_line(hash);
  os << "t";
  for (int x = 0; x < spec.sites; ++x) os << ",n_" << x;
  for (int j = 0; j < spec.links(); ++j) os << ",Eproxy_" << j;
  for (int j = 0; j < spec.links(); ++j) os << ",fE_" << j;
  os << ",gamma_exp";
  if (series.fidelity) os << ",fidelity";
  os << "\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const Eigen::Index r = Eigen::Index(i);
    os << format_number(series.times[i]);
    for (int x = 0; x < spec.sites; ++x)
      os << ',' << format_number(series.charge_density(r, x));
    for (int j = 0; j < spec.links(); ++j)
      os << ',' << format_number(series.field_proxy(r, j));
    for (int j = 0; j < spec.links(); ++j)
      os << ',' << format_number(series.field_energy(r, j));
    os << ',' << format_number(series.gamma_expectation(r));
    if (series.fidelity) os << ',' << format_number((*series.fidelity)(r));
    os << "\n";
  }
  return os.str();
}

}  // namespace

int cmd_check(const RunConfig& cfg, const CommandOptions& opt) {
  const LatticeSpec spec = cfg.lattice();
  if (spec.dim() > opt.cap) {
    std::cerr << "check needs dense identities: dimension " << spec.dim()
              << " exceeds cap " << opt.cap << "\n";
    return 2;
  }
  IdentitySuite suite(opt.tolerance);
  run_weyl_identities(suite, cfg.model.n, cfg.model.chiral);
  run_lattice_identities(suite, spec);
  run_hamiltonian_identities(suite, cfg, spec);

  const std::string hash = config_hash(cfg);
  ordered_json report;
  report["provenance"] = provenance_json(hash);
  report["model"] = {{"n", cfg.model.n},
                     {"L", cfg.model.L},
                     {"boundary", boundary_json(cfg)}};
  report["identities"] = ordered_json::array();
  for (const auto& id : suite.identities()) {
    ordered_json row;
    row["name"] = id.name;
    row["residual"] = id.residual;
    row["tolerance"] = id.tolerance;
    row["pass"] = id.pass();
    report["identities"].push_back(row);
    std::printf("%-28s residual=%.3e tol=%.1e %s\n", id.name.c_str(),
                id.residual, id.tolerance, id.pass() ? "ok" : "FAIL");
  }
  report["all_pass"] = suite.all_pass();
  write_file_atomic(out_directory(cfg, opt) / "check_report.json",
                    report.dump(2) + "\n");
  return suite.all_pass() ? 0 : 1;
}

int cmd_gauss(const RunConfig& cfg, const CommandOptions& opt) {
  const LatticeSpec spec = cfg.lattice();
  const auto sector = select_sector(cfg, spec);
  const std::string hash = config_hash(cfg);

  std::ostringstream dump;
  dump << provenance_line(hash);
  write_basis_dump(dump, sector, spec);
  const auto dir = out_directory(cfg, opt);
  write_file_atomic(dir / "sector_basis.csv", dump.str());

  ordered_json summary;
  summary["provenance"] = provenance_json(hash);
  summary["dim_full"] = spec.dim();
  summary["dim_sector"] = sector.size();
  summary["boundary"] = boundary_json(cfg);
  if (!cfg.model.charges.empty()) summary["charges"] = cfg.model.charges;
  write_file_atomic(dir / "sector_summary.json", summary.dump(2) + "\n");

  std::printf("dim_full=%llu dim_sector=%zu\n",
              static_cast<unsigned long long>(spec.dim()), sector.size());
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, const CommandOptions& opt) {
  const LatticeSpec spec = cfg.lattice();
  const auto sector = select_sector(cfg, spec);
  const std::string hash = config_hash(cfg);

  std::ostringstream os;
  os << provenance_line(hash);
  os << "index,energy\n";
  if (!sector.empty()) {
    const auto h = build_gauge_hamiltonian(cfg.model_params(), spec);
    try {
      const auto decomp = dense_eigensolve(h.restricted(sector), opt.cap);
      for (Eigen::Index i = 0; i < decomp.eigenvalues.size(); ++i)
        os << i << ',' << format_number(decomp.eigenvalues(i)) << "\n";
    } catch (const CapacityError& err) {
      std::cerr << err.what() << "\n";
      return 2;
    }
  }
  write_file_atomic(out_directory(cfg, opt) / "spectrum.csv", os.str());
  std::printf("sector dimension %zu -> spectrum.csv\n", sector.size());
  return 0;
}

int cmd_effective(const RunConfig& cfg, const CommandOptions& opt) {
  const LatticeSpec spec = cfg.lattice();
  const ModelParams params = cfg.model_params();
  std::vector<double> u_values = cfg.scan.u_values;
  if (u_values.empty()) u_values.push_back(cfg.penalty.u);
  const double gate = opt.tolerance.value_or(1e-8);

  const auto gamma = build_gamma(spec);
  const auto proj = physical_projector(spec);

  std::ostringstream os;
  os << provenance_line(config_hash(cfg));
  os << "L,n,t_tilde,w_tilde,u,residual\n";
  bool all_ok = true;
  for (const double u : u_values) {
    PenaltyParams pp = cfg.penalty_params();
    pp.u = u;
    const auto h0 = build_uncoupled_hamiltonian(pp, params, spec);
    const auto eff = second_order_effective(h0, gamma, pp, spec.link_dim, proj);
    const auto target = build_target_effective(pp, params, spec);
    const double residual = compare_effective(eff, target);
    write_certification_row(os, spec, pp, residual);
    std::printf("u=%g residual=%.3e %s\n", u, residual,
                residual <= gate ? "ok" : "FAIL");
    all_ok = all_ok && residual <= gate;
  }
  write_file_atomic(out_directory(cfg, opt) / "effective_certification.csv",
                    os.str());
  return all_ok ? 0 : 1;
}

int cmd_evolve(const RunConfig& cfg, const CommandOptions& opt) {
  const LatticeSpec spec = cfg.lattice();
  const ModelParams params = cfg.model_params();
  const PenaltyParams pp = cfg.penalty_params();
  const std::vector<double> times = sample_times(cfg.evolve.t_max, cfg.evolve.dt);

  BasisState initial;
  try {
    initial = initial_state(cfg, spec);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  const StateIndex idx0 = encode(initial, spec);
  const auto proj = physical_projector(spec);
  Eigen::Index sector0 = -1;
  for (std::size_t j = 0; j < proj.indices.size(); ++j)
    if (proj.indices[j] == idx0) sector0 = Eigen::Index(j);

  ObservableSeries series;
  try {
    switch (cfg.evolve.hamiltonian) {
      case Driver::Gauge: {
        const auto h = build_gauge_hamiltonian(params, spec);
        if (sector0 >= 0) {
          // physical initial states evolve inside the sector
          Eigen::VectorXcd psi0 =
              Eigen::VectorXcd::Zero(Eigen::Index(proj.dim_sector()));
          psi0(sector0) = 1.0;
          series = evolve(restrict_to_sector(h, proj), psi0, times,
                          MeasurementBasis::sector(spec, proj.indices,
                                                   cfg.model.chiral),
                          opt.cap);
        } else {
          Eigen::VectorXcd psi0 =
              Eigen::VectorXcd::Zero(Eigen::Index(spec.dim()));
          psi0(Eigen::Index(idx0)) = 1.0;
          series = evolve(h, psi0, times,
                          MeasurementBasis::full(spec, cfg.model.chiral),
                          opt.cap);
        }
        break;
      }
      case Driver::Penalized: {
        if (sector0 < 0) {
          std::cerr << "penalized evolution needs a physical initial state\n";
          return 2;
        }
        const auto h0 = build_uncoupled_hamiltonian(pp, params, spec);
        const auto gamma = build_gamma(spec);
        const auto h1 = build_penalized(h0, gamma, pp, spec.link_dim);
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(Eigen::Index(spec.dim()));
        psi0(Eigen::Index(idx0)) = 1.0;
        series = evolve(h1, psi0, times,
                        MeasurementBasis::full(spec, cfg.model.chiral), opt.cap);

        // fidelity against the sector-restricted effective dynamics
        const auto heff =
            second_order_effective(h0, gamma, pp, spec.link_dim, proj);
        Eigen::VectorXcd sec0 =
            Eigen::VectorXcd::Zero(Eigen::Index(proj.dim_sector()));
        sec0(sector0) = 1.0;
        const Eigen::MatrixXcd eff_states =
            evolve_states(dense_eigensolve(heff, opt.cap), sec0, times);
        const Eigen::MatrixXcd full_states = evolve_states(
            dense_eigensolve(h1, opt.cap),
            Eigen::VectorXcd(psi0), times);
        Eigen::VectorXd fid(Eigen::Index(times.size()));
        for (std::size_t j = 0; j < times.size(); ++j) {
          const Eigen::VectorXcd emb =
              embed_sector_vector(eff_states.col(Eigen::Index(j)), proj);
          fid(Eigen::Index(j)) =
              std::norm(emb.dot(full_states.col(Eigen::Index(j))));
        }
        series.fidelity = fid;
        break;
      }
      case Driver::Effective: {
        if (sector0 < 0) {
          std::cerr << "effective evolution needs a physical initial state\n";
          return 2;
        }
        const auto h0 = build_uncoupled_hamiltonian(pp, params, spec);
        const auto heff = second_order_effective(h0, build_gamma(spec), pp,
                                                 spec.link_dim, proj);
        Eigen::VectorXcd psi0 =
            Eigen::VectorXcd::Zero(Eigen::Index(proj.dim_sector()));
        psi0(sector0) = 1.0;
        series = evolve(heff, psi0, times,
                        MeasurementBasis::sector(spec, proj.indices,
                                                 cfg.model.chiral),
                        opt.cap);
        break;
      }
    }
  } catch (const CapacityError& err) {
    std::cerr << err.what() << "\n";
    return 2;
  }

  write_file_atomic(out_directory(cfg, opt) / "evolution.csv",
                    time_series_csv(series, spec, config_hash(cfg)));
  std::printf("evolved %zu samples -> evolution.csv\n", series.times.size());
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const CommandOptions& opt) {
  const bool has_u = !cfg.scan.u_values.empty();
  const bool has_n = !cfg.scan.n_values.empty();
  if (has_u == has_n) {
    std::cerr << "sweep needs exactly one of scan.u_values or scan.n_values\n";
    return 2;
  }
  const std::string hash = config_hash(cfg);
  const auto dir = out_directory(cfg, opt);

  try {
    if (has_u) {
      const LatticeSpec spec = cfg.lattice();
      const auto initial = initial_state(cfg, spec);
      const auto table =
          fidelity_scan(spec, cfg.model_params(), cfg.penalty_params(),
                        cfg.scan.u_values, cfg.evolve.t_max, cfg.evolve.dt,
                        initial, opt.cap);
      std::ostringstream os;
      os << provenance_line(hash);
      if (table.size() >= 2 && table.back().epsilon > 0.0 &&
          table.front().epsilon > 0.0) {
        const auto& a = table[table.size() - 2];
        const auto& b = table.back();
        const double exponent =
            std::log(a.epsilon / b.epsilon) / std::log(b.u / a.u);
        os << "# empirical tail exponent p, eps ~ u^-p: "
           << format_number(exponent) << "\n";
      }
      os << "u,epsilon\n";
      for (const auto& row : table) {
        os << format_number(row.u) << ',' << format_number(row.epsilon) << "\n";
        std::printf("u=%g eps=%.6e\n", row.u, row.epsilon);
      }
      write_file_atomic(dir / "sweep_u.csv", os.str());
    } else {
      std::ostringstream os;
      os << provenance_line(hash);
      os << "n,E0\n";
      for (const int n : cfg.scan.n_values) {
        const LatticeSpec spec =
            cfg.model.boundary == Boundary::Periodic
                ? LatticeSpec::periodic(cfg.model.L, n)
                : LatticeSpec::open(cfg.model.L, n, cfg.model.b_left,
                                    cfg.model.b_right);
        const auto e0 =
            sector_ground_energy(spec, cfg.model_params(), opt.cap);
        os << n << ','
           << (e0 ? format_number(*e0) : std::string("nan")) << "\n";
        std::printf("n=%d E0=%s\n", n,
                    e0 ? format_number(*e0).c_str() : "nan");
      }
      write_file_atomic(dir / "sweep_n.csv", os.str());
    }
  } catch (const CapacityError& err) {
    std::cerr << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace znlgt::cli
