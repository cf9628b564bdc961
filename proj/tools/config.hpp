#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "znlgt/hamiltonians.hpp"

namespace znlgt::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InitialKind { DiracSea, String, Basis };
enum class Driver { Gauge, Penalized, Effective };

struct ModelConfig {
  int n = 3;
  int L = 3;
  Boundary boundary = Boundary::Open;
  int b_left = 0;
  int b_right = 0;
  double t = 1.0;
  double m = 0.5;
  double g2 = 1.0;
  bool chiral = false;
  std::vector<int> charges;  // empty = Gauss sector
};

struct PenaltyConfig {
  double t_tilde = 1.0;
  double w_tilde = 0.7;
  double u = 50.0;
  CountertermMode counterterms = CountertermMode::Auto;
  double density_coefficient = 0.0;
  std::optional<double> g2_d;
};

struct EvolveConfig {
  double t_max = 5.0;
  double dt = 0.1;
  InitialKind initial = InitialKind::DiracSea;
  int k0 = 0;
  int x_even = 0;
  int x_odd = 1;
  std::uint64_t index = 0;
  Driver hamiltonian = Driver::Gauge;
};

struct ScanConfig {
  std::vector<double> u_values;
  std::vector<int> n_values;
};

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> formats = {"csv", "json"};
};

struct RunConfig {
  ModelConfig model;
  PenaltyConfig penalty;
  EvolveConfig evolve;
  ScanConfig scan;
  OutputConfig output;

  LatticeSpec lattice() const;
  ModelParams model_params() const;
  PenaltyParams penalty_params() const;
};

// Key-value text with [section] headers; JSON with the same nesting is
// accepted when the payload starts with '{'.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

void validate(const RunConfig& cfg);

// Fixed-order round-trippable rendering; also the hashing preimage, so INI
// and JSON spellings of one configuration share a provenance hash.
std::string canonical_text(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

}  // namespace znlgt::cli
