#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace znlgt::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) fail(key + ": trailing characters in '" + value + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(key + ": expected a number, got '" + value + "'");
  }
}

long long to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(value, &used);
    if (used != value.size()) fail(key + ": trailing characters in '" + value + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(key + ": expected an integer, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  fail(key + ": expected a boolean, got '" + value + "'");
}

using KeyMap = std::map<std::string, std::string>;

void apply_entry(RunConfig& cfg, const std::string& section,
                 const std::string& key, const std::string& value) {
  const std::string qualified = section + "." + key;
  auto& m = cfg.model;
  auto& p = cfg.penalty;
  auto& e = cfg.evolve;
  if (section == "model") {
    if (key == "n") m.n = int(to_int(qualified, value));
    else if (key == "L") m.L = int(to_int(qualified, value));
    else if (key == "boundary") {
      if (value == "open") m.boundary = Boundary::Open;
      else if (value == "periodic") m.boundary = Boundary::Periodic;
      else fail("model.boundary must be open or periodic, got '" + value + "'");
    } else if (key == "b_left") m.b_left = int(to_int(qualified, value));
    else if (key == "b_right") m.b_right = int(to_int(qualified, value));
    else if (key == "t") m.t = to_double(qualified, value);
    else if (key == "m") m.m = to_double(qualified, value);
    else if (key == "g2") m.g2 = to_double(qualified, value);
    else if (key == "chiral") m.chiral = to_bool(qualified, value);
    else if (key == "charges") {
      m.charges.clear();
      for (const auto& item : split(value, ','))
        m.charges.push_back(int(to_int(qualified, item)));
    } else fail("unknown key " + qualified);
  } else if (section == "penalty") {
    if (key == "t_tilde") p.t_tilde = to_double(qualified, value);
    else if (key == "w_tilde") p.w_tilde = to_double(qualified, value);
    else if (key == "u") p.u = to_double(qualified, value);
    else if (key == "counterterms") {
      if (value == "auto") p.counterterms = CountertermMode::Auto;
      else if (value == "off") p.counterterms = CountertermMode::Off;
      else if (value == "manual") p.counterterms = CountertermMode::Manual;
      else fail("penalty.counterterms must be auto, off or manual");
    } else if (key == "density_coefficient")
      p.density_coefficient = to_double(qualified, value);
    else if (key == "g2_d") p.g2_d = to_double(qualified, value);
    else fail("unknown key " + qualified);
  } else if (section == "evolve") {
    if (key == "t_max") e.t_max = to_double(qualified, value);
    else if (key == "dt") e.dt = to_double(qualified, value);
    else if (key == "initial") {
      if (value == "dirac_sea") e.initial = InitialKind::DiracSea;
      else if (value == "string") e.initial = InitialKind::String;
      else if (value == "basis") e.initial = InitialKind::Basis;
      else fail("evolve.initial must be dirac_sea, string or basis");
    } else if (key == "k0") e.k0 = int(to_int(qualified, value));
    else if (key == "x_even") e.x_even = int(to_int(qualified, value));
    else if (key == "x_odd") e.x_odd = int(to_int(qualified, value));
    else if (key == "index") e.index = std::uint64_t(to_int(qualified, value));
    else if (key == "hamiltonian") {
      if (value == "gauge") e.hamiltonian = Driver::Gauge;
      else if (value == "penalized") e.hamiltonian = Driver::Penalized;
      else if (value == "effective") e.hamiltonian = Driver::Effective;
      else fail("evolve.hamiltonian must be gauge, penalized or effective");
    } else fail("unknown key " + qualified);
  } else if (section == "scan") {
    if (key == "u_values") {
      cfg.scan.u_values.clear();
      for (const auto& item : split(value, ','))
        cfg.scan.u_values.push_back(to_double(qualified, item));
    } else if (key == "n_values") {
      cfg.scan.n_values.clear();
      for (const auto& item : split(value, ','))
        cfg.scan.n_values.push_back(int(to_int(qualified, item)));
    } else fail("unknown key " + qualified);
  } else if (section == "output") {
    if (key == "directory") cfg.output.directory = value;
    else if (key == "formats") cfg.output.formats = split(value, ',');
    else fail("unknown key " + qualified);
  } else {
    fail("unknown section [" + section + "]");
  }
}

RunConfig parse_ini(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail("line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      fail("line " + std::to_string(lineno) + ": key outside any section");
    apply_entry(cfg, section, trim(line.substr(0, eq)),
                trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::string json_scalar_to_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
    return buf;
  }
  fail("unsupported scalar in config JSON");
}

RunConfig parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("config JSON parse error: ") + e.what());
  }
  if (!j.is_object()) fail("config JSON root must be an object");
  RunConfig cfg;
  for (const auto& [section, body] : j.items()) {
    if (!body.is_object()) fail("section " + section + " must be an object");
    for (const auto& [key, value] : body.items()) {
      if (value.is_array()) {
        std::string joined;
        for (const auto& item : value) {
          if (!joined.empty()) joined += ',';
          joined += json_scalar_to_string(item);
        }
        apply_entry(cfg, section, key, joined);
      } else {
        apply_entry(cfg, section, key, json_scalar_to_string(value));
      }
    }
  }
  return cfg;
}

void require(bool ok, const std::string& message) {
  if (!ok) fail(message);
}

void require_finite(double v, const std::string& name) {
  require(std::isfinite(v), name + " must be finite");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    RunConfig cfg = (c == '{') ? parse_json(text) : parse_ini(text);
    validate(cfg);
    return cfg;
  }
  RunConfig cfg;  // empty file: all defaults
  validate(cfg);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

LatticeSpec RunConfig::lattice() const {
  return model.boundary == Boundary::Periodic
             ? LatticeSpec::periodic(model.L, model.n)
             : LatticeSpec::open(model.L, model.n, model.b_left, model.b_right);
}

ModelParams RunConfig::model_params() const {
  return {model.t, model.m, model.g2, model.chiral};
}

PenaltyParams RunConfig::penalty_params() const {
  PenaltyParams pp;
  pp.t_tilde = penalty.t_tilde;
  pp.w_tilde = penalty.w_tilde;
  pp.u = penalty.u;
  pp.counterterms = penalty.counterterms;
  pp.manual_density = penalty.density_coefficient;
  pp.field_coupling = penalty.g2_d;
  return pp;
}

void validate(const RunConfig& cfg) {
  const auto& m = cfg.model;
  require(m.n >= 2, "model.n must be at least 2 (got " + std::to_string(m.n) + ")");
  require(m.L >= 2, "model.L must be at least 2 (got " + std::to_string(m.L) + ")");
  require(m.b_left >= 0 && m.b_left < m.n,
          "model.b_left must lie in 0..n-1");
  require(m.b_right >= 0 && m.b_right < m.n,
          "model.b_right must lie in 0..n-1");
  require_finite(m.t, "model.t");
  require_finite(m.m, "model.m");
  require_finite(m.g2, "model.g2");
  require(m.charges.empty() || int(m.charges.size()) == m.L,
          "model.charges must list one charge per site");

  const auto& p = cfg.penalty;
  require_finite(p.t_tilde, "penalty.t_tilde");
  require_finite(p.w_tilde, "penalty.w_tilde");
  require_finite(p.u, "penalty.u");
  require(p.u > 0.0, "penalty.u must be positive");
  if (p.g2_d) require_finite(*p.g2_d, "penalty.g2_d");

  const auto& e = cfg.evolve;
  require_finite(e.t_max, "evolve.t_max");
  require_finite(e.dt, "evolve.dt");
  require(e.dt > 0.0, "evolve.dt must be positive");
  require(e.t_max >= e.dt, "evolve.t_max must be at least evolve.dt");
  require(e.k0 >= 0 && e.k0 < m.n, "evolve.k0 must lie in 0..n-1");

  for (const double u : cfg.scan.u_values) {
    require_finite(u, "scan.u_values");
    require(u > 0.0, "scan.u_values must be positive");
  }
  for (const int n : cfg.scan.n_values)
    require(n >= 2, "scan.n_values entries must be at least 2");
  require(!cfg.output.directory.empty(), "output.directory must be non-empty");
}

std::string canonical_text(const RunConfig& cfg) {
  char buf[64];
  const auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream os;
  const auto& m = cfg.model;
  os << "[model]\n";
  os << "n = " << m.n << "\n";
  os << "L = " << m.L << "\n";
  os << "boundary = " << (m.boundary == Boundary::Periodic ? "periodic" : "open")
     << "\n";
  os << "b_left = " << m.b_left << "\n";
  os << "b_right = " << m.b_right << "\n";
  os << "t = " << num(m.t) << "\n";
  os << "m = " << num(m.m) << "\n";
  os << "g2 = " << num(m.g2) << "\n";
  os << "chiral = " << (m.chiral ? "true" : "false") << "\n";
  if (!m.charges.empty()) {
    os << "charges = ";
    for (std::size_t i = 0; i < m.charges.size(); ++i)
      os << (i ? "," : "") << m.charges[i];
    os << "\n";
  }
  const auto& p = cfg.penalty;
  os << "[penalty]\n";
  os << "t_tilde = " << num(p.t_tilde) << "\n";
  os << "w_tilde = " << num(p.w_tilde) << "\n";
  os << "u = " << num(p.u) << "\n";
  os << "counterterms = "
     << (p.counterterms == CountertermMode::Auto
             ? "auto"
             : p.counterterms == CountertermMode::Off ? "off" : "manual")
     << "\n";
  os << "density_coefficient = " << num(p.density_coefficient) << "\n";
  if (p.g2_d) os << "g2_d = " << num(*p.g2_d) << "\n";
  const auto& e = cfg.evolve;
  os << "[evolve]\n";
  os << "t_max = " << num(e.t_max) << "\n";
  os << "dt = " << num(e.dt) << "\n";
  os << "initial = "
     << (e.initial == InitialKind::DiracSea
             ? "dirac_sea"
             : e.initial == InitialKind::String ? "string" : "basis")
     << "\n";
  os << "k0 = " << e.k0 << "\n";
  os << "x_even = " << e.x_even << "\n";
  os << "x_odd = " << e.x_odd << "\n";
  os << "index = " << e.index << "\n";
  os << "hamiltonian = "
     << (e.hamiltonian == Driver::Gauge
             ? "gauge"
             : e.hamiltonian == Driver::Penalized ? "penalized" : "effective")
     << "\n";
  os << "[scan]\n";
  if (!cfg.scan.u_values.empty()) {
    os << "u_values = ";
    for (std::size_t i = 0; i < cfg.scan.u_values.size(); ++i)
      os << (i ? "," : "") << num(cfg.scan.u_values[i]);
    os << "\n";
  }
  if (!cfg.scan.n_values.empty()) {
    os << "n_values = ";
    for (std::size_t i = 0; i < cfg.scan.n_values.size(); ++i)
      os << (i ? "," : "") << cfg.scan.n_values[i];
    os << "\n";
  }
  os << "[output]\n";
  os << "directory = " << cfg.output.directory << "\n";
  os << "formats = ";
  for (std::size_t i = 0; i < cfg.output.formats.size(); ++i)
    os << (i ? "," : "") << cfg.output.formats[i];
  os << "\n";
  return os.str();
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = canonical_text(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace znlgt::cli
