#include "torsionlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "torsionlab/io.hpp"

namespace torsionlab {

namespace {

const std::map<std::string, double>& known_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"main_residual", 1e-3}, {"correction", 1e-6},    {"closedness_untwisted", 1e-12},
      {"closedness_twisted", 1e-4}, {"rectangle", 1e-3}, {"mckean_singer_drift", 1e-8},
      {"decay_floor", 1e-12}};
  return defaults;
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  std::istringstream is(v);
  std::string item;
  while (std::getline(is, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::runtime_error("config: bad numeric list for key " + key);
    }
  }
  if (out.empty()) throw std::runtime_error("config: empty list for key " + key);
  return out;
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    double d = std::stod(v, &used);
    while (used < v.size() && std::isspace(static_cast<unsigned char>(v[used]))) ++used;
    if (used != v.size()) throw std::runtime_error("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad numeric value for key " + key);
  }
}

int parse_int(const std::string& v, const std::string& key) {
  const double d = parse_double(v, key);
  if (d != std::floor(d)) throw std::runtime_error("config: integer expected for key " + key);
  return int(d);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

std::string list_text(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_g17(v[i]);
  }
  return s;
}

}  // namespace

void RunConfig::validate() const {
  if (L <= 0.0) throw std::runtime_error("config: geometry.L must be positive");
  if (k != 2) throw std::runtime_error("config: geometry.k must be 2 (rotation-holonomy model)");
  if (tau <= 0.0) throw std::runtime_error("config: geometry.tau must be positive");
  if (alpha < 0.0 || alpha >= 6.2831853071795865)
    throw std::runtime_error("config: geometry.alpha must lie in [0, 2 pi)");
  if (N < 8) throw std::runtime_error("config: disc.N must be >= 8");
  if (fiber_basis < 4) throw std::runtime_error("config: disc.fiber_basis must be >= 4");
  if (max_mode < 1) throw std::runtime_error("config: disc.max_mode must be >= 1");
  if (cutoff < 4) throw std::runtime_error("config: disc.cutoff must be >= 4");
  if (jobs < 1 || jobs > 64) throw std::runtime_error("config: run.jobs must be in [1, 64]");
  grid.validate();
  for (const auto& [name, v] : tolerances) {
    if (!known_tolerances().count(name))
      throw std::runtime_error("config: unknown tolerance name: " + name);
    if (!(v > 0.0)) throw std::runtime_error("config: tolerance must be positive: " + name);
  }
}

LabGeometry RunConfig::lab_geometry() const {
  LabGeometry g;
  g.circle.L = L;
  g.fiber.k = k;
  g.fiber.tau = tau;
  g.fiber.cutoff = cutoff;
  g.alpha = alpha;
  g.max_mode = max_mode;
  g.grid_N = N;
  g.fiber_basis = fiber_basis;
  g.jobs = jobs;
  return g;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: missing '=' on line " + std::to_string(lineno));
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key == "geometry.L") c.L = parse_double(val, key);
    else if (key == "geometry.k") c.k = parse_int(val, key);
    else if (key == "geometry.tau") c.tau = parse_double(val, key);
    else if (key == "geometry.alpha") c.alpha = parse_double(val, key);
    else if (key == "disc.N") c.N = parse_int(val, key);
    else if (key == "disc.fiber_basis") c.fiber_basis = parse_int(val, key);
    else if (key == "disc.max_mode") c.max_mode = parse_int(val, key);
    else if (key == "disc.cutoff") c.cutoff = parse_int(val, key);
    else if (key == "grids.epsilons") c.grid.epsilons = parse_list(val, key);
    else if (key == "grids.times") c.grid.times = parse_list(val, key);
    else if (key == "grids.taus") c.grid.taus = parse_list(val, key);
    else if (key == "grids.Ts") c.grid.Ts = parse_list(val, key);
    else if (key == "grids.sigmas") c.grid.sigmas = parse_list(val, key);
    else if (key == "grids.alphas") {
      c.grid.alphas = parse_list(val, key);
      for (double a : c.grid.alphas)
        if (a < 0.0) throw std::runtime_error("config: grids.alphas entries must be >= 0");
    } else if (key == "output.dir") c.out_dir = val;
    else if (key == "run.seed") c.seed = unsigned(parse_int(val, key));
    else if (key == "run.jobs") c.jobs = parse_int(val, key);
    else if (key.rfind("tolerances.", 0) == 0) {
      const std::string name = key.substr(11);
      if (!known_tolerances().count(name))
        throw std::runtime_error("config: unknown key: " + key);
      c.tolerances[name] = parse_double(val, key);
    } else {
      throw std::runtime_error("config: unknown key: " + key);
    }
  }
  c.validate();
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "geometry.L = " << format_g17(c.L) << '\n'
     << "geometry.k = " << c.k << '\n'
     << "geometry.tau = " << format_g17(c.tau) << '\n'
     << "geometry.alpha = " << format_g17(c.alpha) << '\n'
     << "disc.N = " << c.N << '\n'
     << "disc.fiber_basis = " << c.fiber_basis << '\n'
     << "disc.max_mode = " << c.max_mode << '\n'
     << "disc.cutoff = " << c.cutoff << '\n'
     << "grids.epsilons = " << list_text(c.grid.epsilons) << '\n'
     << "grids.times = " << list_text(c.grid.times) << '\n'
     << "grids.taus = " << list_text(c.grid.taus) << '\n'
     << "grids.Ts = " << list_text(c.grid.Ts) << '\n'
     << "grids.sigmas = " << list_text(c.grid.sigmas) << '\n'
     << "grids.alphas = " << list_text(c.grid.alphas) << '\n'
     << "output.dir = " << c.out_dir << '\n'
     << "run.seed = " << c.seed << '\n'
     << "run.jobs = " << c.jobs << '\n';
  for (const auto& [name, v] : c.tolerances)
    os << "tolerances." << name << " = " << format_g17(v) << '\n';
  return os.str();
}

}  // namespace torsionlab
