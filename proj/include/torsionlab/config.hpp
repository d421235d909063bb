#pragma once

#include <map>
#include <string>
#include <vector>

#include "torsionlab/experiments.hpp"

namespace torsionlab {

// Flat key-value configuration with dotted sections; unknown keys rejected.
struct RunConfig {
  // geometry
  double L = 6.2831853071795862;
  int k = 2;
  double tau = 1.0;
  double alpha = 0.0;
  // discretization
  int N = 16;              // base nodes for assemblies
  int fiber_basis = 4;     // Hermite-Galerkin levels
  int max_mode = 256;      // closed-form circle modes
  int cutoff = 40;         // closed-form oscillator levels
  // grids
  SweepGrid grid;
  // tolerances (overridable per check)
  std::map<std::string, double> tolerances;
  // run
  std::string out_dir = "out";
  unsigned seed = 1;
  int jobs = 1;

  void validate() const;
  LabGeometry lab_geometry() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& config);

}  // namespace torsionlab
