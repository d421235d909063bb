#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "torsionlab/model_spectra.hpp"
#include "torsionlab/spectrum.hpp"

namespace torsionlab {

struct SweepGrid {
  std::vector<double> epsilons = {1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
  std::vector<double> times = {0.1, 0.3, 1.0, 3.0};
  std::vector<double> taus = {0.5, 1.0, 2.0};
  std::vector<double> Ts = {1.0, 2.0, 4.0, 8.0, 16.0};
  std::vector<double> sigmas = {0.05, 0.1, 0.2, 0.5, 1.0};
  std::vector<double> alphas = {0.0, 3.141592653589793};

  void validate() const;  // positivity, epsilons strictly decreasing
};

struct ReportRow {
  std::vector<std::pair<std::string, double>> params;
  double observed = 0.0;
  double predicted = 0.0;
  double budget = 0.0;
  bool pass = true;
  std::string note;
};

struct ExperimentReport {
  std::string theorem;
  std::vector<ReportRow> rows;
  std::map<std::string, double> slopes;
  bool overall = true;
  bool acceptance = true;  // exploratory reports do not gate `verify`
  std::string summary;

  void add(ReportRow row);
  void finish(const std::string& text);
  void write_csv(std::ostream& os) const;
  std::string summary_json() const;
};

// One lab geometry: circle base, k = 2 oscillator fiber, optional rotation twist.
struct LabGeometry {
  CircleGeometry circle;
  FiberModel fiber;       // cutoff = closed-form level truncation
  double alpha = 0.0;
  int max_mode = 256;
  int grid_N = 16;        // discrete base nodes (assembly-backed checks)
  int fiber_basis = 4;    // Hermite-Galerkin levels (assembly-backed checks)
  int jobs = 1;
};

// log-log least squares; points at or below `floor` are excluded.
struct SlopeFit {
  double slope = 0.0;
  bool valid = false;
  int points = 0;
};
SlopeFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double floor);

ExperimentReport spectral_gap_sweep(const SweepGrid& grid, const LabGeometry& geom);
ExperimentReport large_time_limit_check(double t, const SweepGrid& grid, const LabGeometry& geom);
ExperimentReport supertrace_limit_check(double t, const SweepGrid& grid, const LabGeometry& geom);
ExperimentReport alpha_form_check(const SweepGrid& grid, const LabGeometry& geom);
ExperimentReport rectangle_contour_check(double A, double T0, double sigma, const LabGeometry& geom);
ExperimentReport index_limit_check(double t, const SweepGrid& grid, const LabGeometry& geom);
ExperimentReport main_theorem_check(double L, double tau, double alpha, const LabGeometry& geom);
ExperimentReport fiber_supertrace_decay_check(const SweepGrid& grid, const LabGeometry& geom);

// Torsion pipeline shared by the CLI and the checks.
struct TorsionSummary {
  double log_torsion_M_closed = 0.0;
  double log_torsion_M_heat = 0.0;
  double log_torsion_E_heat = 0.0;
  double correction = 0.0;           // det-line norm ratio, stabilized over T
  double correction_drift = 0.0;
  double residual = 0.0;             // log T(E) - correction - log T(M)
  double budget = 0.0;
  bool flags_ok = true;
};
TorsionSummary compute_torsion_summary(double L, double tau, double alpha, const LabGeometry& geom);

}  // namespace torsionlab
