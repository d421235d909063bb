#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace torsionlab {

struct SpectralLine {
  int degree = 0;    // total form degree
  int q_base = 0;    // base degree share
  int q_fiber = 0;   // fiber degree share
  double lambda = 0.0;
  std::int64_t mult = 1;
};

// Counting-function tail data: every line with lambda <= lambda_cut is present,
// and the full operator satisfies N(lambda) <= kappa (1+lambda)^power.
struct TailBound {
  double lambda_cut = 0.0;
  double kappa = 0.0;
  double power = 0.0;
};

// Omitted heat-trace mass at time t: sum over lambda > lambda_cut of e^{-t lambda},
// bounded through the counting function.
double tail_heat_bound(const TailBound& tb, double t);

struct Spectrum {
  std::vector<SpectralLine> lines;  // sorted by (degree, lambda)
  TailBound tail;
  bool split_degrees = false;  // q_base/q_fiber meaningful (product assembly)

  void sort_lines();
  std::vector<std::int64_t> kernel_dims(int max_degree, double eps = 1e-12) const;
};

enum class TraceWeight { One, N, NBase, NFiber };

struct TraceValue {
  double value = 0.0;
  double bound = 0.0;  // truncation-error bound
};

// sum over lines of (-1)^degree w(q) mult e^{-t lambda}; kernel lines skipped
// when remove_kernel is set.
TraceValue heat_supertrace(const Spectrum& spec, double t, TraceWeight weight,
                           bool remove_kernel = false);

// CSV schema: degree,q_base,q_fiber,eigenvalue,multiplicity (17 significant digits).
void write_spectrum_csv(std::ostream& os, const Spectrum& spec);
void write_spectrum_csv_file(const std::string& path, const Spectrum& spec);
Spectrum read_spectrum_csv(std::istream& is);

}  // namespace torsionlab
