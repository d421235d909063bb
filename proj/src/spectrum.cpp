#include "torsionlab/spectrum.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "torsionlab/io.hpp"

namespace torsionlab {

double tail_heat_bound(const TailBound& tb, double t) {
  if (tb.kappa <= 0.0) return 0.0;
  if (t <= 0.0) throw std::domain_error("tail_heat_bound: t must be positive");
  // integral of e^{-t lambda} dN over (lambda_cut, inf):
  //   <= kappa e^t t^{-p} Gamma(p+1, t (1+lambda_cut))
  const double p = tb.power;
  const double x = t * (1.0 + tb.lambda_cut);
  double g;
  try {
    g = boost::math::tgamma(p + 1.0, x);
  } catch (const std::exception&) {
    return 0.0;  // argument so large the bound underflows
  }
  const double logv = std::log(tb.kappa) + t - p * std::log(t);
  double v = std::exp(logv) * g;
  return std::isfinite(v) ? v : 0.0;
}

void Spectrum::sort_lines() {
  std::sort(lines.begin(), lines.end(), [](const SpectralLine& a, const SpectralLine& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.q_base != b.q_base) return a.q_base < b.q_base;
    return a.q_fiber < b.q_fiber;
  });
}

std::vector<std::int64_t> Spectrum::kernel_dims(int max_degree, double eps) const {
  std::vector<std::int64_t> dims(max_degree + 1, 0);
  for (const auto& l : lines)
    if (l.lambda <= eps && l.degree <= max_degree) dims[l.degree] += l.mult;
  return dims;
}

TraceValue heat_supertrace(const Spectrum& spec, double t, TraceWeight weight, bool remove_kernel) {
  if (t <= 0.0) throw std::domain_error("heat_supertrace: t must be positive");
  if ((weight == TraceWeight::NBase || weight == TraceWeight::NFiber) && !spec.split_degrees)
    throw std::logic_error("heat_supertrace: split-degree weights need a split-degree spectrum");
  double acc = 0.0;
  double wmax = 1.0;
  for (const auto& l : spec.lines) {
    if (remove_kernel && l.lambda <= 1e-12) continue;
    double w = 1.0;
    switch (weight) {
      case TraceWeight::One: w = 1.0; break;
      case TraceWeight::N: w = l.degree; break;
      case TraceWeight::NBase: w = l.q_base; break;
      case TraceWeight::NFiber: w = l.q_fiber; break;
    }
    wmax = std::max(wmax, std::abs(w));
    const double sign = (l.degree % 2 == 0) ? 1.0 : -1.0;
    acc += sign * w * double(l.mult) * std::exp(-t * l.lambda);
  }
  // omitted lines can carry any admissible degree weight
  const double wbound = weight == TraceWeight::One ? 1.0 : std::max(wmax, spec.tail.power + 2.0);
  return {acc, wbound * tail_heat_bound(spec.tail, t)};
}

void write_spectrum_csv(std::ostream& os, const Spectrum& spec) {
  os << "degree,q_base,q_fiber,eigenvalue,multiplicity\n";
  for (const auto& l : spec.lines)
    os << l.degree << ',' << l.q_base << ',' << l.q_fiber << ',' << format_g17(l.lambda) << ','
       << l.mult << '\n';
}

void write_spectrum_csv_file(const std::string& path, const Spectrum& spec) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_spectrum_csv(os, spec);
}

Spectrum read_spectrum_csv(std::istream& is) {
  Spectrum s;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("spectrum csv: missing header");
  if (line != "degree,q_base,q_fiber,eigenvalue,multiplicity")
    throw std::runtime_error("spectrum csv: bad header: " + line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    SpectralLine l;
    char c;
    ls >> l.degree >> c >> l.q_base >> c >> l.q_fiber >> c >> l.lambda >> c >> l.mult;
    if (!ls) throw std::runtime_error("spectrum csv: bad row: " + line);
    s.lines.push_back(l);
  }
  s.split_degrees = true;
  return s;
}

}  // namespace torsionlab
