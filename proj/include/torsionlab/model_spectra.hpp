#pragma once

#include "torsionlab/spectrum.hpp"

namespace torsionlab {

struct CircleGeometry {
  double L = 6.283185307179586;  // total length
};

struct FiberModel {
  int k = 2;          // fiber rank, even
  double tau = 1.0;   // deformation parameter
  int cutoff = 40;    // maximum oscillator level retained
};

struct ScalingParams {
  double epsilon = 1.0;
  double T = 1.0;
  double t = 1.0;
  double holonomy_angle = 0.0;
};

// Flat-circle Hodge spectrum: degrees 0 and 1 each carry eigenvalue 0 (mult 1)
// and (2 pi m / L)^2, m = 1..max_mode (mult 2).
Spectrum circle_hodge_spectrum(const CircleGeometry& geom, int max_mode);

// Witten oscillator on R^k with quadratic potential: eigenvalues 2 tau (|n| + q)
// over occupation vectors with |n| <= cutoff and form degree q. When `staggered`
// is set, degree q keeps |n| <= cutoff - q so the retained spaces form an exact
// subcomplex of the deformed differential (index truncation error is then zero).
Spectrum fiber_witten_spectrum(const FiberModel& fiber, bool staggered = false);

// Product lines with eigenvalue c_base * mu + c_fiber * nu; degrees add,
// multiplicities multiply. Covers g_eps (c_base = eps^2, c_fiber = 1) and the
// conformally reduced sigma/T scalings (c_base = sigma^2, c_fiber = T^2).
Spectrum scaled_product_spectrum(const Spectrum& base, const Spectrum& fiber, double c_base,
                                 double c_fiber);

// Untwisted product under g_eps. Twisted input is rejected and directed to
// holonomy_twisted_spectrum.
Spectrum product_spectrum(const Spectrum& base, const Spectrum& fiber, const ScalingParams& scaling);

// Rotation-twisted (k = 2) Witten Laplacian over the circle: oscillator states
// of total angular momentum l acquire base frequencies ((2 pi m + l alpha)/L)^2.
// Eigenvalues are c_base * freq^2 + c_fiber * 2 tau (s + q).
Spectrum holonomy_twisted_spectrum(const CircleGeometry& geom, const FiberModel& fiber, double alpha,
                                   int max_mode, double c_base = 1.0, double c_fiber = 1.0);

}  // namespace torsionlab
