"""Analytic torsion and adiabatic-limit workbench (python surface of the C++ core)."""

try:
    from ._torsionlab import *  # noqa: F401,F403  (installed layout)
except ImportError:  # build-tree layout: the module sits next to this package on sys.path
    from _torsionlab import *  # noqa: F401,F403

__all__ = [
    "clifford_anticommutator_is_exact",
    "clifford_matrix",
    "top_supertrace_constant",
    "circle_spectrum",
    "fiber_spectrum",
    "twisted_spectrum",
    "heat_supertrace",
    "circle_torsion_closed_form",
    "circle_torsion_heat_split",
    "torsion_comparison",
    "contour_heat",
    "heat_matrix",
    "fit_leading_coefficient",
]
