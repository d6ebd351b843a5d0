"""Quantum speed limits for unitary evolution of mixed states.

Three lower bounds on the time to drive rho to sigma: the Bures-angle bound
and two bounds built from the generalized Bloch angle and a purity
normalised angle, plus the tools to compare them.
"""
from .dynamics import (BoundReport, HamiltonianSchedule, bounds, evolve, qubit_analytic_bounds,
                       qubit_instance, speed_samples, time_average)
from .errors import QSLError
from .linalg import hermitian_eig, hermitian_propagator, psd_sqrt
from .metrics import bures_angle, fubini_study, phi_angle, root_fidelity, theta_angle
from .states import (DensityMatrix, Spectrum, from_bloch, generator_basis, iso_spectral, purity,
                     to_bloch)

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "DensityMatrix", "HamiltonianSchedule", "QSLError", "Spectrum", "bounds",
    "bures_angle", "evolve", "from_bloch", "fubini_study", "generator_basis", "hermitian_eig",
    "hermitian_propagator", "iso_spectral", "phi_angle", "psd_sqrt", "purity",
    "qubit_analytic_bounds", "qubit_instance", "root_fidelity", "speed_samples", "theta_angle",
    "time_average", "to_bloch",
]
