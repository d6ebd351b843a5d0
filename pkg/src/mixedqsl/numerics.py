"""Global numerical tolerances.

One :class:`NumericsConfig` instance is consulted by every module. Use
:func:`override` to change tolerances temporarily::

    with override(isospectral_tol=1e-6):
        theta_angle(rho, sigma)
"""
from __future__ import annotations

import contextlib
import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class NumericsConfig:
    hermitian_tol: float = 1e-9       # max |M - M^dag| entrywise
    psd_tol: float = 1e-10            # eigenvalues in [-psd_tol, 0) are clipped
    trace_tol: float = 1e-9           # |tr(rho) - 1|
    isospectral_tol: float = 1e-8     # entrywise on sorted spectra
    mixed_tol: float = 1e-12          # tr(rho^2) - 1/N below this is maximally mixed
    denominator_tol: float = 1e-12    # speed denominators below this are unbounded
    arccos_slack: float = 1e-6        # raw arccos argument overshoot before hard error
    unit_norm_tol: float = 1e-9       # kets passed to fubini_study
    zero_eig_rtol: float = 1e-14      # |w| <= rtol * max|w| is rounding noise inside square roots


_current = NumericsConfig()


def get() -> NumericsConfig:
    return _current


def configure(**changes) -> NumericsConfig:
    """Replace the global configuration; returns the previous one."""
    global _current
    previous = _current
    _current = dataclasses.replace(_current, **changes)
    return previous


@contextlib.contextmanager
def override(**changes):
    global _current
    previous = configure(**changes)
    try:
        yield _current
    finally:
        _current = previous
