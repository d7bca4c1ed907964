"""Point evaluation of the Green and Poisson kernels of the unit disk.

Both kernels are returned with first-order Wirtinger data in the field
point z, so downstream code can differentiate integral representations
under the integral sign.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["KernelEval", "green_eval", "poisson_eval"]


@dataclass(frozen=True)
class KernelEval:
    """Kernel value and its z-partials at a fixed source point."""

    value: float
    dz: complex
    dzbar: complex


def _check_interior(z: complex, name: str) -> complex:
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"{name} must lie in the open unit disk, got |{name}|={abs(z)}")
    return z


def green_eval(z: complex, w: complex, with_derivatives: bool = True) -> KernelEval:
    """Green function log|1 - z*conj(w)| - log|z - w| and its z-partials.

    Requires z != w (separation below 1e-12 counts as coincident); both
    points must be interior.  The value is positive for distinct interior
    points and blows up logarithmically as z -> w.  With the flag off the
    derivative slots are returned as 0.
    """
    z = _check_interior(z, "z")
    w = _check_interior(w, "w")
    if abs(z - w) < 1e-12:
        raise ValueError("Green kernel is singular on the diagonal z == w")
    value = float(np.log(abs(1.0 - z * np.conj(w))) - np.log(abs(z - w)))
    if not with_derivatives:
        return KernelEval(value=value, dz=0j, dzbar=0j)
    # d/dz log|u(z)| = u'/(2u) for holomorphic u; here u = (1-z*conj(w))/(z-w).
    dz = 0.5 * (-np.conj(w) / (1.0 - z * np.conj(w)) - 1.0 / (z - w))
    return KernelEval(value=value, dz=complex(dz), dzbar=complex(np.conj(dz)))


def poisson_eval(z: complex, theta: float, with_derivatives: bool = True) -> KernelEval:
    """Poisson kernel (1-|z|^2)/|1 - z e^{-i theta}|^2 and its z-partials.

    With the flag off the derivative slots are returned as 0.
    """
    z = _check_interior(z, "z")
    e = np.exp(-1j * float(theta))
    numer = 1.0 - (z * np.conj(z)).real
    denom_factor = 1.0 - z * e
    denom = (denom_factor * np.conj(denom_factor)).real
    value = float(numer / denom)
    if not with_derivatives:
        return KernelEval(value=value, dz=0j, dzbar=0j)
    # Quotient rule with N = 1 - z*conj(z), D = (1 - z e)(1 - conj(z e)).
    n_dz = -np.conj(z)
    d_dz = -e * np.conj(denom_factor)
    dz = (n_dz * denom - numer * d_dz) / denom**2
    return KernelEval(value=value, dz=complex(dz), dzbar=complex(np.conj(dz)))
