"""Real-cavity coefficients: reflection C_l(iu) and transmission D(iu).

An atom sits at the center of a small vacuum sphere of radius R_c carved
out of the host medium. The Mie-type coefficient C_l describes the field
reflected back onto the atom by the cavity wall, D the field transmitted
into the medium. On the imaginary axis both are real; here they are built
from exponentially scaled modified spherical Bessel combinations so no
complex arithmetic or overflow appears anywhere (see _kernels). An
independent test oracle evaluates the raw complex Mie expressions with
ordinary spherical Bessel functions at high precision and must agree.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, InvariantError, PoleError, UnsupportedOrderError
from .response import MediumResponse

__all__ = [
    "CavitySpec",
    "coeff_C_exact",
    "coeff_C_expansion",
    "coeff_D_exact",
    "coeff_D_leading",
]

_KINDS = ("electric", "magnetic")


@dataclass(frozen=True)
class CavitySpec:
    """Cavity radius (units c/w_ref) around an atom embedded in ``host``."""

    radius: float
    host: MediumResponse

    def __post_init__(self):
        if not self.radius > 0.0:
            raise ValueError("cavity radius must be > 0")
        if self.radius * self.host.max_resonance > 0.5:
            warnings.warn(
                "cavity radius is not small against c/w_max; the real-cavity "
                "small-radius regime is questionable",
                stacklevel=2,
            )


def _pos_nodes(u):
    """Validate u > 0 elementwise, return (array, was_scalar)."""
    arr = np.asarray(u, dtype=np.float64)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if arr.size == 0:
        return arr, scalar
    if not np.all(np.isfinite(arr)) or arr.min() < 0.0:
        raise DomainError("frequency u must be finite and >= 0")
    if arr.min() == 0.0:
        raise PoleError("cavity coefficients are singular at u = 0; "
                        "supply the analytic limit instead")
    return arr, scalar


def _ret(values, scalar):
    return float(values[0]) if scalar else values


def coeff_C_exact(spec: CavitySpec, l: int, u, kind: str = "electric"):
    """Exact cavity reflection coefficient C_l(iu), l in {1, 2}.

    The magnetic kind is the electric one with eps and mu interchanged.
    Returns the real number C_l(iu); u may be a scalar or an array.
    """
    if l not in (1, 2):
        raise UnsupportedOrderError(f"cavity coefficient order l={l} not in {{1, 2}}")
    if kind not in _KINDS:
        raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")
    nodes, scalar = _pos_nodes(u)
    eps = np.atleast_1d(spec.host.eps_iu(nodes))
    mu = np.atleast_1d(spec.host.mu_iu(nodes))
    n = np.sqrt(eps * mu)
    e_like = eps if kind == "electric" else mu
    t0 = spec.radius * nodes
    return _ret(_kernels.cavity_c(t0, n, e_like, l), scalar)


def coeff_C_expansion(spec: CavitySpec, u):
    """Three-term small-radius form of C_1(iu) (electric, dipole order).

    Leading term 3(eps-1)/((2 eps + 1) (u R_c)^3); the neglected remainder
    is O(u R_c).
    """
    nodes, scalar = _pos_nodes(u)
    eps = np.atleast_1d(spec.host.eps_iu(nodes))
    mu = np.atleast_1d(spec.host.mu_iu(nodes))
    n = np.sqrt(eps * mu)
    t0 = spec.radius * nodes
    return _ret(_kernels.cavity_c1_expansion(t0, eps, mu, n), scalar)


def coeff_D_exact(spec: CavitySpec, u):
    """Exact cavity-to-medium transmission factor D(iu).

    Real and positive in the regimes treated here; a non-positive value
    means the model left its domain of validity and raises rather than
    being silently accepted.
    """
    nodes, scalar = _pos_nodes(u)
    eps = np.atleast_1d(spec.host.eps_iu(nodes))
    mu = np.atleast_1d(spec.host.mu_iu(nodes))
    n = np.sqrt(eps * mu)
    t0 = spec.radius * nodes
    d = _kernels.cavity_d(t0, n, eps, mu)
    if d.size and d.min() <= 0.0:
        k = int(np.argmin(d))
        raise InvariantError(
            f"transmission factor D(iu) = {d[k]:.6g} <= 0 at u = {nodes[k]:.6g}, "
            f"R_c = {spec.radius:.6g}; outside the model's validity range"
        )
    return _ret(d, scalar)


def coeff_D_leading(m: MediumResponse, u):
    """Small-radius limit of the transmission factor, 3 eps(iu)/(2 eps(iu) + 1).

    Independent of mu and of the cavity radius; defined for u >= 0.
    """
    arr = np.asarray(u, dtype=np.float64)
    scalar = arr.ndim == 0
    nodes = np.atleast_1d(arr)
    if nodes.size and (not np.all(np.isfinite(nodes)) or nodes.min() < 0.0):
        raise DomainError("frequency u must be finite and >= 0")
    eps = np.atleast_1d(m.eps_iu(nodes))
    return _ret(3.0 * eps / (2.0 * eps + 1.0), scalar)
