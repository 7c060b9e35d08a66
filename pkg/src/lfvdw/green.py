"""Dyadic Green tensors of the homogeneous magnetoelectric bulk.

The bulk dyad between two points at distance L, evaluated at w = iu in
reduced units, is

    G(iu) = (mu n u / 4 pi) e^{-y} [ a(y) I - b(y) vv ],    y = n u L,
    a(y) = 1/y + 1/y^2 + 1/y^3,    b(y) = 1/y + 3/y^2 + 3/y^3,

with v the unit separation vector. bulk_dyad computes it from the complex
literal form (mu k / 4 pi) e^{ikL} [(1/x + i/x^2 - 1/x^3) I - ...] with
k = i n u and x = kL; every intermediate is exactly imaginary or exactly
real in floating point, so the result carries zero imaginary part without
any truncation step.

The traced two-point kernels are

    g(x) = 2 e^{-2x} (3 + 6x + 5x^2 + 2x^3 + x^4)      (electric)
    h(x) = 2 e^{-2x} (1 + 2x + x^2)                    (magnetic)

so that Tr[G G] = mu^2 g(y) / (16 pi^2 n^4 u^4 L^6).

born_scatter_trace gives the linear-Born scattering trace Tr G^(1)(r_A,
r_A, iu) for an atom centered in a homogeneous dilute sphere: zero for an
infinite body, and for a finite sphere the (signed) radial integrals of
g and h over the material missing beyond the outer radius.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels
from .errors import DomainError, GeometryError, PoleError, SingularityError
from .quadrature import QuadSpec, integrate_semi_infinite
from .response import MediumResponse

__all__ = [
    "GreenDyad",
    "BodyShell",
    "bulk_dyad",
    "pair_kernel_g",
    "pair_kernel_h",
    "born_scatter_trace",
]


@dataclass(frozen=True)
class GreenDyad:
    """3x3 bulk Green tensor sample at imaginary frequency u."""

    matrix: np.ndarray
    separation: np.ndarray
    frequency: float

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))


def bulk_dyad(m: MediumResponse, r, rp, u: float) -> GreenDyad:
    """Bulk Green tensor G(r, rp, iu) of the infinite homogeneous medium."""
    r = np.asarray(r, dtype=np.float64)
    rp = np.asarray(rp, dtype=np.float64)
    if r.shape != (3,) or rp.shape != (3,):
        raise ValueError("r and rp must be 3-vectors")
    if u == 0.0:
        raise PoleError("bulk dyad is singular at u = 0")
    if not u > 0.0:
        raise DomainError("bulk dyad requires u > 0")
    sep = r - rp
    dist = float(np.linalg.norm(sep))
    if dist == 0.0:
        raise SingularityError("bulk dyad is singular at coincident points")
    v = sep / dist

    eps = m.eps_iu(u)
    mu = m.mu_iu(u)
    n = math.sqrt(eps * mu)
    k = 1j * n * u
    x = k * dist
    a = 1.0 / x + 1j / x**2 - 1.0 / x**3
    b = 1.0 / x + 3j / x**2 - 3.0 / x**3
    pref = (mu * k / (4.0 * math.pi)) * cmath.exp(1j * x)
    mat = pref * (a * np.eye(3) - b * np.outer(v, v))
    return GreenDyad(matrix=mat, separation=sep, frequency=float(u))


def pair_kernel_g(x):
    """Traced electric pair kernel g(x); g(0) = 6."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.size and arr.min() < 0.0:
        raise DomainError("kernel argument must be >= 0")
    out = _kernels.kernel_g(np.atleast_1d(arr))
    return float(out[0]) if arr.ndim == 0 else out


def pair_kernel_h(x):
    """Traced magnetic pair kernel h(x); h(0) = 2."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.size and arr.min() < 0.0:
        raise DomainError("kernel argument must be >= 0")
    out = _kernels.kernel_h(np.atleast_1d(arr))
    return float(out[0]) if arr.ndim == 0 else out


def ring_leg_parts(m: MediumResponse, u_nodes: np.ndarray, length: float):
    """Scalar ingredients of one bulk-dyad ring leg at each u node.

    Returns (coef, a, b) with coef = (mu n u / 4 pi) e^{-y}, y = n u length,
    such that the leg dyad is coef (a I - b vv).
    """
    if not length > 0.0:
        raise SingularityError("ring legs need strictly positive length")
    eps = np.atleast_1d(m.eps_iu(u_nodes))
    mu = np.atleast_1d(m.mu_iu(u_nodes))
    n = np.sqrt(eps * mu)
    y = n * u_nodes * length
    a = (1.0 + 1.0 / y + 1.0 / y**2) / y
    b = (1.0 + 3.0 / y + 3.0 / y**2) / y
    coef = mu * n * u_nodes / (4.0 * math.pi) * np.exp(-y)
    return coef, a, b


@dataclass(frozen=True)
class BodyShell:
    """Concentric dilute body around an atom at the origin.

    inner_radius is the cavity radius R_c, outer_radius the body radius
    (math.inf for infinite bulk). chi and zeta are the electric and
    magnetic density-susceptibilities chi(iu), zeta(iu) as callables of u.
    """

    inner_radius: float
    outer_radius: float
    chi: Callable = lambda u: np.zeros_like(np.asarray(u, dtype=np.float64))
    zeta: Callable = lambda u: np.zeros_like(np.asarray(u, dtype=np.float64))

    def __post_init__(self):
        if not self.inner_radius > 0.0:
            raise GeometryError("inner radius must be > 0")
        if not self.outer_radius >= self.inner_radius:
            raise GeometryError("outer radius must not be below inner radius")


def born_scatter_trace(shell: BodyShell, u, q: QuadSpec = QuadSpec()):
    """Linear-Born scattering trace Tr G^(1)(r_A, r_A, iu), atom at center.

    For an infinite body the unperturbed reference is the bulk itself and
    the trace is exactly zero. For a finite sphere of outer radius R_o the
    deviation from bulk is the missing material at s > R_o, giving

        chi(u)/(4 pi u^2) * I[g(us)/s^4] - zeta(u)/(4 pi) * I[h(us)/s^2]

    with I[.] the radial integral over [R_o, inf). Scalar or array u.
    """
    arr = np.asarray(u, dtype=np.float64)
    scalar = arr.ndim == 0
    nodes = np.atleast_1d(arr)
    if nodes.size and (not np.all(np.isfinite(nodes)) or nodes.min() <= 0.0):
        raise DomainError("born_scatter_trace requires u > 0")

    if math.isinf(shell.outer_radius):
        out = np.zeros_like(nodes)
        return 0.0 if scalar else out

    chi = np.atleast_1d(np.asarray(shell.chi(nodes), dtype=np.float64))
    zeta = np.atleast_1d(np.asarray(shell.zeta(nodes), dtype=np.float64))
    big = np.abs(chi) > 0.1
    if big.any():
        k = int(np.argmax(big))
        warnings.warn(
            f"|chi(iu)| = {abs(chi[k]):.3g} at u = {nodes[k]:.3g} exceeds 0.1; "
            "the linear Born trace loses accuracy",
            stacklevel=2,
        )

    r_o = shell.outer_radius
    out = np.empty_like(nodes)
    for i, ui in enumerate(nodes):
        scale = r_o + 0.5 / ui
        el = 0.0
        if chi[i] != 0.0:
            el = integrate_semi_infinite(
                lambda v: _kernels.kernel_g(ui * (r_o + v)) / (r_o + v) ** 4,
                q,
                scale=scale,
            ).value
        mag = 0.0
        if zeta[i] != 0.0:
            mag = integrate_semi_infinite(
                lambda v: _kernels.kernel_h(ui * (r_o + v)) / (r_o + v) ** 2,
                q,
                scale=scale,
            ).value
        out[i] = chi[i] * el / (4.0 * math.pi * ui * ui) - zeta[i] * mag / (4.0 * math.pi)
    return float(out[0]) if scalar else out
