"""Array kernels shared by the response, cavity, green and potentials modules.

Every function here is written once as numpy array code over 1-D float64
node arrays and compiled with numba when that backend is active (see
:mod:`lfvdw._backend`). Keep the bodies restricted to operations numba's
nopython mode supports.

Scaled spherical functions on the imaginary axis
------------------------------------------------
For t > 0 the combinations

    P_l(t) = i^{-l} e^{-t} j_l(it)            (regular, bounded)
    Q_l(t) = t P_{l-1}(t) - l P_l(t)          (= i^{-l} e^{-t} [x j_l(x)]' at x=it)
    S_l(t) = i^{l} e^{t} h_l^{(1)}(it)        (outgoing, bounded)
    T_l(t) = -t S_{l-1}(t) - l S_l(t)         (= i^{l} e^{t} [x h_l^{(1)}(x)]' at x=it)

are all real, which keeps the cavity coefficient evaluation free of complex
arithmetic and of exponential overflow: the e^{±t} factors cancel
analytically in the coefficient ratios below. P_1 and P_2 in closed form
lose all significant digits for small t (the 1/t^k terms cancel to O(t^l)),
so below t = 1.5 they are evaluated by their positive-term power series.
"""

from __future__ import annotations

import numpy as np

from ._backend import jit

__all__ = [
    "lorentz_sum",
    "alpha_sum",
    "kernel_g",
    "kernel_h",
    "kernel_force",
    "p0",
    "p1",
    "p2",
    "q1",
    "q2",
    "s1",
    "s2",
    "t1",
    "t2",
    "cavity_c",
    "cavity_c1_expansion",
    "cavity_d",
    "ring_trace",
]

_SERIES_CUT = 1.5
_SERIES_TERMS = 16


@jit
def lorentz_sum(u, strength, resonance, damping):
    """Sum of Lorentz terms S_j / (w_Tj^2 + g_j u + u^2) over node array u."""
    out = np.zeros_like(u)
    for j in range(strength.shape[0]):
        out += strength[j] / (resonance[j] * resonance[j] + damping[j] * u + u * u)
    return out


@jit
def alpha_sum(u, strength, resonance):
    """Polarizability-type sum a_k w_k^2 / (w_k^2 + u^2) over node array u."""
    out = np.zeros_like(u)
    for k in range(strength.shape[0]):
        w2 = resonance[k] * resonance[k]
        out += strength[k] * w2 / (w2 + u * u)
    return out


@jit
def kernel_g(x):
    """Traced electric pair kernel 2 e^{-2x} (3 + 6x + 5x^2 + 2x^3 + x^4)."""
    return 2.0 * np.exp(-2.0 * x) * (3.0 + x * (6.0 + x * (5.0 + x * (2.0 + x))))


@jit
def kernel_h(x):
    """Traced magnetic pair kernel 2 e^{-2x} (1 + 2x + x^2)."""
    return 2.0 * np.exp(-2.0 * x) * (1.0 + x * (2.0 + x))


@jit
def kernel_force(y):
    """Radial-derivative kernel 6 g(y) - y g'(y) = 4 e^{-2y} (9 + 18y + 16y^2 + 8y^3 + 3y^4 + y^5)."""
    return 4.0 * np.exp(-2.0 * y) * (
        9.0 + y * (18.0 + y * (16.0 + y * (8.0 + y * (3.0 + y))))
    )


@jit
def p0(t):
    # e^{-t} sinh(t)/t = -expm1(-2t)/(2t), stable for all t > 0
    return -np.expm1(-2.0 * t) / (2.0 * t)


@jit
def _p_series(t, l):
    # e^{-t} sum_k t^{2k+l} / (2^k k! (2l+2k+1)!!), positive terms only
    if l == 1:
        term = t / 3.0
    else:
        term = t * t / 15.0
    acc = term.copy()
    for k in range(1, _SERIES_TERMS):
        term = term * t * t / (2.0 * k * (2.0 * l + 2.0 * k + 1.0))
        acc += term
    return np.exp(-t) * acc


@jit
def p1(t):
    tc = np.maximum(t, 1.0)
    closed = 0.5 * ((1.0 / tc - 1.0 / tc**2) + np.exp(-2.0 * tc) * (1.0 / tc + 1.0 / tc**2))
    return np.where(t < _SERIES_CUT, _p_series(t, 1), closed)


@jit
def p2(t):
    tc = np.maximum(t, 1.0)
    closed = 0.5 * (
        (1.0 / tc - 3.0 / tc**2 + 3.0 / tc**3)
        - np.exp(-2.0 * tc) * (1.0 / tc + 3.0 / tc**2 + 3.0 / tc**3)
    )
    return np.where(t < _SERIES_CUT, _p_series(t, 2), closed)


@jit
def q1(t):
    return t * p0(t) - p1(t)


@jit
def q2(t):
    return t * p1(t) - 2.0 * p2(t)


@jit
def s1(t):
    return -(1.0 / t + 1.0 / t**2)


@jit
def s2(t):
    return -(1.0 / t + 3.0 / t**2 + 3.0 / t**3)


@jit
def t1(t):
    return 1.0 + 1.0 / t + 1.0 / t**2


@jit
def t2(t):
    return 1.0 + 3.0 / t + 6.0 / t**2 + 6.0 / t**3


@jit
def cavity_c(t0, nrel, eps_like, l):
    """Mie-type cavity reflection coefficient C_l(iu), real on the imaginary axis.

    C_l(iu) = (-1)^l e^{-2 t0} [S_l(t0) T_l(n t0) - e S_l(n t0) T_l(t0)]
                          / [e S_l(n t0) Q_l(t0) - P_l(t0) T_l(n t0)]

    with t0 = u R_c, n = n(iu) and e the permittivity (electric kind) or the
    permeability (magnetic kind; n is symmetric under the swap).
    """
    tn = nrel * t0
    if l == 1:
        num = s1(t0) * t1(tn) - eps_like * s1(tn) * t1(t0)
        den = eps_like * s1(tn) * q1(t0) - p1(t0) * t1(tn)
        sign = -1.0
    else:
        num = s2(t0) * t2(tn) - eps_like * s2(tn) * t2(t0)
        den = eps_like * s2(tn) * q2(t0) - p2(t0) * t2(tn)
        sign = 1.0
    return sign * np.exp(-2.0 * t0) * num / den


@jit
def cavity_c1_expansion(t0, eps, mu, nrel):
    """Three-term small-radius expansion of C_1(iu).

    3 (e-1)/((2e+1) t0^3) - (9/5) [e^2(5m-1) - 3e - 1]/((2e+1)^2 t0)
        + 9 e n^3/(2e+1)^2 - 1
    """
    d = 2.0 * eps + 1.0
    lead = 3.0 * (eps - 1.0) / (d * t0**3)
    mid = -1.8 * (eps * eps * (5.0 * mu - 1.0) - 3.0 * eps - 1.0) / (d * d * t0)
    const = 9.0 * eps * nrel**3 / (d * d) - 1.0
    return lead + mid + const


@jit
def cavity_d(t0, nrel, eps, mu):
    """Cavity-to-medium transmission factor D(iu), real on the imaginary axis.

    D(iu) = e^{(n-1) t0} [P1 T1 - Q1 S1](t0)
                / (m [P1(t0) T1(n t0) - e Q1(t0) S1(n t0)])

    The numerator is the Wronskian combination (analytically 1/t0); it is
    evaluated through the same code path as the denominator so the vacuum
    case returns exactly 1.
    """
    tn = nrel * t0
    num = p1(t0) * t1(t0) - q1(t0) * s1(t0)
    den = mu * (p1(t0) * t1(tn) - eps * q1(t0) * s1(tn))
    return np.exp((nrel - 1.0) * t0) * num / den


@jit
def ring_trace(coef, avals, bvals, vvmats):
    """Trace of the ring product of transverse dyads over quadrature nodes.

    Parameters
    ----------
    coef : (M, N) array
        Scalar prefactor of each of the N ring legs at each of the M nodes
        (medium factor times exponential decay).
    avals, bvals : (M, N) array
        Isotropic and longitudinal kernel values a(y), b(y) per leg.
    vvmats : (N, 3, 3) array
        Outer products of the leg unit vectors.

    Returns
    -------
    (M,) array of Tr[G_1 G_2 ... G_N].
    """
    m_nodes, n_legs = coef.shape
    eye = np.eye(3)
    out = np.empty(m_nodes)
    for m in range(m_nodes):
        prod = np.eye(3)
        for k in range(n_legs):
            leg = coef[m, k] * (avals[m, k] * eye - bvals[m, k] * vvmats[k])
            prod = prod @ leg
        out[m] = prod[0, 0] + prod[1, 1] + prod[2, 2]
    return out
