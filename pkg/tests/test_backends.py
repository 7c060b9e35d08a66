"""The numba and numpy kernel backends must agree."""

from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

pytest.importorskip("numba")

PROBE = r"""
import json
import numpy as np
from lfvdw._backend import BACKEND
from lfvdw import _kernels as K
from lfvdw.potentials import force_pair, pair_bulk, u1_exact
from lfvdw.cavity import CavitySpec
from lfvdw.quadrature import QuadSpec
from lfvdw.response import AtomModel, LorentzTerm, MediumResponse

glass = MediumResponse(
    eps_terms=(LorentzTerm(1.5, 1.2, 0.02),),
    mu_terms=(LorentzTerm(0.2, 2.0),),
)
a = AtomModel(resonances=((1.0, 0.02),))
b = AtomModel(resonances=((1.3, 0.015),), beta_resonances=((2.1, 0.004),))
q = QuadSpec()
t = np.geomspace(1e-6, 50.0, 97)
n = 1.3 * np.ones_like(t)
e = 2.0 * np.ones_like(t)

print(json.dumps({
    "backend": BACKEND,
    "pair": pair_bulk(a, b, glass, 3.0, q).U,
    "force": force_pair(a, b, glass, 3.0, q),
    "u1": u1_exact(a, CavitySpec(radius=0.05, host=glass), q),
    "kernels": {
        "p1": K.p1(t).tolist(),
        "s2": K.s2(t).tolist(),
        "g": K.kernel_g(t).tolist(),
        "c1": K.cavity_c(t, n, e, 1).tolist(),
        "c2": K.cavity_c(t, n, e, 2).tolist(),
        "d": K.cavity_d(t, n, e, np.ones_like(t)).tolist(),
    },
}))
"""


def run_backend(name: str) -> dict:
    env = dict(os.environ, LFVDW_BACKEND=name)
    proc = subprocess.run(
        [sys.executable, "-c", PROBE], capture_output=True, text=True, env=env
    )
    assert proc.returncode == 0, proc.stderr
    doc = json.loads(proc.stdout)
    assert doc["backend"] == name
    return doc


def test_backends_agree():
    ref = run_backend("numpy")
    jit = run_backend("numba")
    # integrated quantities come out bitwise identical
    for key in ("pair", "force", "u1"):
        assert jit[key] == ref[key], key
    # raw kernels may differ by reassociation at the last ulp
    for key, ref_vals in ref["kernels"].items():
        for got, want in zip(jit["kernels"][key], ref_vals):
            assert got == pytest.approx(want, rel=5e-15), key


def test_unknown_backend_rejected():
    env = dict(os.environ, LFVDW_BACKEND="fortran")
    proc = subprocess.run(
        [sys.executable, "-c", "import lfvdw"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode != 0
    assert "LFVDW_BACKEND" in proc.stderr
