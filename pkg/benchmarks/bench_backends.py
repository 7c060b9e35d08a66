"""Time the numba kernels against the pure-numpy fallback.

The backend is chosen at import through LFVDW_BACKEND, so each backend
runs in its own subprocess and this driver collects the timings.

Usage: python3 benchmarks/bench_backends.py [--repeat N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json
import sys
import time

import numpy as np

from lfvdw._backend import BACKEND
from lfvdw import _kernels as K
from lfvdw.cavity import CavitySpec
from lfvdw.potentials import force_pair, pair_bulk, u1_exact
from lfvdw.quadrature import QuadSpec
from lfvdw.response import AtomModel, LorentzTerm, MediumResponse

repeat = int(sys.argv[1])
glass = MediumResponse(
    eps_terms=(LorentzTerm(1.5, 1.2, 0.02),),
    mu_terms=(LorentzTerm(0.2, 2.0),),
)
a = AtomModel(resonances=((1.0, 0.02),))
b = AtomModel(resonances=((1.3, 0.015),), beta_resonances=((2.1, 0.004),))
q = QuadSpec()
t = np.geomspace(1e-6, 60.0, 20000)
n = 1.3 * np.ones_like(t)
e = 2.0 * np.ones_like(t)

cases = {
    "mie coefficients, 20k nodes": lambda: K.cavity_c(t, n, e, 1),
    "transmission, 20k nodes": lambda: K.cavity_d(t, n, e, np.ones_like(t)),
    "pair potential in glass": lambda: pair_bulk(a, b, glass, 3.0, q).U,
    "pair force in glass": lambda: force_pair(a, b, glass, 3.0, q),
    "single-atom shift, exact": lambda: u1_exact(
        a, CavitySpec(radius=0.05, host=glass), q
    ),
}

timings = {}
for name, fn in cases.items():
    fn()  # warm (jit compile / cache load)
    runs = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - start)
    timings[name] = min(runs)

print(json.dumps({"backend": BACKEND, "timings": timings}))
"""


def run_backend(name: str, repeat: int) -> dict:
    env = dict(os.environ, LFVDW_BACKEND=name)
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)],
        capture_output=True,
        text=True,
        env=env,
    )
    if proc.returncode != 0:
        raise RuntimeError(f"{name} worker failed:\n{proc.stderr}")
    return json.loads(proc.stdout)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="runs per case, best kept")
    args = parser.parse_args()

    ref = run_backend("numpy", args.repeat)
    jit = run_backend("numba", args.repeat)

    width = max(len(k) for k in ref["timings"])
    print(f"{'case':<{width}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}")
    for name, t_ref in ref["timings"].items():
        t_jit = jit["timings"][name]
        print(f"{name:<{width}}  {t_ref*1e3:>8.2f}ms  {t_jit*1e3:>8.2f}ms  {t_ref/t_jit:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
