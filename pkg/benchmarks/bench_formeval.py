"""Benchmark of the form-evaluation kernels: compiled extension against the
numpy fallback, on the workloads the comass optimizer generates.

Run from the repository root:

    python benchmarks/bench_formeval.py
"""

import os
import time

import numpy as np

os.environ.setdefault("CALIB_LAB_THREADS", "1")

from caliblab import kernels
from caliblab.calibrations import (cayley_calibration, kaehler_calibration,
                                   quaternionic_calibration, volume_calibration)
from caliblab.comass import FormEvaluator, comass


def time_call(fn, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels():
    rng = np.random.default_rng(0)
    cases = [
        ("volume(3,3)", volume_calibration(3, 3)),
        ("kaehler(2)", kaehler_calibration(2)),
        ("quaternionic(2)", quaternionic_calibration(2)),
        ("cayley", cayley_calibration()),
    ]
    impls = kernels.implementations()
    batch = 200
    print(f"batched value+gradient evaluation, batch={batch} frames, best of 5")
    header = f"{'form':18s}" + "".join(f"{name:>12s}" for name in impls)
    if len(impls) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    for label, cal in cases:
        ev = FormEvaluator(cal.form)
        V = rng.standard_normal((batch, cal.dim, cal.m))
        times = {}
        for name, mod in impls.items():
            times[name] = time_call(
                lambda mod=mod: mod.form_values_grads(
                    ev.coeffs, ev.subsets, V, ev.subsets1, ev.contract
                )
            )
        row = f"{label:18s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in impls)
        if len(times) == 2:
            py, cy = times["python"], times["cython"]
            row += f"{py / cy:9.1f}x"
        print(row)


def bench_comass_subprocess():
    import subprocess
    import sys

    print("\nfull comass catalog, per backend (subprocesses)", flush=True)
    script = (
        "import time; t0=time.perf_counter();"
        "from caliblab.calibrations import catalog;"
        "from caliblab.comass import comass; from caliblab import kernels;"
        "vals=[comass(c.form, restarts=200, seed=0).value for c in catalog()];"
        "print(f'{kernels.BACKEND}: {time.perf_counter()-t0:.2f}s, "
        "max dev {max(abs(v-1) for v in vals):.2e}')"
    )
    for no_ext in ("0", "1"):
        env = dict(os.environ, CALIBLAB_NO_EXT=no_ext)
        if no_ext == "0":
            env.pop("CALIBLAB_NO_EXT")
        subprocess.run([sys.executable, "-c", script], env=env, check=True)


if __name__ == "__main__":
    import sys

    print(f"active backend: {kernels.BACKEND}")
    bench_kernels()
    sys.stdout.flush()
    bench_comass_subprocess()
